"""Walk through the spinor Poincare group: boosts, rotations and the double cover.

Run with ``python demos/spinor_poincare.py``.
"""

import math

import numpy as np

from semidirect import (
    SpinPoincareElement,
    apply_spin,
    is_lorentz,
    lorentz_from_sl2,
    make_boost,
    make_rotation,
    mink_norm,
    so4c_from_pair,
    vec_to_mat,
)

np.set_printoptions(precision=6, suppress=True)

# A boost along z with rapidity 1 sends the unit time vector to (cosh 1, 0, 0, sinh 1).
boost = make_boost(3, 1.0)
print("boost Lambda:\n", boost.Lam)
print("boost of (1,0,0,0):", apply_spin(boost, [1.0, 0, 0, 0]))
print("cosh 1, sinh 1:     ", math.cosh(1), math.sinh(1))

# A rotation by 2 pi is -I in SL(2,C) yet the identity on four-vectors.
full_turn = make_rotation(3, 2 * math.pi)
print("\nrotation by 2 pi, Lambda:\n", full_turn.Lam.real)
print("its Lorentz matrix is the identity:", np.allclose(full_turn.lorentz(), np.eye(4)))

# Translations and Lorentz parts compose like the Poincare group.
shift = SpinPoincareElement.translation([1.0, 0, 0, 0])
x = shift * boost
v = np.array([0.0, 1.0, 0.0, 0.0])
w, o = apply_spin(x, v), apply_spin(x, np.zeros(4))
print("\nboost then shift of", v, "->", w)
print("interval to the image of the origin:", mink_norm(w - o), "vs", mink_norm(v))

# Random SL(2,C) matrices give proper orthochronous Lorentz matrices.
rng = np.random.default_rng(0)
M = rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))
M /= np.sqrt(np.linalg.det(M))
L = lorentz_from_sl2(M)
print("\nrandom Lorentz matrix is proper orthochronous:", is_lorentz(L))
print("same matrix from -M:", np.allclose(L, lorentz_from_sl2(-M)))

# A pair (L, R) of SL(2,C) matrices acts on complex space-time by a -> L a R^-1.
R = np.linalg.inv(M).conj().T
O = so4c_from_pair(M, R)
z = rng.standard_normal(4) + 1j * rng.standard_normal(4)
print("\ncomplex quadratic form before and after:", mink_norm(z), mink_norm(O @ z))
print("with R = M*^-1 the pair acts on Hermitian H as M H M*:",
      np.allclose(O.real, L, atol=1e-12) and np.allclose(O.imag, 0, atol=1e-12))
