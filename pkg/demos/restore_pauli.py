"""Rebuild the Pauli algebra from the group D and see why the star-invariant subgroup fails.

Run with ``python demos/restore_pauli.py``.
"""

import numpy as np

from semidirect import (
    DGroup,
    StarDGroup,
    TGroup,
    ad_endo,
    endo_scalar,
    endo_smile,
    pauli_spec,
    reconstruct,
    span_dimension,
)

spec = pauli_spec()
rng = np.random.default_rng(1)

# Ad-endomorphisms of the translations in D(Pauli) span a copy of the algebra.
D = DGroup(spec)
gens = [D.from_unit(D.random_unit(rng)) for _ in range(8)]
rec = reconstruct(D, gens, spec)
print("D(Pauli): span dimension", rec.dim, "structure-constant deviation", f"{rec.deviation:.2e}")

# Determinant-one generators are enough.
D1 = DGroup(spec, "SL")
rec1 = reconstruct(D1, [D1.from_unit(D1.random_unit(rng)) for _ in range(8)], spec)
print("D'(Pauli): span dimension", rec1.dim, "deviation", f"{rec1.deviation:.2e}")

# Left and right actions together give all 16 linear maps of the 4-dimensional algebra.
T = TGroup(spec)
print("T~(Pauli): span dimension", span_dimension(T, [T.random(rng) for _ in range(20)]))

# On the star-invariant subgroup, [g] is b -> g b g*, which is quadratic in g.
H = StarDGroup(spec)
one = spec.one()
e1 = ad_endo(H.from_unit(one), H)
e2 = ad_endo(H.from_unit(2 * one), H)
b = H.herm_coords(np.eye(2))
print("\n([1] ~ [1])(sigma0) =", endo_smile(e1, e1) @ b, " but [1 + 1](sigma0) =", e2 @ b)

A = StarDGroup(spec, hermitian=False)
ea = ad_endo(A.from_unit(one), A)
b = spec.element([0.5, -1.0, 2.0, 0.25j])
print("(i [1])(b) =", endo_scalar(1j, ea, A) @ b.coords)
print("[i 1](b)   =", ad_endo(A.from_unit(1j * one), A) @ b.coords)
