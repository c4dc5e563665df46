"""Minkowski space as 2x2 matrices, SL(2,C) -> SO(3,1), (L, R) -> SO(4,C),
and the spinor Poincare group.

Four-vectors are numpy arrays of shape (4,), complex unless stated.  The
metric is diag(1, -1, -1, -1) and the quadratic form is bilinear (no complex
conjugation), so it extends unchanged to complex space-time.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .algebra import SIGMA, pauli_spec, from_matrix
from .config import get_tol, rel_diff
from .groups import GroupError, TElement, _block

METRIC = np.diag([1.0, -1.0, -1.0, -1.0])
METRIC.setflags(write=False)


class SpacetimeError(GroupError):
    pass


def _mat2(M) -> np.ndarray:
    M = np.asarray(M, dtype=complex)
    if M.shape != (2, 2):
        raise SpacetimeError(f"expected a 2x2 matrix, got shape {M.shape}")
    return M


def _vec4(v) -> np.ndarray:
    v = np.asarray(v)
    if v.shape != (4,):
        raise SpacetimeError(f"expected a four-vector, got shape {v.shape}")
    if not np.all(np.isfinite(v)):
        raise SpacetimeError("four-vector components must be finite")
    return v


def is_real_vec(v, tol=None) -> bool:
    v = np.asarray(v)
    return not np.iscomplexobj(v) or np.max(np.abs(v.imag), initial=0.0) <= get_tol(tol) * max(
        1.0, float(np.max(np.abs(v.real), initial=0.0))
    )


def is_hermitian(M, tol=None) -> bool:
    M = np.asarray(M)
    return rel_diff(M, M.conj().T) <= get_tol(tol)


def vec_to_mat(v) -> np.ndarray:
    """H = sum_i v_i sigma_i."""
    return np.tensordot(_vec4(v).astype(complex), SIGMA, axes=1)


def mat_to_vec(M, real: bool = False, tol=None) -> np.ndarray:
    """Components v_i = trace(M sigma_i) / 2; ``real=True`` demands Hermitian M."""
    M = _mat2(M)
    v = 0.5 * np.einsum("ab,iba->i", M, SIGMA)
    if real:
        if not is_hermitian(M, tol):
            raise SpacetimeError("a real four-vector needs a Hermitian matrix")
        return v.real
    return v


def mink_norm(v):
    """v0^2 - v1^2 - v2^2 - v3^2 (complex for complex v)."""
    v = _vec4(v)
    return v[0] ** 2 - v[1] ** 2 - v[2] ** 2 - v[3] ** 2


def mhm_action(M, H, tol=None) -> np.ndarray:
    """H -> M H M* on Hermitian H."""
    M, H = _mat2(M), _mat2(H)
    if not is_hermitian(H, tol):
        raise SpacetimeError("H must be Hermitian")
    return M @ H @ M.conj().T


def _check_det_one(M, tol):
    d = np.linalg.det(M)
    if abs(d - 1) > get_tol(tol) * max(1.0, float(np.linalg.norm(M)) ** 2):
        raise SpacetimeError(f"determinant must be 1, got {d:.6g}")


def lorentz_from_sl2(M, tol=None) -> np.ndarray:
    """Real 4x4 Lorentz matrix whose column j is the vector of M sigma_j M*."""
    M = _mat2(M)
    _check_det_one(M, tol)
    cols = [mat_to_vec(M @ s @ M.conj().T) for s in SIGMA]
    return np.array(cols).T.real


def is_lorentz(Lam, tol=None) -> bool:
    """Proper orthochronous: Lam^T g Lam = g, det = +1, Lam00 >= 1."""
    tol = get_tol(tol)
    Lam = np.asarray(Lam)
    if Lam.shape != (4, 4) or np.iscomplexobj(Lam) and np.any(Lam.imag != 0):
        return False
    Lam = Lam.real
    return (
        rel_diff(Lam.T @ METRIC @ Lam, METRIC) <= tol
        and abs(np.linalg.det(Lam) - 1) <= tol * max(1.0, np.linalg.norm(Lam) ** 4)
        and Lam[0, 0] >= 1 - tol
    )


def metric_residual(O) -> float:
    """max |O^T g O - g| (plain transpose, valid for complex O)."""
    O = np.asarray(O)
    return float(np.max(np.abs(O.T @ METRIC @ O - METRIC)))


def so4c_from_pair(L, R, tol=None) -> np.ndarray:
    """Complex 4x4 matrix of a -> L a R^-1 on C^4 ~ C(2x2).

    det L / det R must be +1 or -1; the quadratic form is multiplied by that
    ratio, so only ratio +1 gives an element of SO(4, C).
    """
    L, R = _mat2(L), _mat2(R)
    tol = get_tol(tol)
    dl, dr = np.linalg.det(L), np.linalg.det(R)
    if abs(dr) <= tol or abs(dl) <= tol:
        raise SpacetimeError("L and R must be invertible")
    ratio = dl / dr
    if min(abs(ratio - 1), abs(ratio + 1)) > tol * max(1.0, abs(ratio)):
        raise SpacetimeError(f"det(L)/det(R) must be +-1, got {ratio:.6g}")
    Rinv = np.linalg.inv(R)
    return np.array([mat_to_vec(L @ s @ Rinv) for s in SIGMA]).T


# ---------------------------------------------------------------- spinor Poincare group


@dataclass(frozen=True, eq=False)
class SpinPoincareElement:
    """(H, Lam): Hermitian translation and Lam in SL(2, C); acts by X -> Lam X Lam* + H."""

    H: np.ndarray
    Lam: np.ndarray

    def __post_init__(self):
        H, Lam = _mat2(self.H).copy(), _mat2(self.Lam).copy()
        if not is_hermitian(H):
            raise SpacetimeError("H must be Hermitian")
        _check_det_one(Lam, None)
        H.setflags(write=False)
        Lam.setflags(write=False)
        object.__setattr__(self, "H", H)
        object.__setattr__(self, "Lam", Lam)

    @classmethod
    def identity(cls) -> "SpinPoincareElement":
        return cls(np.zeros((2, 2)), np.eye(2))

    @classmethod
    def translation(cls, h) -> "SpinPoincareElement":
        """Pure translation by the real four-vector h."""
        if not is_real_vec(h):
            raise SpacetimeError("translations of real space-time must be real")
        return cls(vec_to_mat(np.real(h)), np.eye(2))

    def __mul__(self, other):
        return compose_spin(self, other)

    def inv(self):
        return invert_spin(self)

    def __call__(self, v):
        return apply_spin(self, v)

    def diff(self, other) -> float:
        return max(rel_diff(self.H, other.H), rel_diff(self.Lam, other.Lam))

    def close(self, other, tol=None) -> bool:
        return self.diff(other) <= get_tol(tol)

    def lorentz(self) -> np.ndarray:
        return lorentz_from_sl2(self.Lam)

    def translation_vector(self) -> np.ndarray:
        return mat_to_vec(self.H, real=True)

    def to_triple(self) -> TElement:
        """The same element as (H, Lam, Lam*^-1) in T~ of the Pauli algebra."""
        spec = pauli_spec()
        return TElement(
            from_matrix(self.H, spec),
            from_matrix(self.Lam, spec),
            from_matrix(np.linalg.inv(self.Lam.conj().T), spec),
        )


def _herm(M):
    return (M + M.conj().T) / 2


def compose_spin(x: SpinPoincareElement, y: SpinPoincareElement) -> SpinPoincareElement:
    H = x.H + x.Lam @ y.H @ x.Lam.conj().T
    return SpinPoincareElement(_herm(H), x.Lam @ y.Lam)


def invert_spin(x: SpinPoincareElement) -> SpinPoincareElement:
    linv = np.linalg.inv(x.Lam)
    return SpinPoincareElement(_herm(-linv @ x.H @ linv.conj().T), linv)


def spin_matrix_rep(x: SpinPoincareElement) -> np.ndarray:
    """[[Lam, H Lam*^-1], [0, Lam*^-1]]."""
    lsi = np.linalg.inv(x.Lam.conj().T)
    return _block(x.Lam, x.H @ lsi, np.zeros((2, 2)), lsi)


def apply_spin(x: SpinPoincareElement, v) -> np.ndarray:
    v = _vec4(v)
    if not is_real_vec(v):
        raise SpacetimeError("the spinor Poincare group acts on real four-vectors")
    X = vec_to_mat(np.real(v))
    return mat_to_vec(_herm(x.Lam @ X @ x.Lam.conj().T + x.H), real=True)


def _axis(axis: int) -> np.ndarray:
    if axis not in (1, 2, 3):
        raise SpacetimeError(f"axis must be 1, 2 or 3, got {axis!r}")
    return SIGMA[axis]


def make_boost(axis: int, rapidity: float) -> SpinPoincareElement:
    """exp(rapidity * sigma_axis / 2), a pure boost."""
    s = _axis(axis)
    Lam = np.cosh(rapidity / 2) * np.eye(2) + np.sinh(rapidity / 2) * s
    return SpinPoincareElement(np.zeros((2, 2)), Lam)


def make_rotation(axis: int, angle: float) -> SpinPoincareElement:
    """exp(-i angle sigma_axis / 2); about axis 3 it turns sigma1 towards sigma2."""
    s = _axis(axis)
    Lam = np.cos(angle / 2) * np.eye(2) - 1j * np.sin(angle / 2) * s
    return SpinPoincareElement(np.zeros((2, 2)), Lam)


def random_sl2(rng: np.random.Generator) -> np.ndarray:
    M = rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))
    return M / np.sqrt(np.linalg.det(M))


def random_hermitian(rng: np.random.Generator) -> np.ndarray:
    return vec_to_mat(rng.standard_normal(4))


def random_spin(rng: np.random.Generator) -> SpinPoincareElement:
    return SpinPoincareElement(random_hermitian(rng), random_sl2(rng))
