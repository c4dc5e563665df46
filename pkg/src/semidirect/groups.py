"""Semidirect products built from an associative algebra A.

``D(A) = A+ x| A^``: pairs (B, L) acting by a -> L a + B.
``T~(A) = A+ x| (A^ x A^)``: triples (B, L, R) acting by a -> L a R^-1 + B.
The star-invariant subgroup consists of the triples (H, G, G*^-1) with
H = H*; ``StarDElement`` stores the pair (H, G).

The quotient T(A) is not given its own type: ``center_equiv`` is the
equality predicate on T~ representatives.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .algebra import (
    AlgebraElement,
    AlgebraError,
    AlgebraSpec,
    SingularElementError,
    _same_spec,
    from_matrix,
    is_invertible,
    random_element,
    random_invertible,
    random_invertible_coords,
    random_unimodular,
    to_matrix,
)
from .config import get_tol, rel_diff

TWISTS = ("inverse", "star")


class GroupError(AlgebraError):
    pass


def _require_invertible(x: AlgebraElement, what: str):
    if not is_invertible(x):
        raise SingularElementError(f"{what} part must be invertible")


def _trusted(cls, **fields):
    # products, inverses and freshly sampled units are valid; skip re-validation
    obj = object.__new__(cls)
    for k, v in fields.items():
        object.__setattr__(obj, k, v)
    return obj


def _block(a, b, c, d) -> np.ndarray:
    # 2 x 2 block matrix of equal n x n blocks
    n = a.shape[0]
    out = np.empty((2 * n, 2 * n), dtype=complex)
    out[:n, :n], out[:n, n:], out[n:, :n], out[n:, n:] = a, b, c, d
    return out


# ---------------------------------------------------------------- D(A)


@dataclass(frozen=True, eq=False)
class DElement:
    """Pair (B, L) of D(A); ``B`` translates, ``L`` multiplies from the left."""

    B: AlgebraElement
    L: AlgebraElement

    def __post_init__(self):
        _same_spec(self.B, self.L)
        _require_invertible(self.L, "L")

    @property
    def spec(self) -> AlgebraSpec:
        return self.B.spec

    @classmethod
    def identity(cls, spec: AlgebraSpec) -> "DElement":
        return cls(spec.zero(), spec.one())

    @classmethod
    def shift(cls, b: AlgebraElement) -> "DElement":
        """The operator S_b: a -> a + b."""
        return cls(b, b.spec.one())

    @classmethod
    def left(cls, l: AlgebraElement) -> "DElement":
        """The operator L_l: a -> l a."""
        return cls(l.spec.zero(), l)

    def __mul__(self, other: "DElement") -> "DElement":
        return compose_D(self, other)

    def inv(self) -> "DElement":
        return invert_D(self)

    def __call__(self, a: AlgebraElement) -> AlgebraElement:
        return apply_D(self, a)

    def diff(self, other: "DElement") -> float:
        return max(rel_diff(self.B.coords, other.B.coords), rel_diff(self.L.coords, other.L.coords))

    def close(self, other: "DElement", tol=None) -> bool:
        return self.diff(other) <= get_tol(tol)

    def to_T(self) -> "TElement":
        return TElement(self.B, self.L, self.spec.one())


def compose_D(x: DElement, y: DElement) -> DElement:
    _same_spec(x.B, y.B)
    return _trusted(DElement, B=x.L * y.B + x.B, L=x.L * y.L)


def invert_D(x: DElement) -> DElement:
    linv = x.L.inv()
    return _trusted(DElement, B=-(linv * x.B), L=linv)


def apply_D(x: DElement, a: AlgebraElement) -> AlgebraElement:
    _same_spec(x.B, a)
    return x.L * a + x.B


def matrix_rep_D(x: DElement) -> np.ndarray:
    """2n x 2n block matrix [[L, B], [0, 1]] acting on the column [[a], [1]]."""
    L, B = to_matrix(x.L), to_matrix(x.B)
    n = L.shape[0]
    return _block(L, B, np.zeros((n, n)), np.eye(n))


def adjoint_D(l: AlgebraElement, b: AlgebraElement) -> AlgebraElement:
    """Translation part of L_l S_b L_l^-1, which equals l b."""
    ll = DElement.left(l)
    return (ll * DElement.shift(b) * ll.inv()).B


def affine_rep_D(x: DElement) -> np.ndarray:
    """(N+1) x (N+1) affine matrix [[l_hat, b], [0, 1]] on coordinate vectors."""
    N = x.spec.N
    out = np.zeros((N + 1, N + 1), dtype=complex)
    out[:N, :N] = x.spec.left_matrix(x.L.coords)
    out[:N, N] = x.B.coords
    out[N, N] = 1
    return out


# ---------------------------------------------------------------- T~(A)


@dataclass(frozen=True, eq=False)
class TElement:
    """Triple (B, L, R) of T~(A), acting by a -> L a R^-1 + B."""

    B: AlgebraElement
    L: AlgebraElement
    R: AlgebraElement

    def __post_init__(self):
        _same_spec(self.B, self.L)
        _same_spec(self.B, self.R)
        _require_invertible(self.L, "L")
        _require_invertible(self.R, "R")

    @property
    def spec(self) -> AlgebraSpec:
        return self.B.spec

    @classmethod
    def identity(cls, spec: AlgebraSpec) -> "TElement":
        return cls(spec.zero(), spec.one(), spec.one())

    @classmethod
    def right(cls, r: AlgebraElement) -> "TElement":
        """The operator R'_r = R_{r^-1}: a -> a r^-1."""
        return cls(r.spec.zero(), r.spec.one(), r)

    def __mul__(self, other: "TElement") -> "TElement":
        return compose_T(self, other)

    def inv(self) -> "TElement":
        return invert_T(self)

    def __call__(self, a: AlgebraElement) -> AlgebraElement:
        return apply_T(self, a)

    def diff(self, other: "TElement") -> float:
        return max(
            rel_diff(self.B.coords, other.B.coords),
            rel_diff(self.L.coords, other.L.coords),
            rel_diff(self.R.coords, other.R.coords),
        )

    def close(self, other: "TElement", tol=None) -> bool:
        return self.diff(other) <= get_tol(tol)


def _twisted(r: AlgebraElement, twist: str) -> AlgebraElement:
    # the antiisomorphism feeding the right action: r -> r^-1 or r -> r*
    if twist == "inverse":
        return r.inv()
    if twist == "star":
        return r.star()
    raise GroupError(f"unknown twist {twist!r}; expected one of {TWISTS}")


def compose_T(x: TElement, y: TElement, twist: str = "inverse") -> TElement:
    _same_spec(x.B, y.B)
    B = x.L * y.B * _twisted(x.R, twist) + x.B
    return _trusted(TElement, B=B, L=x.L * y.L, R=x.R * y.R)


def invert_T(x: TElement, twist: str = "inverse") -> TElement:
    linv = x.L.inv()
    rinv = x.R.inv()
    return _trusted(TElement, B=-(linv * x.B * _twisted(rinv, twist)), L=linv, R=rinv)


def apply_T(x: TElement, a: AlgebraElement, twist: str = "inverse") -> AlgebraElement:
    _same_spec(x.B, a)
    return x.L * a * _twisted(x.R, twist) + x.B


def matrix_rep_T(x: TElement) -> np.ndarray:
    """2n x 2n block matrix [[L, B R], [0, R]]."""
    L, B, R = to_matrix(x.L), to_matrix(x.B), to_matrix(x.R)
    n = L.shape[0]
    return _block(L, B @ R, np.zeros((n, n)), R)


def star_T(x: TElement) -> TElement:
    """Involutive automorphism (B, L, R) -> (B*, R*^-1, L*^-1)."""
    return _trusted(TElement, B=x.B.star(), L=x.R.star().inv(), R=x.L.star().inv())


def center_equiv(x: TElement, y: TElement, tol=None) -> bool:
    """True when y = (B, cL, cR) for a nonzero scalar c, i.e. equal classes in T(A)."""
    tol = get_tol(tol)
    spec = _same_spec(x.B, y.B)
    if rel_diff(x.B.coords, y.B.coords) > tol:
        return False
    ratio = y.L * x.L.inv()
    c = np.trace(spec.left_matrix(ratio.coords)) / spec.N
    if abs(c) <= tol:
        return False
    return (
        rel_diff(y.L.coords, c * x.L.coords) <= tol
        and rel_diff(y.R.coords, c * x.R.coords) <= tol
    )


# ---------------------------------------------------------------- star-invariant subgroup


def is_hermitian(a: AlgebraElement, tol=None) -> bool:
    M = to_matrix(a)
    return rel_diff(M, M.conj().T) <= get_tol(tol)


@dataclass(frozen=True, eq=False)
class StarDElement:
    """Pair (H, G) standing for the triple (H, G, G*^-1); acts by a -> G a G* + H.

    With ``hermitian=False`` the translation part may be any element, which
    gives the same action on the whole algebra instead of its Hermitian part.
    """

    H: AlgebraElement
    G: AlgebraElement
    hermitian: bool = True

    def __post_init__(self):
        _same_spec(self.H, self.G)
        if self.hermitian and not is_hermitian(self.H):
            raise GroupError("translation part H must be Hermitian")
        _require_invertible(self.G, "G")

    @property
    def spec(self) -> AlgebraSpec:
        return self.H.spec

    def __mul__(self, other: "StarDElement") -> "StarDElement":
        return compose_star_D(self, other)

    def inv(self) -> "StarDElement":
        return invert_star_D(self)

    def __call__(self, a: AlgebraElement) -> AlgebraElement:
        return self.G * a * self.G.star() + self.H

    def diff(self, other: "StarDElement") -> float:
        return max(rel_diff(self.H.coords, other.H.coords), rel_diff(self.G.coords, other.G.coords))

    def close(self, other, tol=None) -> bool:
        return self.diff(other) <= get_tol(tol)


def make_star_D(H: AlgebraElement, G: AlgebraElement) -> StarDElement:
    return StarDElement(H, G)


def embed_star_D(x: StarDElement) -> TElement:
    return TElement(x.H, x.G, x.G.star().inv())


def compose_star_D(x: StarDElement, y: StarDElement) -> StarDElement:
    H = x.G * y.H * x.G.star() + x.H
    if x.hermitian and y.hermitian:
        # re-symmetrize so rounding cannot push H off the Hermitian subspace
        M = to_matrix(H)
        H = from_matrix((M + M.conj().T) / 2, H.spec)
    return _trusted(StarDElement, H=H, G=x.G * y.G, hermitian=x.hermitian and y.hermitian)


def invert_star_D(x: StarDElement) -> StarDElement:
    ginv = x.G.inv()
    H = -(ginv * x.H * ginv.star())
    if x.hermitian:
        M = to_matrix(H)
        H = from_matrix((M + M.conj().T) / 2, H.spec)
    return _trusted(StarDElement, H=H, G=ginv, hermitian=x.hermitian)


# ---------------------------------------------------------------- group descriptors
#
# A descriptor bundles the group law with what the endomorphism machinery needs:
# the abelian part B as a coordinate space over its field, embedding of B as
# pure translations, and the matrix of Ad[g] restricted to B.


class DGroup:
    """D(A); ``units='SL'`` draws generators from det-1 elements (the subgroup D'(A))."""

    kind = "D"

    def __init__(self, spec: AlgebraSpec, units: str = "GL"):
        if units not in ("GL", "SL"):
            raise GroupError("units must be 'GL' or 'SL'")
        self.spec = spec
        self.units = units
        self.field = spec.field
        self.b_dim = spec.N
        self.name = "D(%s)" % spec.name if units == "GL" else "D'(%s)" % spec.name

    def identity(self):
        return DElement.identity(self.spec)

    def mul(self, x, y):
        return compose_D(x, y)

    def inv(self, x):
        return invert_D(x)

    def diff(self, x, y) -> float:
        return x.diff(y)

    def translation(self, coords):
        return DElement.shift(self.spec.element(coords))

    def translation_coords(self, x) -> np.ndarray:
        return x.B.coords

    def from_unit(self, l: AlgebraElement):
        return DElement.left(l)

    def linear_part(self, g) -> AlgebraElement:
        return g.L

    def random_unit(self, rng, max_cond=4.0):
        if self.units == "SL":
            return random_unimodular(self.spec, rng, max_cond)
        return random_invertible(self.spec, rng, max_cond)

    def random(self, rng, max_cond=4.0):
        # units are invertible by construction
        return _trusted(DElement, B=random_element(self.spec, rng), L=self.random_unit(rng, max_cond))

    def random_translation_coords(self, rng) -> np.ndarray:
        return random_element(self.spec, rng).coords

    def ad_endo(self, g) -> np.ndarray:
        return self.spec.left_matrix(g.L.coords)


class TGroup:
    """T~(A) with the default r -> r^-1 twist."""

    kind = "T"

    def __init__(self, spec: AlgebraSpec):
        self.spec = spec
        self.field = spec.field
        self.b_dim = spec.N
        self.name = "T~(%s)" % spec.name

    def identity(self):
        return TElement.identity(self.spec)

    def mul(self, x, y):
        return compose_T(x, y)

    def inv(self, x):
        return invert_T(x)

    def diff(self, x, y) -> float:
        return x.diff(y)

    def translation(self, coords):
        one = self.spec.one()
        return TElement(self.spec.element(coords), one, one)

    def translation_coords(self, x) -> np.ndarray:
        return x.B.coords

    def from_unit(self, pair):
        l, r = pair
        return TElement(self.spec.zero(), l, r)

    def linear_part(self, g):
        return None

    def random_unit(self, rng, max_cond=4.0):
        return random_invertible(self.spec, rng, max_cond), random_invertible(self.spec, rng, max_cond)

    def random(self, rng, max_cond=4.0):
        l, r = self.random_unit(rng, max_cond)
        return _trusted(TElement, B=random_element(self.spec, rng), L=l, R=r)

    def random_translation_coords(self, rng) -> np.ndarray:
        return random_element(self.spec, rng).coords

    def ad_endo(self, g) -> np.ndarray:
        return self.spec.left_matrix(g.L.coords) @ self.spec.right_matrix(g.R.inv().coords)


def hermitian_basis(spec: AlgebraSpec) -> np.ndarray:
    """Real basis of the Hermitian matrices in the span, as matrices (n^2, n, n).

    For the Pauli spec this is sigma0..sigma3, so Hermitian coordinates are
    the sigma coordinates.
    """
    if spec.matrix_basis is None:
        raise GroupError(f"{spec.name} has no matrix form")
    if all(np.allclose(m, m.conj().T) for m in spec.matrix_basis):
        return np.array(spec.matrix_basis)
    n = spec.n
    mats = []
    for i in range(n):
        for j in range(n):
            m = np.zeros((n, n), dtype=complex)
            if i == j:
                m[i, i] = 1
            elif i < j:
                m[i, j] = m[j, i] = 1
            else:
                m[j, i], m[i, j] = -1j, 1j
            mats.append(m)
    return np.array(mats)


class StarDGroup:
    """Star-invariant subgroup with the action b -> G b G* + H.

    By default B is the real vector space of Hermitian elements (the action is
    only real-linear there).  ``hermitian=False`` takes B to be the whole
    complex algebra, where b -> G b G* is complex-linear.
    """

    kind = "starD"

    def __init__(self, spec: AlgebraSpec, hermitian: bool = True):
        self.spec = spec
        self.hermitian = hermitian
        if hermitian:
            self.field = "real"
            basis = hermitian_basis(spec)
            self._hbasis = basis
            n2 = basis.shape[0]
            flat = basis.reshape(n2, -1).T
            stacked = np.vstack([flat.real, flat.imag])
            self._hdecompose = np.linalg.pinv(stacked)
            self.b_dim = n2
            self.name = "D*(%s)" % spec.name
        else:
            self.field = spec.field
            self.b_dim = spec.N
            self.name = "D*(%s, ambient)" % spec.name

    def herm_coords(self, M) -> np.ndarray:
        M = np.asarray(M).reshape(-1)
        return self._hdecompose @ np.concatenate([M.real, M.imag])

    def identity(self):
        return StarDElement(self.spec.zero(), self.spec.one(), self.hermitian)

    def mul(self, x, y):
        return compose_star_D(x, y)

    def inv(self, x):
        return invert_star_D(x)

    def diff(self, x, y) -> float:
        return x.diff(y)

    def translation(self, coords):
        if self.hermitian:
            M = np.tensordot(np.real(coords), self._hbasis, axes=1)
            H = from_matrix(M, self.spec)
        else:
            H = self.spec.element(coords)
        return StarDElement(H, self.spec.one(), self.hermitian)

    def translation_coords(self, x) -> np.ndarray:
        if self.hermitian:
            return self.herm_coords(to_matrix(x.H))
        return x.H.coords

    def from_unit(self, g: AlgebraElement):
        return StarDElement(self.spec.zero(), g, self.hermitian)

    def linear_part(self, g) -> AlgebraElement:
        return g.G

    def random_unit(self, rng, max_cond=4.0):
        return random_invertible(self.spec, rng, max_cond)

    def random_translation_coords(self, rng) -> np.ndarray:
        if self.hermitian:
            return rng.standard_normal(self.b_dim)
        return random_element(self.spec, rng).coords

    def random(self, rng, max_cond=4.0):
        x = self.translation(self.random_translation_coords(rng))
        return StarDElement(x.H, self.random_unit(rng, max_cond), self.hermitian)

    def ad_endo(self, g) -> np.ndarray:
        G = g.G
        if not self.hermitian:
            return self.spec.left_matrix(G.coords) @ self.spec.right_matrix(G.star().coords)
        Gm = to_matrix(G)
        cols = [self.herm_coords(Gm @ h @ Gm.conj().T) for h in self._hbasis]
        return np.array(cols).T


class AffineDGroup:
    """D(A) realized by its (N+1) x (N+1) affine matrices.

    Isomorphic to ``DGroup`` through ``affine_rep_D``; group operations are
    single matrix products, which makes large randomized law checks cheap.
    """

    kind = "D"
    batched = True
    """Operations broadcast over stacks of elements of shape (..., N+1, N+1)."""

    def __init__(self, spec: AlgebraSpec, units: str = "GL"):
        self._typed = DGroup(spec, units)
        self.spec = spec
        self.field = spec.field
        self.b_dim = spec.N
        self.name = self._typed.name + " [affine]"
        self._eye = np.eye(spec.N + 1, dtype=complex)

    def embed(self, x: DElement) -> np.ndarray:
        return affine_rep_D(x)

    def identity(self):
        return self._eye

    def mul(self, x, y):
        return x @ y

    def inv(self, x):
        return np.linalg.inv(x)

    def diff(self, x, y) -> float:
        return rel_diff(x, y)

    def diffs(self, x, y) -> np.ndarray:
        """rel_diff per element of two broadcastable stacks."""
        x, y = np.broadcast_arrays(x, y)
        norm = lambda a: np.sqrt(np.sum(np.abs(a) ** 2, axis=(-2, -1)))  # noqa: E731
        return norm(x - y) / np.maximum(1.0, np.maximum(norm(x), norm(y)))

    def translation(self, coords):
        coords = np.asarray(coords)
        out = np.broadcast_to(self._eye, coords.shape[:-1] + self._eye.shape).copy()
        out[..., :-1, -1] = coords
        return out

    def translation_coords(self, x) -> np.ndarray:
        return x[..., :-1, -1]

    def from_unit(self, l: AlgebraElement):
        return affine_rep_D(DElement.left(l))

    def linear_part(self, g) -> AlgebraElement:
        return self.spec.element(g[:-1, :-1] @ self.spec.unit)

    def random_unit(self, rng, max_cond=4.0):
        return self._typed.random_unit(rng, max_cond)

    def random(self, rng, max_cond=4.0):
        out = self._eye.copy()
        if self._typed.units == "GL":
            unit = random_invertible_coords(self.spec, rng, max_cond)
        else:
            unit = self.random_unit(rng, max_cond).coords
        out[:-1, :-1] = self.spec.left_matrix(unit)
        z = rng.standard_normal(self.b_dim)
        out[:-1, -1] = z + 1j * rng.standard_normal(self.b_dim) if self.field == "complex" else z
        return out

    def random_translation_coords(self, rng) -> np.ndarray:
        return self._typed.random_translation_coords(rng)

    def ad_endo(self, g) -> np.ndarray:
        return np.array(g[:-1, :-1])
