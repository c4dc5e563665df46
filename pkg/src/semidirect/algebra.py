"""Finite-dimensional associative algebras given by structure constants.

An algebra of dimension N is fixed by the tensor ``c`` with
``e_i e_j = sum_k c[i, j, k] e_k`` and by the coordinates of its unit.
Elements are coordinate vectors.  Specs that come from a concrete basis of
n x n matrices (full matrix algebras, the Pauli algebra) also keep that
basis, which gives ``to_matrix``/``from_matrix`` and the ``*``-involution
(conjugate transpose).

Pauli matrices follow the physics convention ``sigma2 = [[0, -i], [i, 0]]``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from numbers import Number

import numpy as np

from .config import get_tol, rel_diff

SINGULAR_RTOL = 1e-10
"""Smallest/largest singular value ratio below which an element is singular."""

SIGMA = np.array(
    [
        [[1, 0], [0, 1]],
        [[0, 1], [1, 0]],
        [[0, -1j], [1j, 0]],
        [[1, 0], [0, -1]],
    ],
    dtype=complex,
)
SIGMA.setflags(write=False)


class AlgebraError(ValueError):
    pass


class SpecMismatchError(AlgebraError):
    pass


class SingularElementError(AlgebraError):
    pass


class FieldError(AlgebraError):
    pass


def _frozen(a, dtype=complex):
    a = np.array(a, dtype=dtype)
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class AlgebraSpec:
    """Structure constants ``structure[i, j, k]`` plus unit coordinates."""

    name: str
    structure: np.ndarray
    unit: np.ndarray
    field: str = "complex"
    matrix_basis: np.ndarray | None = None

    def __post_init__(self):
        if self.field not in ("real", "complex"):
            raise FieldError(f"unknown field {self.field!r}")
        c = _frozen(self.structure)
        if c.ndim != 3 or not (c.shape[0] == c.shape[1] == c.shape[2]):
            raise AlgebraError(f"structure constants must be N x N x N, got {c.shape}")
        if not np.all(np.isfinite(c)):
            raise AlgebraError("structure constants must be finite")
        unit = _frozen(self.unit)
        if unit.shape != (c.shape[0],):
            raise AlgebraError("unit has the wrong length")
        object.__setattr__(self, "structure", c)
        object.__setattr__(self, "unit", unit)
        N = c.shape[0]
        # left[k, j] for a fixed a is sum_i a_i c[i, j, k]; precompute flat layouts
        object.__setattr__(self, "_left", _frozen(c.transpose(0, 2, 1).reshape(N, N * N)))
        object.__setattr__(self, "_right", _frozen(c.transpose(1, 2, 0).reshape(N, N * N)))
        object.__setattr__(self, "_product", _frozen(c.reshape(N * N, N)))
        if self.matrix_basis is not None:
            basis = _frozen(self.matrix_basis)
            n = basis.shape[-1]
            if basis.shape != (c.shape[0], n, n):
                raise AlgebraError("matrix basis must have shape (N, n, n)")
            flat = basis.reshape(c.shape[0], n * n).T
            object.__setattr__(self, "matrix_basis", basis)
            decompose = _decomposer(flat)
            object.__setattr__(self, "_decompose", _frozen(decompose))
            object.__setattr__(self, "_flat_basis", _frozen(flat.T))
            # coordinates of e_i* when the span is closed under conjugate transpose
            adj = basis.conj().transpose(0, 2, 1).reshape(c.shape[0], n * n).T
            star_cols = decompose @ adj
            closed = np.allclose(flat @ star_cols, adj, rtol=0, atol=1e-12)
            object.__setattr__(self, "_star", _frozen(star_cols) if closed else None)

    @property
    def N(self) -> int:
        return self.structure.shape[0]

    @property
    def n(self) -> int | None:
        """Matrix size of the matrix form, or None."""
        return None if self.matrix_basis is None else self.matrix_basis.shape[-1]

    @property
    def has_matrix_form(self) -> bool:
        return self.matrix_basis is not None

    def matches(self, other: "AlgebraSpec") -> bool:
        if self is other:
            return True
        return (
            self.name == other.name
            and self.N == other.N
            and self.field == other.field
            and np.allclose(self.structure, other.structure, rtol=0, atol=1e-12)
        )

    def associativity_residual(self) -> float:
        c = self.structure
        lhs = np.einsum("ijm,mkl->ijkl", c, c)
        rhs = np.einsum("jkm,iml->ijkl", c, c)
        return float(np.max(np.abs(lhs - rhs), initial=0.0))

    def unit_residual(self) -> float:
        eye = np.eye(self.N)
        left = np.einsum("i,ijk->jk", self.unit, self.structure)
        right = np.einsum("j,ijk->ik", self.unit, self.structure)
        return float(max(np.max(np.abs(left - eye)), np.max(np.abs(right - eye))))

    def element(self, coords) -> "AlgebraElement":
        return AlgebraElement(self, coords)

    def zero(self) -> "AlgebraElement":
        return AlgebraElement(self, np.zeros(self.N))

    def one(self) -> "AlgebraElement":
        return AlgebraElement(self, self.unit)

    def basis(self, i: int) -> "AlgebraElement":
        return AlgebraElement(self, np.eye(self.N)[i])

    def left_matrix(self, coords) -> np.ndarray:
        """N x N matrix of b -> a b for a with the given coordinates."""
        return (coords @ self._left).reshape(self.N, self.N)

    def right_matrix(self, coords) -> np.ndarray:
        """N x N matrix of b -> b a."""
        return (coords @ self._right).reshape(self.N, self.N)

    def to_dict(self) -> dict:
        d = {
            "name": self.name,
            "N": self.N,
            "field": self.field,
            "structure": _pairs(self.structure),
            "unit": _pairs(self.unit),
        }
        if self.matrix_basis is not None:
            d["matrix_basis"] = _pairs(self.matrix_basis)
        return d


def _pairs(a):
    a = np.asarray(a, dtype=complex)
    if a.ndim == 0:
        return [float(a.real) + 0.0, float(a.imag) + 0.0]
    return [_pairs(x) for x in a]


def _check_scalar(spec: AlgebraSpec, lam) -> complex:
    if not isinstance(lam, Number):
        raise TypeError(f"scalar expected, got {type(lam).__name__}")
    lam = complex(lam)
    if spec.field == "real" and lam.imag != 0:
        raise FieldError(f"complex scalar {lam} on real algebra {spec.name}")
    if not (np.isfinite(lam.real) and np.isfinite(lam.imag)):
        raise AlgebraError("scalar must be finite")
    return lam


@dataclass(frozen=True, eq=False)
class AlgebraElement:
    spec: AlgebraSpec
    coords: np.ndarray

    def __post_init__(self):
        coords = np.array(self.coords, dtype=complex)
        if coords.shape != (self.spec.N,):
            raise AlgebraError(
                f"{self.spec.name} needs {self.spec.N} coordinates, got shape {coords.shape}"
            )
        _check_finite(coords)
        if self.spec.field == "real":
            if np.any(coords.imag != 0):
                raise FieldError(f"complex coordinates on real algebra {self.spec.name}")
        coords.setflags(write=False)
        object.__setattr__(self, "coords", coords)

    @classmethod
    def _make(cls, spec: AlgebraSpec, coords: np.ndarray) -> "AlgebraElement":
        # fast path for results of arithmetic on valid elements
        _check_finite(coords)
        coords.setflags(write=False)
        out = object.__new__(cls)
        object.__setattr__(out, "spec", spec)
        object.__setattr__(out, "coords", coords)
        return out

    def __add__(self, other):
        return alg_add(self, other)

    def __sub__(self, other):
        return alg_add(self, -other)

    def __neg__(self):
        return AlgebraElement._make(self.spec, -self.coords)

    def __mul__(self, other):
        if isinstance(other, AlgebraElement):
            return alg_mul(self, other)
        return alg_scalar_mul(other, self)

    def __rmul__(self, lam):
        return alg_scalar_mul(lam, self)

    def inv(self) -> "AlgebraElement":
        return invert(self)

    def is_invertible(self) -> bool:
        return is_invertible(self)

    def matrix(self) -> np.ndarray:
        return to_matrix(self)

    def star(self) -> "AlgebraElement":
        return star(self)

    def norm(self) -> float:
        return float(np.linalg.norm(self.coords))

    def close(self, other: "AlgebraElement", tol=None) -> bool:
        _same_spec(self, other)
        return rel_diff(self.coords, other.coords) <= get_tol(tol)

    def __repr__(self):
        return f"AlgebraElement({self.spec.name}, {np.array2string(self.coords, precision=6)})"


def _check_finite(coords: np.ndarray):
    total = coords.sum()
    if not (math.isfinite(total.real) and math.isfinite(total.imag)):
        raise AlgebraError("coordinates must be finite")


def _same_spec(a: AlgebraElement, b: AlgebraElement) -> AlgebraSpec:
    if not (a.spec is b.spec or a.spec.matches(b.spec)):
        raise SpecMismatchError(f"{a.spec.name} vs {b.spec.name}")
    return a.spec


def alg_add(a: AlgebraElement, b: AlgebraElement) -> AlgebraElement:
    spec = _same_spec(a, b)
    return AlgebraElement._make(spec, a.coords + b.coords)


def alg_mul(a: AlgebraElement, b: AlgebraElement) -> AlgebraElement:
    spec = _same_spec(a, b)
    N = spec.N
    return AlgebraElement._make(spec, (a.coords @ spec._left).reshape(N, N) @ b.coords)


def alg_scalar_mul(lam, a: AlgebraElement) -> AlgebraElement:
    lam = _check_scalar(a.spec, lam)
    coords = (lam.real if a.spec.field == "real" else lam) * a.coords
    return AlgebraElement._make(a.spec, coords)


def _decomposer(flat: np.ndarray) -> np.ndarray:
    """Left inverse of the flattened basis; exact projections for orthogonal bases."""
    gram = flat.conj().T @ flat
    d = np.diag(gram).real
    if np.all(np.abs(gram - np.diag(d)) <= 1e-15 * d.max()):
        return flat.conj().T / d[:, None]
    return np.linalg.pinv(flat)


def spec_from_matrix_basis(name: str, basis, field: str = "complex") -> AlgebraSpec:
    """Build a spec from N linearly independent n x n matrices spanning a unital algebra."""
    basis = np.asarray(basis, dtype=complex)
    N, n, _ = basis.shape
    flat = basis.reshape(N, n * n).T
    pinv = _decomposer(flat)
    products = np.einsum("iab,jbc->ijac", basis, basis).reshape(N, N, n * n)
    c = products @ pinv.T
    resid = products - c @ flat.T
    if np.max(np.abs(resid), initial=0.0) > 1e-12:
        raise AlgebraError("basis span is not closed under multiplication")
    unit = pinv @ np.eye(n).reshape(-1)
    if np.linalg.norm(flat @ unit - np.eye(n).reshape(-1)) > 1e-12:
        raise AlgebraError("identity matrix is not in the span")
    if field == "real":
        c, unit = c.real, unit.real
    c[np.abs(c) < 1e-15] = 0
    unit[np.abs(unit) < 1e-15] = 0
    return AlgebraSpec(name, c, unit, field=field, matrix_basis=basis)


@lru_cache(maxsize=None)
def matrix_algebra_spec(n: int, field: str = "complex") -> AlgebraSpec:
    """Full n x n matrix algebra in the matrix-unit basis E_11, E_12, ..., E_nn."""
    if n < 1:
        raise AlgebraError("n must be positive")
    basis = np.zeros((n * n, n, n))
    for idx in range(n * n):
        basis[idx, idx // n, idx % n] = 1
    return spec_from_matrix_basis(f"M{n}({field[0].upper()})", basis, field=field)


@lru_cache(maxsize=None)
def pauli_spec() -> AlgebraSpec:
    """The Pauli algebra C(2x2) in the basis sigma0..sigma3."""
    return spec_from_matrix_basis("Pauli", SIGMA)


def to_matrix(a: AlgebraElement) -> np.ndarray:
    if a.spec.matrix_basis is None:
        raise AlgebraError(f"{a.spec.name} has no matrix form")
    n = a.spec.n
    return (a.coords @ a.spec._flat_basis).reshape(n, n)


def from_matrix(M, spec: AlgebraSpec, tol=None) -> AlgebraElement:
    if spec.matrix_basis is None:
        raise AlgebraError(f"{spec.name} has no matrix form")
    M = np.asarray(M, dtype=complex)
    if M.shape != (spec.n, spec.n):
        raise AlgebraError(f"expected {spec.n}x{spec.n} matrix, got shape {M.shape}")
    coords = spec._decompose @ M.reshape(-1)
    back = (coords @ spec._flat_basis).reshape(M.shape)
    if rel_diff(back, M) > get_tol(tol):
        raise AlgebraError(f"matrix is not in the span of the {spec.name} basis")
    if spec.field == "real":
        if np.max(np.abs(coords.imag), initial=0.0) > get_tol(tol) * max(1.0, np.linalg.norm(M)):
            raise FieldError("complex matrix for a real algebra")
        coords = coords.real
    return AlgebraElement(spec, coords)


def star(a: AlgebraElement) -> AlgebraElement:
    """Conjugate transpose in matrix form; requires the span to be *-closed."""
    S = a.spec.__dict__.get("_star")
    if S is None:
        return from_matrix(to_matrix(a).conj().T, a.spec)
    x = S @ a.coords.conj()
    if a.spec.field == "real":
        x = x.real.astype(complex)
    return AlgebraElement._make(a.spec, x)


def is_invertible(a: AlgebraElement, rtol: float = SINGULAR_RTOL) -> bool:
    s = np.linalg.svd(a.spec.left_matrix(a.coords), compute_uv=False)
    return bool(s[0] > 0 and s[-1] > rtol * s[0])


def invert(a: AlgebraElement) -> AlgebraElement:
    # right inverse a x = 1 via the SVD of the left-regular matrix; in a
    # finite-dimensional unital associative algebra it is two-sided
    cached = a.__dict__.get("_inverse")
    if cached is not None:
        return cached
    U, s, Vh = np.linalg.svd(a.spec.left_matrix(a.coords))
    if not (s[0] > 0 and s[-1] > SINGULAR_RTOL * s[0]):
        raise SingularElementError(f"element of {a.spec.name} is not invertible")
    x = Vh.conj().T @ ((U.conj().T @ a.spec.unit) / s)
    if a.spec.field == "real":
        x = x.real.astype(complex)
    out = AlgebraElement._make(a.spec, x)
    object.__setattr__(a, "_inverse", out)
    object.__setattr__(out, "_inverse", a)
    return out


def span_rank(elements, rtol: float = SINGULAR_RTOL) -> int:
    """Rank of a list of algebra elements or equally-shaped arrays."""
    rows = []
    for e in elements:
        v = e.coords if isinstance(e, AlgebraElement) else np.asarray(e, dtype=complex)
        rows.append(v.reshape(-1))
    if not rows:
        raise AlgebraError("span_rank of an empty list")
    if len({r.shape for r in rows}) != 1:
        raise AlgebraError("elements have different ambient dimensions")
    A = np.array(rows)
    norms = np.linalg.norm(A, axis=1)
    A = A[norms > 0] / norms[norms > 0, None]
    if A.shape[0] == 0:
        return 0
    s = np.linalg.svd(A, compute_uv=False)
    return int(np.sum(s > rtol * s[0]))


def random_element(spec: AlgebraSpec, rng: np.random.Generator, scale: float = 1.0) -> AlgebraElement:
    x = rng.standard_normal(spec.N)
    if spec.field == "complex":
        x = x + 1j * rng.standard_normal(spec.N)
    return AlgebraElement(spec, scale * x)


def _random_unitary(n, rng, complex_field):
    if n == 2:
        # Haar on U(2) / O(2) in closed form; much cheaper than a factorization
        if complex_field:
            q = rng.standard_normal(4)
            a, b = complex(q[0], q[1]), complex(q[2], q[3])
            r = math.hypot(abs(a), abs(b))
            a, b = a / r, b / r
            ph = np.exp(1j * rng.uniform(0, 2 * np.pi))
            return ph * np.array([[a, -b.conjugate()], [b, a.conjugate()]])
        t = rng.uniform(0, 2 * np.pi)
        c, s = math.cos(t), math.sin(t)
        sign = 1.0 if rng.random() < 0.5 else -1.0
        return np.array([[c, -sign * s], [s, sign * c]])
    Z = rng.standard_normal((n, n))
    if complex_field:
        Z = Z + 1j * rng.standard_normal((n, n))
    Q, R = np.linalg.qr(Z)
    d = np.diag(R)
    return Q * (d / np.abs(d))


def random_invertible(spec: AlgebraSpec, rng: np.random.Generator, max_cond: float = 4.0) -> AlgebraElement:
    """Random unit whose left-regular condition number is at most ``max_cond``.

    Matrix specs get U diag(s) V with Haar-like U, V, singular values spread
    over [1, max_cond] and a random overall scale; other specs fall back to
    rejection sampling of Gaussian elements.
    """
    if spec.matrix_basis is None or spec.N != spec.n**2:
        while True:
            a = random_element(spec, rng)
            s = np.linalg.svd(spec.left_matrix(a.coords), compute_uv=False)
            if s[-1] * max_cond > s[0]:
                return a
    # full matrix algebras: every matrix is in the span, no membership check needed
    return AlgebraElement._make(spec, random_invertible_coords(spec, rng, max_cond))


def _random_bounded_matrix(spec: AlgebraSpec, rng, max_cond: float) -> np.ndarray:
    n = spec.n
    cplx = spec.field == "complex"
    U, V = _random_unitary(n, rng, cplx), _random_unitary(n, rng, cplx)
    sv = np.exp(rng.uniform(0, np.log(max_cond), n))
    sv *= np.exp(rng.normal(0, 0.5)) / sv.max()
    return (U * sv) @ V


def random_invertible_coords(spec: AlgebraSpec, rng: np.random.Generator, max_cond: float = 4.0) -> np.ndarray:
    """Coordinates of ``random_invertible`` without building an element (hot loops)."""
    if spec.matrix_basis is None or spec.N != spec.n**2:
        return random_invertible(spec, rng, max_cond).coords
    coords = spec._decompose @ _random_bounded_matrix(spec, rng, max_cond).reshape(-1)
    return coords.real.astype(complex) if spec.field == "real" else coords


def random_unimodular(spec: AlgebraSpec, rng: np.random.Generator, max_cond: float = 4.0) -> AlgebraElement:
    """Random element whose matrix form has determinant 1 (SL(n) for matrix specs)."""
    if spec.matrix_basis is None:
        raise AlgebraError(f"{spec.name} has no matrix form")
    a = random_invertible(spec, rng, max_cond)
    d = np.linalg.det(to_matrix(a))
    return (1 / d ** (1 / spec.n)) * a
