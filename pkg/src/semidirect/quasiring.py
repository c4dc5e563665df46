"""Functions on a group, the pointwise product ("smile"), and the algebra of
Ad-endomorphisms of the abelian part of a semidirect product.

For a group G the smile of two maps f, h: G -> G is ``(f ~ h)(g) = f(g) h(g)``.
With composition as multiplication this is a quasi-ring: zero is the map to
the identity element, unit is the identity map.  Restricted to endomorphisms
of an abelian vector group B the smile is addition of linear maps, so the
Ad-endomorphisms [l] = Ad[(0, l)]|_B generate an algebra.  ``reconstruct``
computes that algebra from group elements and compares its structure
constants with a target algebra.
"""

from __future__ import annotations

from dataclasses import dataclass
from numbers import Number

import numpy as np

from .algebra import AlgebraError, AlgebraSpec, FieldError, SIGMA, pauli_spec
from .config import get_tol, rel_diff
from .groups import AffineDGroup, DGroup, StarDGroup, TGroup
from .report import Check, Tracker, VerificationReport, gap_check


class QuasiringError(AlgebraError):
    pass


class SpanNotClosedError(QuasiringError):
    """The span of the generator endomorphisms is not closed under composition."""

    def __init__(self, residual: float, pair: tuple):
        super().__init__(f"span not closed: product of basis {pair} has residual {residual:.3e}")
        self.residual = residual
        self.pair = pair


# ---------------------------------------------------------------- functions G -> G

_LEAVES = ("id", "zero", "const", "ad")


class GroupFn:
    """A map G -> G given as a finite expression tree, evaluated pointwise.

    Leaves: identity map, trivial map (everything to the identity element),
    constant map, Ad[g].  Nodes: composition, smile, pointwise inverse, and
    the scalar action (lam f)(b) = f(lam b), which is only defined on pure
    translations b.
    """

    __slots__ = ("group", "kind", "args")

    def __init__(self, group, kind: str, args: tuple = ()):
        self.group = group
        self.kind = kind
        self.args = args

    def __call__(self, x):
        G = self.group
        k, a = self.kind, self.args
        if k == "id":
            return x
        if k == "zero":
            return G.identity()
        if k == "const":
            return a[0]
        if k == "ad":
            g, ginv = a
            return G.mul(G.mul(g, x), ginv)
        if k == "compose":
            return a[0](a[1](x))
        if k == "smile":
            return G.mul(a[0](x), a[1](x))
        if k == "pinv":
            return G.inv(a[0](x))
        if k == "scale":
            lam, f = a
            return f(G.translation(lam * G.translation_coords(x)))
        raise QuasiringError(f"unknown node {k!r}")

    @property
    def is_endomorphism(self) -> bool:
        """Structurally guaranteed endomorphism of G."""
        if self.kind in ("id", "zero", "ad"):
            return True
        if self.kind == "compose":
            return self.args[0].is_endomorphism and self.args[1].is_endomorphism
        return False

    @property
    def size(self) -> int:
        if self.kind in _LEAVES:
            return 1
        return 1 + sum(a.size for a in self.args if isinstance(a, GroupFn))

    def __repr__(self):
        k = self.kind
        if k in ("id", "zero"):
            return {"id": "f1", "zero": "f0"}[k]
        if k == "const":
            return "const"
        if k == "ad":
            return "Ad"
        if k == "compose":
            return f"({self.args[0]!r} . {self.args[1]!r})"
        if k == "smile":
            return f"({self.args[0]!r} ~ {self.args[1]!r})"
        if k == "pinv":
            return f"{self.args[0]!r}^~"
        return f"({self.args[0]:.3g} {self.args[1]!r})"


def _same_group(f: GroupFn, h: GroupFn):
    if f.group is not h.group:
        raise QuasiringError("maps live on different groups")


def fn_identity(group) -> GroupFn:
    return GroupFn(group, "id")


def fn_trivial(group) -> GroupFn:
    return GroupFn(group, "zero")


def fn_const(group, c) -> GroupFn:
    return GroupFn(group, "const", (c,))


def fn_ad(group, g) -> GroupFn:
    return GroupFn(group, "ad", (g, group.inv(g)))


def fn_compose(f: GroupFn, h: GroupFn) -> GroupFn:
    """x -> f(h(x))."""
    _same_group(f, h)
    return GroupFn(f.group, "compose", (f, h))


def fn_smile(f: GroupFn, h: GroupFn) -> GroupFn:
    """x -> f(x) h(x)."""
    _same_group(f, h)
    return GroupFn(f.group, "smile", (f, h))


def fn_inverse_pointwise(f: GroupFn) -> GroupFn:
    """x -> f(x)^-1."""
    return GroupFn(f.group, "pinv", (f,))


def fn_scale(lam, f: GroupFn) -> GroupFn:
    """(lam f)(b) = f(lam b) on pure translations b."""
    return GroupFn(f.group, "scale", (_field_scalar(f.group, lam), f))


def _field_scalar(group, lam) -> complex:
    if not isinstance(lam, Number):
        raise TypeError("scalar expected")
    lam = complex(lam)
    if group.field == "real" and lam.imag != 0:
        raise FieldError(f"complex scalar {lam} on the real vector group of {group.name}")
    return lam


def random_fn(
    group, rng, depth: int = 2, endo: bool = False, translations: bool = False, max_cond: float = 1.5
) -> GroupFn:
    """Random expression tree.

    ``endo`` keeps to endomorphisms of G (Ad leaves, identity, trivial map,
    compositions).  ``translations`` keeps to maps sending B into B, which
    restricted to the abelian B are all endomorphisms of B.  Constants are
    drawn with condition number at most ``max_cond`` because nested smiles
    multiply condition numbers.
    """
    rand = lambda: group.random(rng, max_cond)  # noqa: E731
    if depth <= 0 or rng.random() < 0.3:
        r = rng.random()
        if r < 0.6:
            return fn_ad(group, rand())
        if r < 0.75:
            return fn_identity(group)
        if r < 0.85 and not endo and not translations:
            return fn_const(group, rand())
        if r < 0.92:
            return fn_trivial(group)
        return fn_ad(group, rand())
    if endo:
        sub = lambda: random_fn(group, rng, depth - 1, endo=True, max_cond=max_cond)  # noqa: E731
        return fn_compose(sub(), sub())
    r = rng.random()
    sub = lambda: random_fn(group, rng, depth - 1, translations=translations, max_cond=max_cond)  # noqa: E731
    if r < 0.4:
        return fn_compose(sub(), sub())
    if r < 0.8:
        return fn_smile(sub(), sub())
    return fn_inverse_pointwise(sub())


# ---------------------------------------------------------------- quasi-ring laws


def check_quasiring(group, trials: int = 500, seed: int = 0, tol=None, points: int = 5) -> VerificationReport:
    """Randomized pointwise check of the quasi-ring laws on ``group``.

    Per trial: random trees f, g, h, a random endomorphism e, ``points``
    random group elements and translations.  Violations are reported, never
    raised.  The last check is a negative control: a constant map is not an
    endomorphism, so left distributivity must visibly fail for it.
    """
    if trials < 1:
        raise QuasiringError("trials must be at least 1")
    tol = get_tol(tol)
    rng = np.random.default_rng(seed)
    G = group
    t_rd = Tracker("right distributivity (f~g)h = fh~gh", tol)
    t_ld = Tracker("left distributivity e(f~g) = ef~eg", tol)
    t_neg = Tracker("negation f~f^ = f0", tol)
    t_zero = Tracker("f~f0 = f and f1 f = f", tol)
    t_hom = Tracker("smile of B-endomorphisms is an endomorphism of B", tol)
    t_comm = Tracker("smile of B-endomorphisms commutes", tol)
    t_sadd = Tracker("(a f)~(b f) = (a+b) f", tol)
    t_sdist = Tracker("(a f)~(a g) = a(f~g)", tol)
    control = 0.0
    f0, f1 = fn_trivial(G), fn_identity(G)

    def scalar():
        s = rng.standard_normal()
        if G.field == "complex":
            s = s + 1j * rng.standard_normal()
        return complex(s)

    batched = getattr(G, "batched", False)

    def errors(lhs, rhs, xs):
        # per-point errors; batched groups evaluate all points as one stack
        if batched:
            X = np.stack(xs)
            # constant maps return a single element; broadcast to one error per point
            return np.broadcast_to(G.diffs(lhs(X), rhs(X)), (len(xs),))
        return np.array([G.diff(lhs(x), rhs(x)) for x in xs])

    def mul_errors(fn, b1s, b2s):
        if batched:
            B1, B2 = np.stack(b1s), np.stack(b2s)
            return np.broadcast_to(G.diffs(fn(G.mul(B1, B2)), G.mul(fn(B1), fn(B2))), (len(b1s),))
        return np.array([G.diff(fn(G.mul(a, b)), G.mul(fn(a), fn(b))) for a, b in zip(b1s, b2s)])

    for _ in range(trials):
        f, g, h = (random_fn(G, rng) for _ in range(3))
        e = random_fn(G, rng, endo=True)
        lhs_rd, rhs_rd = fn_compose(fn_smile(f, g), h), fn_smile(fn_compose(f, h), fn_compose(g, h))
        lhs_ld, rhs_ld = fn_compose(e, fn_smile(f, g)), fn_smile(fn_compose(e, f), fn_compose(e, g))
        neg = fn_smile(f, fn_inverse_pointwise(f))
        bad = fn_const(G, G.random(rng, 1.5))
        bad_l, bad_r = fn_compose(bad, fn_smile(f, g)), fn_smile(fn_compose(bad, f), fn_compose(bad, g))
        fb, gb = random_fn(G, rng, translations=True), random_fn(G, rng, translations=True)
        fgb, gfb = fn_smile(fb, gb), fn_smile(gb, fb)
        al, be = scalar(), scalar()
        s_lhs = fn_smile(fn_scale(al, fb), fn_scale(be, fb))
        s_rhs = fn_scale(al + be, fb)
        d_lhs = fn_smile(fn_scale(al, fb), fn_scale(al, gb))
        d_rhs = fn_scale(al, fgb)
        xs, b1s, b2s = [], [], []
        for _ in range(points):
            xs.append(G.random(rng, 1.5))
            b1s.append(G.translation(G.random_translation_coords(rng)))
            b2s.append(G.translation(G.random_translation_coords(rng)))
        e_rd = errors(lhs_rd, rhs_rd, xs)
        e_ld = errors(lhs_ld, rhs_ld, xs)
        e_neg = errors(neg, fn_trivial(G), xs)
        e_zero = np.maximum(errors(fn_smile(f, f0), f, xs), errors(fn_compose(f1, f), f, xs))
        control = max(control, float(np.max(errors(bad_l, bad_r, xs))))
        e_hom = mul_errors(fgb, b1s, b2s)
        e_comm = errors(fgb, gfb, b1s)
        e_sadd = errors(s_lhs, s_rhs, b1s)
        e_sdist = errors(d_lhs, d_rhs, b1s)
        for i in range(points):
            x, b1, b2 = xs[i], b1s[i], b2s[i]
            t_rd.record(e_rd[i], f=f, g=g, h=h, x=x)
            t_ld.record(e_ld[i], e=e, f=f, g=g, x=x)
            t_neg.record(e_neg[i], f=f, x=x)
            t_zero.record(e_zero[i], f=f, x=x)
            t_hom.record(e_hom[i], f=fb, g=gb, b1=b1, b2=b2)
            t_comm.record(e_comm[i], f=fb, g=gb, b=b1)
            t_sadd.record(e_sadd[i], f=fb, alpha=al, beta=be, b=b1)
            t_sdist.record(e_sdist[i], f=fb, g=gb, alpha=al, b=b1)

    checks = [t.check() for t in (t_rd, t_ld, t_neg, t_zero, t_hom, t_comm, t_sadd, t_sdist)]
    checks.append(gap_check("left distributivity fails for a constant map (control)", control, 1e-3, tol))
    return VerificationReport("quasiring", int(seed), int(trials), tol, checks)


# ---------------------------------------------------------------- linear endomorphisms of B


def ad_endo(g, group) -> np.ndarray:
    """Matrix of b -> Ad[g](b) on the coordinates of the abelian part B.

    Depends only on the linear part of g: l b (D), l b r^-1 (T~),
    G b G* (star-invariant subgroup).
    """
    if not isinstance(group, (DGroup, TGroup, StarDGroup, AffineDGroup)):
        raise QuasiringError(f"unsupported group {type(group).__name__}")
    return group.ad_endo(g)


def ad_endo_by_conjugation(g, group) -> np.ndarray:
    """The same matrix obtained by conjugating basis translations in the group."""
    ginv = group.inv(g)
    cols = []
    for e in np.eye(group.b_dim):
        y = group.mul(group.mul(g, group.translation(e)), ginv)
        cols.append(group.translation_coords(y))
    return np.array(cols).T


def endo_smile(e1, e2) -> np.ndarray:
    """Smile of linear endomorphisms of a vector group: their sum."""
    e1, e2 = np.asarray(e1), np.asarray(e2)
    if e1.shape != e2.shape or e1.ndim != 2:
        raise QuasiringError(f"shape mismatch {e1.shape} vs {e2.shape}")
    return e1 + e2


def endo_scalar(lam, e, group) -> np.ndarray:
    """(lam e)(b) = e(lam b); for linear e that is lam times the matrix."""
    lam = _field_scalar(group, lam)
    e = np.asarray(e)
    return (lam.real if group.field == "real" else lam) * e


def op_norm(e) -> float:
    return float(np.linalg.norm(np.asarray(e), ord=2))


def star_counterexamples(tol=None) -> VerificationReport:
    """Witnesses that l -> [l] is neither additive nor homogeneous on D*(Pauli).

    ([1] ~ [1])(b) = 2b against [1 + 1](b) = 4b, and i[1](b) = ib against
    [i 1](b) = b.  The same two identities hold in D(Pauli) (positive
    controls), and [mu l] = |mu|^2 [l] holds in D*(Pauli).
    """
    tol = get_tol(tol)
    spec = pauli_spec()
    one = spec.one()
    herm = StarDGroup(spec)
    amb = StarDGroup(spec, hermitian=False)
    dgrp = DGroup(spec)

    def E(group, l):
        return ad_endo(group.from_unit(l), group)

    checks = []
    e1 = E(herm, one)
    sum_gap = op_norm(endo_smile(e1, e1) - E(herm, 2 * one))
    checks.append(gap_check("D*: [1]~[1] differs from [1+1]", sum_gap, 0.5, tol))
    t = Tracker("D*: gap of [1]~[1] vs [1+1] is exactly 2", tol)
    t.record(abs(sum_gap - 2.0), gap=sum_gap)
    checks.append(t.check())

    ea = E(amb, one)
    lam_gap = op_norm(endo_scalar(1j, ea, amb) - E(amb, 1j * one))
    checks.append(gap_check("D*: i[1] differs from [i 1]", lam_gap, 0.5, tol))
    t = Tracker("D*: gap of i[1] vs [i 1] is exactly sqrt 2", tol)
    t.record(abs(lam_gap - np.sqrt(2.0)), gap=lam_gap)
    checks.append(t.check())

    b = spec.element([0.5, -1.0, 2.0, 0.25j])
    w_sum = (e1 + e1) @ herm.herm_coords(SIGMA[0]), E(herm, 2 * one) @ herm.herm_coords(SIGMA[0])
    t = Tracker("D*: witness values 2b and 4b at b = sigma0", tol)
    t.record(max(rel_diff(w_sum[0], [2, 0, 0, 0]), rel_diff(w_sum[1], [4, 0, 0, 0])))
    checks.append(t.check())
    t = Tracker("D*: witness values ib and b at a sample b", tol)
    t.record(
        max(rel_diff(endo_scalar(1j, ea, amb) @ b.coords, 1j * b.coords), rel_diff(E(amb, 1j * one) @ b.coords, b.coords)),
        b=b,
    )
    checks.append(t.check())

    rng = np.random.default_rng(7)
    t_mu = Tracker("D*: [mu l] = |mu|^2 [l]", tol)
    t_lam = Tracker("D: lam[l] = [lam l] (control)", tol)
    t_add = Tracker("D: [l1]~[l2] = [l1+l2] (control)", tol)
    for _ in range(20):
        l1, l2 = dgrp.random_unit(rng), dgrp.random_unit(rng)
        mu = complex(rng.standard_normal(), rng.standard_normal())
        t_mu.record(rel_diff(E(amb, mu * l1), abs(mu) ** 2 * E(amb, l1)), l=l1, mu=mu)
        t_mu.record(rel_diff(E(herm, mu * l1), abs(mu) ** 2 * E(herm, l1)), l=l1, mu=mu)
        t_lam.record(rel_diff(endo_scalar(mu, E(dgrp, l1), dgrp), E(dgrp, mu * l1)), l=l1, mu=mu)
        if (l1 + l2).is_invertible():
            t_add.record(rel_diff(endo_smile(E(dgrp, l1), E(dgrp, l2)), E(dgrp, l1 + l2)), l1=l1, l2=l2)
    checks += [t_mu.check(), t_lam.check(), t_add.check()]
    return VerificationReport("star-counterexamples", 0, 1, tol, checks)


# ---------------------------------------------------------------- reconstruction


@dataclass
class ReconstructedAlgebra:
    group: str
    endos: np.ndarray
    basis: np.ndarray
    structure: np.ndarray
    closure_residual: float
    target: str | None = None
    matched_basis: np.ndarray | None = None
    deviation: float | None = None
    tol: float = 1e-9

    @property
    def dim(self) -> int:
        return self.basis.shape[0]

    @property
    def matches_target(self) -> bool:
        return self.deviation is not None and self.deviation <= self.tol

    def summary(self) -> dict:
        return {
            "group": self.group,
            "generators": int(self.endos.shape[0]),
            "span_dimension": self.dim,
            "closure_residual": self.closure_residual,
            "target": self.target,
            "structure_deviation": self.deviation,
            "matches_target": self.matches_target,
        }


def _endo_stack(group, generators) -> np.ndarray:
    if len(generators) == 0:
        raise QuasiringError("no generators")
    return np.array([ad_endo(g, group) for g in generators])


def span_dimension(group, generators, rtol: float = 1e-10) -> int:
    E = _endo_stack(group, generators)
    flat = E.reshape(E.shape[0], -1)
    s = np.linalg.svd(flat, compute_uv=False)
    return int(np.sum(s > rtol * s[0])) if s[0] > 0 else 0


def _coefficients(basis_flat: np.ndarray, M: np.ndarray):
    """Least-squares coordinates of M in the basis and the relative residual."""
    coef, *_ = np.linalg.lstsq(basis_flat.T, M.reshape(-1), rcond=None)
    resid = np.linalg.norm(basis_flat.T @ coef - M.reshape(-1)) / max(1.0, np.linalg.norm(M))
    return coef, float(resid)


def _structure(basis: np.ndarray):
    k = basis.shape[0]
    flat = basis.reshape(k, -1)
    c = np.zeros((k, k, k), dtype=complex)
    worst = (0.0, None)
    for i in range(k):
        for j in range(k):
            coef, r = _coefficients(flat, basis[i] @ basis[j])
            c[i, j] = coef
            if r > worst[0]:
                worst = (r, (i, j))
    return c, worst


def reconstruct(group, generators, target: AlgebraSpec | None = None, tol=None, rtol: float = 1e-10) -> ReconstructedAlgebra:
    """Algebra spanned by the Ad-endomorphisms of ``generators`` on B.

    A basis of the span is taken from its singular value decomposition and
    closure under composition is checked (``SpanNotClosedError`` otherwise).
    If ``target`` is given and the group's linear parts live in that algebra,
    each target basis element e_i is written as a combination of generator
    linear parts, mapped to the same combination of endomorphisms, and the
    structure constants of those images are compared with the target's.
    """
    tol = get_tol(tol)
    E = _endo_stack(group, generators)
    m = E.shape[0]
    flat = E.reshape(m, -1)
    _, s, vh = np.linalg.svd(flat, full_matrices=False)
    r = int(np.sum(s > rtol * s[0])) if s[0] > 0 else 0
    shape = E.shape[1:]
    basis = vh[:r].reshape((r,) + shape)
    structure, (closure, pair) = _structure(basis)
    if closure > tol:
        raise SpanNotClosedError(closure, pair)
    out = ReconstructedAlgebra(group.name, E, basis, structure, closure, tol=tol)
    if target is None:
        return out
    out.target = target.name
    parts = [group.linear_part(g) for g in generators]
    if any(p is None for p in parts):
        return out
    P = np.array([p.coords for p in parts])
    matched = []
    for i in range(target.N):
        e = np.eye(target.N)[i]
        alpha, *_ = np.linalg.lstsq(P.T, e, rcond=None)
        if np.linalg.norm(P.T @ alpha - e) > tol:
            raise QuasiringError("generator linear parts do not span the target algebra")
        matched.append(np.tensordot(alpha, E, axes=1))
    matched = np.array(matched)
    mflat = matched.reshape(target.N, -1)
    if np.linalg.matrix_rank(mflat, tol=rtol * np.linalg.norm(mflat)) < target.N:
        out.matched_basis = matched
        out.deviation = float("inf")
        return out
    c = np.zeros_like(target.structure)
    for i in range(target.N):
        for j in range(target.N):
            c[i, j], _ = _coefficients(mflat, matched[i] @ matched[j])
    out.matched_basis = matched
    out.deviation = float(np.max(np.abs(c - target.structure)))
    return out
