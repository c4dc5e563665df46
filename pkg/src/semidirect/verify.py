"""Seeded randomized suites checking every identity the library implements.

Each suite draws from its own generator derived from (seed, suite index), so
a suite run alone reproduces the same numbers as inside ``all``.
"""

from __future__ import annotations

import numpy as np

from .algebra import pauli_spec, random_element, random_unimodular, to_matrix
from .config import get_tol, rel_diff
from .groups import (
    DElement,
    DGroup,
    AffineDGroup,
    StarDGroup,
    TElement,
    TGroup,
    affine_rep_D,
    apply_D,
    apply_T,
    center_equiv,
    compose_D,
    compose_T,
    embed_star_D,
    invert_D,
    invert_T,
    is_hermitian,
    matrix_rep_D,
    matrix_rep_T,
    star_T,
)
from .quasiring import (
    ad_endo,
    check_quasiring,
    endo_scalar,
    endo_smile,
    reconstruct,
    span_dimension,
    star_counterexamples,
)
from .report import Tracker, VerificationReport
from .spacetime import (
    METRIC,
    SpinPoincareElement,
    apply_spin,
    compose_spin,
    lorentz_from_sl2,
    make_boost,
    make_rotation,
    mat_to_vec,
    mhm_action,
    mink_norm,
    so4c_from_pair,
    spin_matrix_rep,
    vec_to_mat,
)

EXACT_TOL = 1e-12
"""Tolerance for identities that involve no inversion or long products."""

BOOST_VECTOR = np.array([1.5430806348152437, 0.0, 0.0, 1.1752011936438014])
"""(cosh 1, 0, 0, sinh 1)."""


def _rng(seed: int, index: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence([int(seed), index]))


def _sub_seed(seed: int, index: int) -> int:
    return int(np.random.SeedSequence([int(seed), index]).generate_state(1)[0])


def _random_D(spec, rng):
    return DGroup(spec).random(rng)


def _random_T(spec, rng):
    return TGroup(spec).random(rng)


def _random_spin(rng) -> SpinPoincareElement:
    spec = pauli_spec()
    Lam = to_matrix(random_unimodular(spec, rng))
    return SpinPoincareElement(vec_to_mat(rng.standard_normal(4)), Lam)


def _random_sl2(rng) -> np.ndarray:
    return to_matrix(random_unimodular(pauli_spec(), rng))


def _complex_vec(rng) -> np.ndarray:
    return rng.standard_normal(4) + 1j * rng.standard_normal(4)


def _lorentz_error(O) -> float:
    O = np.asarray(O)
    return float(np.linalg.norm(O.T @ METRIC @ O - METRIC)) / max(1.0, float(np.linalg.norm(O)) ** 2)


# ---------------------------------------------------------------- suites


def suite_group_axioms(rng, trials, tol):
    spec = pauli_spec()
    names = [
        "D: associativity",
        "D: two-sided identity",
        "D: two-sided inverse",
        "D: action (xy)(a) = x(y(a))",
        "T: associativity",
        "T: two-sided identity",
        "T: two-sided inverse",
        "T: action (xy)(a) = x(y(a))",
        "T: center quotient is a congruence",
    ]
    t = {n: Tracker(n, tol) for n in names}
    eD, eT = DElement.identity(spec), TElement.identity(spec)
    for _ in range(trials):
        x, y, z = (_random_D(spec, rng) for _ in range(3))
        a = random_element(spec, rng)
        t[names[0]].record(compose_D(compose_D(x, y), z).diff(compose_D(x, compose_D(y, z))), x=x, y=y, z=z)
        t[names[1]].record(max(compose_D(x, eD).diff(x), compose_D(eD, x).diff(x)), x=x)
        t[names[2]].record(max(compose_D(x, invert_D(x)).diff(eD), compose_D(invert_D(x), x).diff(eD)), x=x)
        t[names[3]].record(rel_diff(apply_D(compose_D(x, y), a).coords, apply_D(x, apply_D(y, a)).coords), x=x, y=y, a=a)

        x, y, z = (_random_T(spec, rng) for _ in range(3))
        t[names[4]].record(compose_T(compose_T(x, y), z).diff(compose_T(x, compose_T(y, z))), x=x, y=y, z=z)
        t[names[5]].record(max(compose_T(x, eT).diff(x), compose_T(eT, x).diff(x)), x=x)
        t[names[6]].record(max(compose_T(x, invert_T(x)).diff(eT), compose_T(invert_T(x), x).diff(eT)), x=x)
        t[names[7]].record(rel_diff(apply_T(compose_T(x, y), a).coords, apply_T(x, apply_T(y, a)).coords), x=x, y=y, a=a)

        c1 = complex(*rng.standard_normal(2))
        c2 = complex(*rng.standard_normal(2))
        x2 = TElement(x.B, c1 * x.L, c1 * x.R)
        y2 = TElement(y.B, c2 * y.L, c2 * y.R)
        ok = center_equiv(x, x2, tol) and center_equiv(y, y2, tol) and center_equiv(compose_T(x, y), compose_T(x2, y2), tol)
        t[names[8]].record(0.0 if ok else 1.0, x=x, y=y, c1=c1, c2=c2)
    return [t[n].check() for n in names]


def suite_matrix_reps(rng, trials, tol):
    spec = pauli_spec()
    exact = min(tol, EXACT_TOL)
    t_d = Tracker("D: [[L, B], [0, 1]] is a homomorphism", tol)
    t_a = Tracker("D: (N+1) affine matrix is a homomorphism", tol)
    t_aa = Tracker("D: affine matrix acts as a -> L a + B", tol)
    t_t = Tracker("T: [[L, BR], [0, R]] is a homomorphism", tol)
    t_s = Tracker("spin: [[Lam, H Lam*^-1], [0, Lam*^-1]] is a homomorphism", tol)
    t_st = Tracker("spin rep equals T rep of (H, Lam, Lam*^-1)", exact)
    t_ad = Tracker("T: conjugates of translations are translations", tol)
    one = spec.one()
    for _ in range(trials):
        x, y = _random_D(spec, rng), _random_D(spec, rng)
        a = random_element(spec, rng)
        t_d.record(rel_diff(matrix_rep_D(compose_D(x, y)), matrix_rep_D(x) @ matrix_rep_D(y)), x=x, y=y)
        t_a.record(rel_diff(affine_rep_D(compose_D(x, y)), affine_rep_D(x) @ affine_rep_D(y)), x=x, y=y)
        t_aa.record(rel_diff((affine_rep_D(x) @ np.append(a.coords, 1))[:-1], apply_D(x, a).coords), x=x, a=a)
        u, v = _random_T(spec, rng), _random_T(spec, rng)
        t_t.record(rel_diff(matrix_rep_T(compose_T(u, v)), matrix_rep_T(u) @ matrix_rep_T(v)), x=u, y=v)
        b = TElement(random_element(spec, rng), one, one)
        conj = compose_T(compose_T(u, b), invert_T(u))
        t_ad.record(
            max(rel_diff(conj.L.coords, one.coords), rel_diff(conj.R.coords, one.coords),
                rel_diff(conj.B.coords, (u.L * b.B * u.R.inv()).coords)),
            g=u, b=b,
        )
        p, q = _random_spin(rng), _random_spin(rng)
        t_s.record(rel_diff(spin_matrix_rep(compose_spin(p, q)), spin_matrix_rep(p) @ spin_matrix_rep(q)), x=p, y=q)
        t_st.record(rel_diff(spin_matrix_rep(p), matrix_rep_T(p.to_triple())), x=p)
    return [t.check() for t in (t_d, t_a, t_aa, t_t, t_s, t_st, t_ad)]


def suite_star_involution(rng, trials, tol):
    spec = pauli_spec()
    t_inv = Tracker("star(star(x)) = x", tol)
    t_aut = Tracker("star(xy) = star(x) star(y)", tol)
    t_fix = Tracker("star-invariant elements (H, G, G*^-1) are fixed", tol)
    t_clo = Tracker("star-invariant elements are closed, H stays Hermitian", tol)
    grp = StarDGroup(spec)
    for _ in range(trials):
        x, y = _random_T(spec, rng), _random_T(spec, rng)
        t_inv.record(star_T(star_T(x)).diff(x), x=x)
        t_aut.record(star_T(compose_T(x, y)).diff(compose_T(star_T(x), star_T(y))), x=x, y=y)
        p, q = grp.random(rng), grp.random(rng)
        ep, eq = embed_star_D(p), embed_star_D(q)
        t_fix.record(star_T(ep).diff(ep), x=p)
        prod = compose_T(ep, eq)
        H = to_matrix(prod.B)
        shape = rel_diff(prod.R.coords, prod.L.star().inv().coords)
        t_clo.record(
            max(rel_diff(H, H.conj().T), shape, prod.diff(embed_star_D(p * q))), x=p, y=q
        )
    return [t.check() for t in (t_inv, t_aut, t_fix, t_clo)]


def suite_minkowski(rng, trials, tol):
    exact = min(tol, EXACT_TOL)
    t_det = Tracker("det(sum v_i sigma_i) = v0^2 - v1^2 - v2^2 - v3^2", exact)
    t_rt = Tracker("vector <-> matrix round trip", exact)
    t_mhm = Tracker("H -> M H M* with det M = 1 keeps the Minkowski norm", tol)
    t_her = Tracker("H -> M H M* keeps H Hermitian", tol)
    for _ in range(trials):
        v = _complex_vec(rng)
        scale = max(1.0, float(np.linalg.norm(v)) ** 2)
        t_det.record(abs(np.linalg.det(vec_to_mat(v)) - mink_norm(v)) / scale, v=v)
        t_rt.record(rel_diff(mat_to_vec(vec_to_mat(v)), v), v=v)
        M = _random_sl2(rng)
        w = rng.standard_normal(4)
        Hp = mhm_action(M, vec_to_mat(w))
        wp = mat_to_vec(Hp, real=True)
        scale = max(1.0, float(np.linalg.norm(wp)) ** 2, float(np.linalg.norm(w)) ** 2)
        t_mhm.record(abs(mink_norm(wp) - mink_norm(w)) / scale, M=M, v=w)
        t_her.record(rel_diff(Hp, Hp.conj().T), M=M, v=w)
    return [t.check() for t in (t_det, t_rt, t_mhm, t_her)]


def suite_lorentz_cover(rng, trials, tol):
    t_met = Tracker("L^T g L = g", tol)
    t_det = Tracker("det L = 1", tol)
    t_orth = Tracker("L00 >= 1", tol)
    t_pm = Tracker("L(M) = L(-M)", tol)
    t_hom = Tracker("L(M1 M2) = L(M1) L(M2)", tol)
    t_ker = Tracker("only +-I map to the identity", tol)
    for _ in range(trials):
        M, M2 = _random_sl2(rng), _random_sl2(rng)
        L = lorentz_from_sl2(M)
        t_met.record(_lorentz_error(L), M=M)
        t_det.record(abs(np.linalg.det(L) - 1) / max(1.0, float(np.linalg.norm(L)) ** 4), M=M)
        t_orth.record(max(0.0, 1.0 - L[0, 0]), M=M)
        t_pm.record(rel_diff(lorentz_from_sl2(-M), L), M=M)
        t_hom.record(rel_diff(lorentz_from_sl2(M @ M2), L @ lorentz_from_sl2(M2)), M1=M, M2=M2)
        in_kernel = rel_diff(L, np.eye(4)) <= tol
        is_pm = min(rel_diff(M, np.eye(2)), rel_diff(M, -np.eye(2))) <= tol
        t_ker.record(0.0 if in_kernel == is_pm else 1.0, M=M)
    t_boost = Tracker("boost rapidity 1 maps (1,0,0,0) to (cosh 1, 0, 0, sinh 1)", tol)
    t_boost.record(rel_diff(apply_spin(make_boost(3, 1.0), [1.0, 0, 0, 0]), BOOST_VECTOR))
    t_boost.record(rel_diff(lorentz_from_sl2(make_boost(3, 1.0).Lam)[:, 0], BOOST_VECTOR))
    t_add = Tracker("boost(a) boost(b) = boost(a + b)", tol)
    t_2pi = Tracker("rotation by 2 pi is -I upstairs and the identity downstairs", tol)
    for axis in (1, 2, 3):
        a, b = rng.uniform(-2, 2, 2)
        t_add.record(compose_spin(make_boost(axis, a), make_boost(axis, b)).diff(make_boost(axis, a + b)), axis=axis)
        r = make_rotation(axis, 2 * np.pi)
        t_2pi.record(max(rel_diff(r.Lam, -np.eye(2)), rel_diff(lorentz_from_sl2(r.Lam), np.eye(4))), axis=axis)
    return [t.check() for t in (t_met, t_det, t_orth, t_pm, t_hom, t_ker, t_boost, t_add, t_2pi)]


def suite_so4c(rng, trials, tol):
    t_met = Tracker("O^T g O = g over complex entries", tol)
    t_hom = Tracker("(L1, R1)(L2, R2) = (L1 L2, R1 R2) is a homomorphism", tol)
    t_act = Tracker("O v equals the vector of L V R^-1", tol)
    t_flip = Tracker("det ratio -1 flips the form: O^T g O = -g", tol)
    for _ in range(trials):
        L1, R1, L2, R2 = (_random_sl2(rng) for _ in range(4))
        O1 = so4c_from_pair(L1, R1)
        t_met.record(_lorentz_error(O1), L=L1, R=R1)
        O2 = so4c_from_pair(L2, R2)
        t_hom.record(rel_diff(so4c_from_pair(L1 @ L2, R1 @ R2), O1 @ O2), L1=L1, R1=R1, L2=L2, R2=R2)
        v = _complex_vec(rng)
        t_act.record(rel_diff(O1 @ v, mat_to_vec(L1 @ vec_to_mat(v) @ np.linalg.inv(R1))), L=L1, R=R1, v=v)
        Lf = 1j * L1
        Of = so4c_from_pair(Lf, R1)
        t_flip.record(
            float(np.linalg.norm(Of.T @ METRIC @ Of + METRIC)) / max(1.0, float(np.linalg.norm(Of)) ** 2), L=Lf, R=R1
        )
    return [t.check() for t in (t_met, t_hom, t_act, t_flip)]


def suite_quasiring(rng, trials, tol, seed=0):
    report = check_quasiring(AffineDGroup(pauli_spec()), trials=trials, seed=seed, tol=tol)
    return report.checks


def _dim_tracker(name, got, expected, tol, **ops):
    t = Tracker(name, tol)
    t.record(abs(got - expected), dimension=got, expected=expected, **ops)
    return t


def suite_restore_D(rng, trials, tol):
    spec = pauli_spec()
    checks = []
    for units, label in (("GL", "D"), ("SL", "D'")):
        grp = DGroup(spec, units)
        gens = [grp.from_unit(grp.random_unit(rng)) for _ in range(8)]
        rec = reconstruct(grp, gens, spec, tol)
        checks.append(_dim_tracker(f"{label}: span dimension 4", rec.dim, 4, tol).check())
        t = Tracker(f"{label}: recovered structure constants equal the Pauli ones", tol)
        t.record(rec.deviation, closure=rec.closure_residual)
        checks.append(t.check())
    grp = DGroup(spec)
    t_mul = Tracker("[l1][l2] = [l1 l2]", tol)
    t_lam = Tracker("lam[l] = [lam l]", tol)
    t_add = Tracker("[l1]~[l2] = [l1 + l2] when l1 + l2 is invertible", tol)
    for _ in range(trials):
        l1, l2 = grp.random_unit(rng), grp.random_unit(rng)
        e1, e2 = ad_endo(grp.from_unit(l1), grp), ad_endo(grp.from_unit(l2), grp)
        t_mul.record(rel_diff(e1 @ e2, ad_endo(grp.from_unit(l1 * l2), grp)), l1=l1, l2=l2)
        lam = complex(*rng.standard_normal(2))
        t_lam.record(rel_diff(endo_scalar(lam, e1, grp), ad_endo(grp.from_unit(lam * l1), grp)), l=l1, lam=lam)
        s = l1 + l2
        if s.is_invertible():
            t_add.record(rel_diff(endo_smile(e1, e2), ad_endo(grp.from_unit(s), grp)), l1=l1, l2=l2)
    return checks + [t_mul.check(), t_lam.check(), t_add.check()]


def suite_restore_T(rng, trials, tol):
    spec = pauli_spec()
    grp = TGroup(spec)
    dim = 0
    for _ in range(4):
        gens = [grp.random(rng) for _ in range(16)]
        dim = span_dimension(grp, gens)
        if dim == 16:
            break
    checks = [_dim_tracker("T: span dimension 16 = 4^2", dim, 16, tol).check()]
    rec = reconstruct(grp, gens, None, tol)
    t = Tracker("T: span is closed under composition", tol)
    t.record(rec.closure_residual)
    checks.append(t.check())
    single = span_dimension(grp, [grp.identity()])
    checks.append(_dim_tracker("T: identity alone spans dimension 1", single, 1, tol).check())
    return checks


def suite_star_counterexamples(rng, trials, tol):
    return star_counterexamples(tol).checks


SUITES = {
    "group-axioms": suite_group_axioms,
    "matrix-reps": suite_matrix_reps,
    "star-involution": suite_star_involution,
    "minkowski": suite_minkowski,
    "lorentz-cover": suite_lorentz_cover,
    "so4c": suite_so4c,
    "quasiring": suite_quasiring,
    "restore-D": suite_restore_D,
    "restore-T": suite_restore_T,
    "star-counterexamples": suite_star_counterexamples,
}


def run_suite(name: str, seed: int = 0, trials: int = 1000, tol=None) -> VerificationReport:
    tol = get_tol(tol)
    if trials < 1:
        raise ValueError("trials must be at least 1")
    if name == "all":
        checks = []
        for i, (suite, fn) in enumerate(SUITES.items()):
            for c in _run_one(suite, fn, i, seed, trials, tol):
                c.name = f"{suite}: {c.name}"
                checks.append(c)
        return VerificationReport("all", int(seed), int(trials), tol, checks)
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}")
    i = list(SUITES).index(name)
    return VerificationReport(name, int(seed), int(trials), tol, _run_one(name, SUITES[name], i, seed, trials, tol))


def _run_one(name, fn, index, seed, trials, tol):
    rng = _rng(seed, index)
    if name == "quasiring":
        return fn(rng, trials, tol, seed=_sub_seed(seed, index))
    return fn(rng, trials, tol)
