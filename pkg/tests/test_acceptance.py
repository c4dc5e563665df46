"""Acceptance criteria at seed 42, 1000 trials, tolerance 1e-9 unless stated.

Criteria 1 to 9 read the report of one `verify all --seed 42` run (the
same numbers each suite produces when run alone) and add direct checks of
the frozen values.  Criterion 10 compares two independent runs.
"""

import math

import numpy as np

from semidirect import (
    AffineDGroup,
    StarDGroup,
    TGroup,
    ad_endo,
    apply_spin,
    check_quasiring,
    endo_scalar,
    endo_smile,
    lorentz_from_sl2,
    make_boost,
    pauli_spec,
    span_dimension,
)
from semidirect.quasiring import op_norm

SEED = 42
TOL = 1e-9
EXACT = 1e-12
# (cosh 1, 0, 0, sinh 1), frozen from the standard library
BOOST = np.array([1.5430806348152437, 0.0, 0.0, 1.1752011936438014])
TIME_BUDGET = 30.0


def suite_checks(report, suite):
    checks = {c["name"][len(suite) + 2:]: c for c in report["checks"] if c["name"].startswith(suite + ": ")}
    assert checks, f"no checks for {suite}"
    return checks


def within(check, bound):
    return check["passed"] and check["max_error"] <= bound and check["tol"] <= bound


def worst(checks):
    return max(c["max_error"] for c in checks)


def test_report_header(verify_all_report):
    assert verify_all_report["seed"] == SEED and verify_all_report["trials"] == 1000
    assert verify_all_report["tol"] == TOL and verify_all_report["schema"] == 1


def test_criterion_01_group_axioms(verify_all_report, acceptance_line):
    c = suite_checks(verify_all_report, "group-axioms")
    names = [f"{g}: {law}" for g in ("D", "T") for law in ("associativity", "two-sided identity", "two-sided inverse")]
    sel = [c[n] for n in names]
    ok = all(within(x, TOL) for x in sel)
    acceptance_line(1, "group axioms of D and T~", ok, f"max residual {worst(sel):.2e}")
    assert ok


def test_criterion_02_representations(verify_all_report, acceptance_line):
    c = suite_checks(verify_all_report, "matrix-reps")
    homs = [
        c["D: [[L, B], [0, 1]] is a homomorphism"],
        c["T: [[L, BR], [0, R]] is a homomorphism"],
        c["D: (N+1) affine matrix is a homomorphism"],
        c["spin: [[Lam, H Lam*^-1], [0, Lam*^-1]] is a homomorphism"],
    ]
    same = c["spin rep equals T rep of (H, Lam, Lam*^-1)"]
    ok = all(within(x, TOL) for x in homs) and within(same, EXACT)
    acceptance_line(
        2, "matrix representations", ok, f"homomorphism {worst(homs):.2e}, spin vs T~ {same['max_error']:.2e}"
    )
    assert ok


def test_criterion_03_involution(verify_all_report, acceptance_line):
    c = suite_checks(verify_all_report, "star-involution")
    sel = [
        c["star(star(x)) = x"],
        c["star(xy) = star(x) star(y)"],
        c["star-invariant elements (H, G, G*^-1) are fixed"],
    ]
    ok = all(within(x, TOL) for x in sel)
    acceptance_line(3, "star involution", ok, f"max residual {worst(sel):.2e}")
    assert ok


def test_criterion_04_minkowski(verify_all_report, acceptance_line):
    c = suite_checks(verify_all_report, "minkowski")
    det = c["det(sum v_i sigma_i) = v0^2 - v1^2 - v2^2 - v3^2"]
    mhm = c["H -> M H M* with det M = 1 keeps the Minkowski norm"]
    ok = within(det, EXACT) and within(mhm, TOL)
    acceptance_line(4, "Minkowski norm", ok, f"det {det['max_error']:.2e}, mhm {mhm['max_error']:.2e}")
    assert ok


def test_criterion_05_lorentz_cover(verify_all_report, acceptance_line):
    assert BOOST[0] == math.cosh(1) and BOOST[3] == math.sinh(1)
    c = suite_checks(verify_all_report, "lorentz-cover")
    sel = [c["L^T g L = g"], c["det L = 1"], c["L00 >= 1"], c["L(M) = L(-M)"]]
    sel.append(c["boost rapidity 1 maps (1,0,0,0) to (cosh 1, 0, 0, sinh 1)"])
    direct = float(np.max(np.abs(apply_spin(make_boost(3, 1.0), [1.0, 0, 0, 0]) - BOOST)))
    L = lorentz_from_sl2(np.diag([math.exp(0.5), math.exp(-0.5)]))
    direct = max(direct, float(np.max(np.abs(L[:, 0] - BOOST))))
    ok = all(within(x, TOL) for x in sel) and direct <= TOL
    acceptance_line(5, "Lorentz double cover", ok, f"max residual {worst(sel):.2e}, boost {direct:.2e}")
    assert ok


def test_criterion_06_so4c(verify_all_report, acceptance_line):
    c = suite_checks(verify_all_report, "so4c")
    sel = [c["O^T g O = g over complex entries"], c["(L1, R1)(L2, R2) = (L1 L2, R1 R2) is a homomorphism"]]
    ok = all(within(x, TOL) for x in sel)
    acceptance_line(6, "SO(4,C) from pairs", ok, f"max residual {worst(sel):.2e}")
    assert ok


QUASIRING_LAWS = (
    "right distributivity (f~g)h = fh~gh",
    "left distributivity e(f~g) = ef~eg",
    "smile of B-endomorphisms commutes",
    "negation f~f^ = f0",
    "(a f)~(b f) = (a+b) f",
    "(a f)~(a g) = a(f~g)",
)


def test_criterion_07_quasiring(verify_all_report, acceptance_line):
    c = suite_checks(verify_all_report, "quasiring")
    sel = [c[n] for n in QUASIRING_LAWS]
    # exactly 500 random trees at 5 points each
    direct = check_quasiring(AffineDGroup(pauli_spec()), trials=500, seed=SEED, tol=TOL, points=5)
    dsel = [x.to_dict() for x in direct.checks if x.name in QUASIRING_LAWS]
    ok = all(within(x, TOL) for x in sel + dsel) and len(dsel) == len(QUASIRING_LAWS) and direct.passed
    acceptance_line(7, "quasi-ring laws", ok, f"max residual {worst(sel + dsel):.2e}")
    assert ok


def test_criterion_08_restoration_positive(verify_all_report, acceptance_line):
    c = suite_checks(verify_all_report, "restore-D")
    sel = [
        c["D: span dimension 4"],
        c["D: recovered structure constants equal the Pauli ones"],
        c["D': span dimension 4"],
        c["D': recovered structure constants equal the Pauli ones"],
    ]
    t = suite_checks(verify_all_report, "restore-T")["T: span dimension 16 = 4^2"]
    grp = TGroup(pauli_spec())
    rng = np.random.default_rng(SEED)
    dim = span_dimension(grp, [grp.random(rng) for _ in range(20)])
    ok = all(within(x, TOL) for x in sel) and within(t, TOL) and dim == 16
    acceptance_line(8, "restoration of the Pauli algebra", ok, f"deviation {worst(sel):.2e}, T~ span {dim}")
    assert ok


def test_criterion_09_restoration_negative(verify_all_report, acceptance_line):
    c = suite_checks(verify_all_report, "star-counterexamples")
    sel = list(c.values())
    spec = pauli_spec()
    one = spec.one()
    herm, amb = StarDGroup(spec), StarDGroup(spec, hermitian=False)
    e1 = ad_endo(herm.from_unit(one), herm)
    add_gap = op_norm(endo_smile(e1, e1) - ad_endo(herm.from_unit(2 * one), herm))
    ea = ad_endo(amb.from_unit(one), amb)
    lam_gap = op_norm(endo_scalar(1j, ea, amb) - ad_endo(amb.from_unit(1j * one), amb))
    ok = (
        all(x["passed"] for x in sel)
        and add_gap >= 0.5
        and lam_gap >= 0.5
        and abs(add_gap - 2) <= EXACT
        and abs(lam_gap - math.sqrt(2)) <= EXACT
    )
    acceptance_line(9, "star-invariant subgroup does not restore A", ok, f"gaps {add_gap:.6g}, {lam_gap:.6g}")
    assert ok


def test_criterion_10_cli_determinism(verify_all_runs, acceptance_line):
    (p1, t1), (p2, t2) = verify_all_runs
    ok = p1.returncode == 0 and p2.returncode == 0 and p1.stdout == p2.stdout and p1.stdout.strip() != ""
    ok = ok and max(t1, t2) < TIME_BUDGET
    acceptance_line(10, "verify all --seed 42 is byte-identical, exit 0", ok, f"runs {t1:.1f}s and {t2:.1f}s")
    assert ok
