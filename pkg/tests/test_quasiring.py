import numpy as np
import pytest
from hypothesis import given

from _strategies import PAULI, pauli_coords, seeds, well_conditioned
from semidirect import (
    AffineDGroup,
    DGroup,
    FieldError,
    QuasiringError,
    SpanNotClosedError,
    StarDGroup,
    TGroup,
    ad_endo,
    check_quasiring,
    endo_scalar,
    endo_smile,
    fn_ad,
    fn_compose,
    fn_const,
    fn_identity,
    fn_inverse_pointwise,
    fn_scale,
    fn_smile,
    fn_trivial,
    from_matrix,
    pauli_spec,
    reconstruct,
    span_dimension,
    star_counterexamples,
)
from semidirect.quasiring import ad_endo_by_conjugation, op_norm, random_fn

S = pauli_spec()
TOL = 1e-9
# structure constants of the Pauli algebra from plain matrix products
PAULI_C = np.array([[pauli_coords(PAULI[i] @ PAULI[j]) for j in range(4)] for i in range(4)])


def unit(rng):
    return from_matrix(well_conditioned(rng), S)


# ---------------------------------------------------------------- maps on a group


def test_map_examples():
    G = DGroup(S)
    rng = np.random.default_rng(0)
    f = fn_ad(G, G.random(rng))
    x = G.random(rng)
    assert fn_smile(f, fn_trivial(G))(x).diff(f(x)) <= TOL
    assert fn_smile(f, fn_inverse_pointwise(f))(x).diff(G.identity()) <= TOL
    assert fn_compose(fn_identity(G), f)(x).diff(f(x)) <= TOL
    assert fn_inverse_pointwise(fn_inverse_pointwise(f))(x).diff(f(x)) <= TOL
    c = G.random(rng)
    assert fn_const(G, c)(x) is c
    assert fn_smile(f, f).size == 3


def test_smile_of_ad_maps_adds_on_translations():
    G = DGroup(S)
    rng = np.random.default_rng(1)
    l1, l2 = unit(rng), unit(rng)
    f = fn_smile(fn_ad(G, G.from_unit(l1)), fn_ad(G, G.from_unit(l2)))
    b = S.element(rng.standard_normal(4) + 1j * rng.standard_normal(4))
    out = f(G.translation(b.coords))
    assert np.allclose(G.translation_coords(out), (l1 * b + l2 * b).coords, atol=1e-12)


def test_right_distributivity_instance():
    G = TGroup(S)
    rng = np.random.default_rng(2)
    f, g, h = (random_fn(G, rng) for _ in range(3))
    lhs = fn_compose(fn_smile(f, g), h)
    rhs = fn_smile(fn_compose(f, h), fn_compose(g, h))
    for _ in range(5):
        x = G.random(rng)
        assert lhs(x).diff(rhs(x)) <= TOL


def test_left_distributivity_fails_for_constants():
    G = DGroup(S)
    rng = np.random.default_rng(3)
    e = fn_const(G, G.random(rng))
    f, g = fn_identity(G), fn_identity(G)
    x = G.random(rng)
    lhs = fn_compose(e, fn_smile(f, g))(x)
    rhs = fn_smile(fn_compose(e, f), fn_compose(e, g))(x)
    assert lhs.diff(rhs) > 0.1


def test_map_errors():
    G, H = DGroup(S), DGroup(S)
    with pytest.raises(QuasiringError):
        fn_smile(fn_identity(G), fn_identity(H))
    with pytest.raises(FieldError):
        fn_scale(1j, fn_identity(StarDGroup(S)))
    with pytest.raises(TypeError):
        fn_scale("2", fn_identity(G))


def test_scale_acts_on_translations():
    G = DGroup(S)
    rng = np.random.default_rng(4)
    g = G.random(rng)
    f = fn_scale(2.5 - 1j, fn_ad(G, g))
    b = rng.standard_normal(4)
    out = G.translation_coords(f(G.translation(b)))
    assert np.allclose(out, (2.5 - 1j) * (G.linear_part(g) * S.element(b)).coords, atol=1e-12)


@pytest.mark.parametrize(
    "grp",
    [DGroup(S), DGroup(S, "SL"), TGroup(S), StarDGroup(S), StarDGroup(S, False), AffineDGroup(S)],
    ids=lambda g: g.name,
)
def test_quasiring_laws_hold(grp):
    report = check_quasiring(grp, trials=15, seed=11)
    assert report.passed, report.to_text()
    names = [c.name for c in report.checks]
    assert any("control" in n for n in names) and len(names) == 9
    for c in report.checks:
        assert c.counterexample is None and c.max_error <= TOL


def test_quasiring_is_deterministic():
    G = AffineDGroup(S)
    assert check_quasiring(G, trials=20, seed=5).to_json() == check_quasiring(G, trials=20, seed=5).to_json()


def test_quasiring_rejects_empty_trials():
    with pytest.raises(ValueError):
        check_quasiring(DGroup(S), trials=0)


# ---------------------------------------------------------------- Ad-endomorphisms


def test_ad_endo_examples():
    G = DGroup(S)
    assert np.allclose(ad_endo(G.identity(), G), np.eye(4))
    # [sigma3] is left multiplication by sigma3, column j = sigma3 sigma_j
    want = np.array([pauli_coords(PAULI[3] @ s) for s in PAULI]).T
    assert np.allclose(ad_endo(G.from_unit(S.basis(3)), G), want, atol=1e-15)
    with pytest.raises(QuasiringError):
        ad_endo(G.identity(), object())


@given(seeds)
def test_ad_endo_matrix_oracles(seed):
    rng = np.random.default_rng(seed)
    L, R = well_conditioned(rng), well_conditioned(rng)
    Ri = np.linalg.inv(R)
    l, r = from_matrix(L, S), from_matrix(R, S)
    D, T, Sh, Sa = DGroup(S), TGroup(S), StarDGroup(S), StarDGroup(S, False)
    cols = lambda f: np.array([pauli_coords(f(s)) for s in PAULI]).T  # noqa: E731
    assert np.allclose(ad_endo(D.from_unit(l), D), cols(lambda s: L @ s), atol=1e-12)
    assert np.allclose(ad_endo(T.from_unit((l, r)), T), cols(lambda s: L @ s @ Ri), atol=1e-12)
    herm = cols(lambda s: L @ s @ L.conj().T)
    assert np.allclose(ad_endo(Sh.from_unit(l), Sh), herm.real, atol=1e-12)
    assert np.allclose(ad_endo(Sa.from_unit(l), Sa), herm, atol=1e-12)


@pytest.mark.parametrize(
    "grp", [DGroup(S), TGroup(S), StarDGroup(S), StarDGroup(S, False), AffineDGroup(S)], ids=lambda g: g.name
)
def test_ad_endo_equals_conjugation(grp):
    rng = np.random.default_rng(12)
    for _ in range(20):
        g = grp.random(rng)
        e = ad_endo(g, grp)
        assert np.linalg.norm(e - ad_endo_by_conjugation(g, grp)) <= TOL * max(1, np.linalg.norm(e))


def test_ad_endo_ignores_translation_part():
    G = TGroup(S)
    rng = np.random.default_rng(13)
    g = G.random(rng)
    pure = G.from_unit((g.L, g.R))
    assert np.allclose(ad_endo(g, G), ad_endo(pure, G))


def test_endo_smile_examples():
    G = DGroup(S)
    e = ad_endo(G.from_unit(S.basis(1)), G)
    assert np.array_equal(endo_smile(e, np.zeros_like(e)), e)
    s1, s2 = S.basis(1), S.basis(2)
    total = s1 + s2
    assert abs(np.linalg.det(np.array(PAULI[1] + PAULI[2])) + 2) <= 1e-15 and total.is_invertible()
    lhs = endo_smile(ad_endo(G.from_unit(s1), G), ad_endo(G.from_unit(s2), G))
    assert np.allclose(lhs, ad_endo(G.from_unit(total), G), atol=1e-15)
    assert np.allclose(lhs, endo_smile(ad_endo(G.from_unit(s2), G), ad_endo(G.from_unit(s1), G)))
    with pytest.raises(QuasiringError):
        endo_smile(np.eye(4), np.eye(3))


def test_endo_scalar_examples():
    G = DGroup(S)
    e = ad_endo(G.from_unit(S.one()), G)
    assert np.array_equal(endo_scalar(1, e, G), e)
    assert np.allclose(endo_scalar(2, e, G), ad_endo(G.from_unit(2 * S.one()), G))
    with pytest.raises(FieldError):
        endo_scalar(1j, e, StarDGroup(S))


@given(seeds)
def test_ad_endo_multiplicative_and_linear_on_D(seed):
    rng = np.random.default_rng(seed)
    G = DGroup(S)
    l1, l2 = unit(rng), unit(rng)
    E = lambda l: ad_endo(G.from_unit(l), G)  # noqa: E731
    assert np.linalg.norm(E(l1) @ E(l2) - E(l1 * l2)) <= TOL * np.linalg.norm(E(l1 * l2))
    lam = complex(*rng.standard_normal(2))
    assert np.allclose(endo_scalar(lam, E(l1), G), E(lam * l1), atol=1e-12 * np.linalg.norm(E(l1)) * abs(lam))
    if (l1 + l2).is_invertible():
        assert np.allclose(endo_smile(E(l1), E(l2)), E(l1 + l2), atol=1e-12 * np.linalg.norm(E(l1 + l2)))


# ---------------------------------------------------------------- star-invariant witnesses


def test_star_counterexamples_pass():
    report = star_counterexamples()
    assert report.passed, report.to_text()


def test_star_gaps_from_matrices():
    # Hermitian part: [g] is b -> g b g*, so [1]~[1] = 2 Id and [2] = 4 Id
    H = StarDGroup(S)
    one = S.one()
    e1 = ad_endo(H.from_unit(one), H)
    assert op_norm(endo_smile(e1, e1) - ad_endo(H.from_unit(2 * one), H)) == pytest.approx(2.0, abs=1e-12)
    # whole algebra: i[1] = i Id but [i] = i Id (-i) = Id
    A = StarDGroup(S, False)
    ea = ad_endo(A.from_unit(one), A)
    gap = op_norm(endo_scalar(1j, ea, A) - ad_endo(A.from_unit(1j * one), A))
    assert gap == pytest.approx(np.sqrt(2), abs=1e-12)
    assert gap >= 0.5


# ---------------------------------------------------------------- reconstruction


def test_reconstruct_D_from_basis():
    G = DGroup(S)
    gens = [G.from_unit(S.basis(k)) for k in range(4)]
    rec = reconstruct(G, gens, S)
    assert rec.dim == 4 and rec.matches_target and rec.deviation <= TOL
    # the matched basis has exactly the structure constants of plain 2x2 matrices
    c = np.array([[np.linalg.lstsq(rec.matched_basis.reshape(4, -1).T, (a @ b).ravel(), rcond=None)[0]
                   for b in rec.matched_basis] for a in rec.matched_basis])
    assert np.max(np.abs(c - PAULI_C)) <= TOL
    assert rec.summary()["span_dimension"] == 4


@pytest.mark.parametrize("units", ["GL", "SL"])
def test_reconstruct_D_random(units):
    G = DGroup(S, units)
    rng = np.random.default_rng(14)
    rec = reconstruct(G, [G.from_unit(G.random_unit(rng)) for _ in range(8)], S)
    assert rec.dim == 4 and rec.deviation <= TOL and rec.closure_residual <= TOL


def test_span_dimensions():
    T = TGroup(S)
    rng = np.random.default_rng(15)
    assert span_dimension(T, [T.random(rng) for _ in range(20)]) == 16
    assert span_dimension(T, [T.identity()]) == 1
    D = DGroup(S)
    assert span_dimension(D, [D.identity(), D.from_unit(2 * S.one())]) == 1
    with pytest.raises(QuasiringError):
        span_dimension(D, [])


def test_reconstruct_T_closed():
    T = TGroup(S)
    rng = np.random.default_rng(16)
    rec = reconstruct(T, [T.random(rng) for _ in range(20)])
    assert rec.dim == 16 and rec.closure_residual <= TOL


def test_reconstruct_reports_open_span():
    G = DGroup(S)
    # [sigma1] squares to [1], which is not a multiple of [sigma1]
    with pytest.raises(SpanNotClosedError) as info:
        reconstruct(G, [G.from_unit(S.basis(1))])
    assert info.value.residual > TOL


def test_reconstruct_needs_spanning_linear_parts():
    G = DGroup(S)
    with pytest.raises(QuasiringError):
        reconstruct(G, [G.identity(), G.from_unit(S.element([1, 0, 0, 2]))], S)
