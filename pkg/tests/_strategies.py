"""Hypothesis strategies and hand-written oracles shared by the tests."""

import numpy as np
from hypothesis import strategies as st

from semidirect import DElement, TElement, pauli_spec

# Pauli matrices written out by hand, independent of the library's table
S0 = np.array([[1, 0], [0, 1]], dtype=complex)
S1 = np.array([[0, 1], [1, 0]], dtype=complex)
S2 = np.array([[0, -1j], [1j, 0]], dtype=complex)
S3 = np.array([[1, 0], [0, -1]], dtype=complex)
PAULI = [S0, S1, S2, S3]


def pauli_coords(M):
    """Coordinates in the sigma basis via v_i = tr(M sigma_i) / 2."""
    return np.array([np.trace(M @ s) / 2 for s in PAULI])


finite = st.floats(-10, 10, allow_nan=False, allow_infinity=False)
complexes = st.builds(complex, finite, finite)
coords4 = st.lists(complexes, min_size=4, max_size=4).map(np.array)
real4 = st.lists(finite, min_size=4, max_size=4).map(np.array)
seeds = st.integers(0, 2**32 - 1)


@st.composite
def pauli_elements(draw):
    return pauli_spec().element(draw(coords4))


def well_conditioned(rng, n=2, max_cond=4.0):
    """Random n x n complex matrix with condition number at most max_cond."""
    U, _ = np.linalg.qr(rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n)))
    V, _ = np.linalg.qr(rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n)))
    s = np.exp(rng.uniform(0, np.log(max_cond), n))
    return (U * s) @ V


def sl2(rng, max_cond=4.0):
    M = well_conditioned(rng, 2, max_cond)
    return M / np.sqrt(np.linalg.det(M))


@st.composite
def units(draw):
    rng = np.random.default_rng(draw(seeds))
    return pauli_spec().element(pauli_coords(well_conditioned(rng)))


@st.composite
def d_elements(draw):
    return DElement(draw(pauli_elements()), draw(units()))


@st.composite
def t_elements(draw):
    return TElement(draw(pauli_elements()), draw(units()), draw(units()))
