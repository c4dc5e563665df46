"""Semidirect-product groups over finite-dimensional associative algebras.

Algebras are given by structure constants; the groups D(A) and T~(A) act on
A by a -> l a + b and a -> l a r^-1 + b.  Over the Pauli algebra these give
the spinor Poincare group and its complex relative, and the translation
subgroup's Ad-endomorphisms rebuild A itself.
"""

from .algebra import (
    SIGMA,
    AlgebraElement,
    AlgebraError,
    AlgebraSpec,
    FieldError,
    SingularElementError,
    SpecMismatchError,
    from_matrix,
    invert,
    is_invertible,
    matrix_algebra_spec,
    pauli_spec,
    random_element,
    random_invertible,
    random_unimodular,
    span_rank,
    spec_from_matrix_basis,
    star,
    to_matrix,
)
from .config import get_tol, rel_diff, set_tol
from .groups import (
    AffineDGroup,
    DElement,
    DGroup,
    GroupError,
    StarDElement,
    StarDGroup,
    TElement,
    TGroup,
    affine_rep_D,
    apply_D,
    apply_T,
    center_equiv,
    compose_D,
    compose_star_D,
    compose_T,
    embed_star_D,
    invert_D,
    invert_star_D,
    invert_T,
    make_star_D,
    matrix_rep_D,
    matrix_rep_T,
    star_T,
)
from .quasiring import (
    GroupFn,
    QuasiringError,
    ReconstructedAlgebra,
    SpanNotClosedError,
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
    reconstruct,
    span_dimension,
    star_counterexamples,
)
from .report import Check, VerificationReport
from .spacetime import (
    METRIC,
    SpacetimeError,
    SpinPoincareElement,
    apply_spin,
    compose_spin,
    invert_spin,
    is_lorentz,
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
from .verify import SUITES, run_suite

__version__ = "0.1.0"
