"""Exact max-plus algebra and tropical vector bundles on a tropical elliptic curve."""
from .bundles import (
    Bundle,
    Gauge,
    IndecClass,
    InvalidBundleError,
    apply_gauge,
    canonical_bundle,
    classify,
    decompose,
    degree,
    direct_sum,
    is_isomorphic,
    monodromy,
    normal_form,
    normalize,
    pull_back_cover,
    transition,
    validate_bundle,
)
from .curve import AffineFn, Curve, Divisor, PLFn, continue_affine, divisor_degree, make_curve, pl_divisor
from .sections import Section, canonical_section, chern1, chern_k_degree, perturb_section
from .trop_core import (
    NEG_INF,
    MonomialMatrix,
    TropMatrix,
    TropValue,
    apply_f_A,
    gmat_inverse,
    gmat_mul,
    tmat_is_invertible,
    tmat_mul,
)

__version__ = "0.1.0"
