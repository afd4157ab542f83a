"""Vector and Hermite subdivision schemes over exact Gaussian rationals.

Modules cover the mask algebra (sequences, symbols, jets), the subdivision
and cascade operators, sum rules and matching filters, the normal form and
factorization of matrix masks, and smoothness estimation.
"""

from .rational import CRat, cr
from .seq import (
    MatSeq,
    matseq,
    zero_seq,
    dirac,
    scalar_seq,
    convolve,
    coset,
    interleave,
    upsample,
    difference_power,
    nabla_power,
    strong_inverse,
    exact_divide,
    from_entries,
)
from .jets import Jet, POINT_PI, POINT_ZERO, jet_interpolate, jet_multiply
from .subdivision import (
    HermiteData,
    DyadicSamples,
    apply_subdivision,
    iterate_mask,
    hermite_refine,
    is_interpolatory,
    basis_samples,
)
from .polynomials import (
    VecPoly,
    vecpoly,
    monomial,
    poly_conv,
    eigen_polys,
    subdivide_poly,
    check_poly_invariance,
)
from .sum_rules import (
    SumRuleReport,
    HermiteCheck,
    matching_filter_jet,
    sum_rules_order,
    is_hermite_mask,
    construct_hermite_mask,
)
from .normal_form import NormalForm, build_U, transform_mask, factorize
from .convergence import (
    EigenCheck,
    SmoothnessReport,
    ConvergenceDecision,
    eigen_check,
    rho_estimate,
    smoothness_estimate,
    hermite_convergence_decision,
)
from .cascade import (
    PiecewisePoly,
    InitialVector,
    theta_eval,
    hermite_bump,
    build_initial,
    cascade_run,
)
from .maskio import (
    MaskDocument,
    parse_mask_document,
    serialize_mask_document,
    load_builtin_mask,
    builtin_mask_names,
)

__version__ = "0.1.0"
