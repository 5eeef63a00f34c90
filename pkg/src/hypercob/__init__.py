"""Validated homology-cobordism obstruction constants from hyperbolic geometry.

The pipeline: a (volume, injectivity radius, coexact spectral gap) budget
feeds the Sobolev/elliptic constant chain, the local-Weyl eigenvalue
counts, and the perturbation-norm bound for the extended Hessian; together
these produce an explicit spectral-flow bound and, through the torsion and
Pin(2)-width estimates, the Brieskorn exclusion constant and a Froyshov
invariant bound.  A finite-dimensional lab validates the operator-theoretic
ingredients on random self-adjoint families.
"""

from .floer import (
    BrieskornWidth,
    CorrectionTerms,
    HMModule,
    brieskorn_width,
    connected_sum,
    exclusion_threshold,
    froyshov_upper,
    torsion_upper_from_flow,
    torsion_width,
    width,
    width_upper_from_torsion,
)
from .flowlab import (
    OperatorFamily,
    check_bounded_flow_bound,
    check_containment,
    check_relative_flow_bound,
    random_family,
    relative_norm,
    run_campaign,
    spectral_flow,
    trajectories,
)
from .geometry import (
    BudgetError,
    GeometryBudget,
    c_V_eps,
    coexact_L4_coefficient,
    coexact_L6_coefficient,
    diameter_bound,
    embedding_L6_constant,
    isoperimetric_lower,
    sobolev_constant_lower,
)
from .interval import (
    Bound,
    BoundDomainError,
    arith,
    bound_max,
    bound_min,
    log10_report,
    set_working_precision,
    working_precision,
)
from .perturbation import (
    NormKind,
    PerturbationNorm,
    block_norm_bound,
    flow_threshold,
    hessian_perturbation_norm,
    recurrence_limit,
    recurrence_value,
    spectral_flow_bound,
)
from .pipeline import (
    CensusRecord,
    ObstructionReport,
    census_report,
    m_constant,
    n_constant_assembled,
    n_constant_closed_form,
    parse_census,
)
from .weyl import (
    PROFILE_EPS_0_15,
    WeylConstants,
    count_extended_hessian,
    count_function_block,
    count_star_or_dirac,
)

__version__ = "0.1.0"
