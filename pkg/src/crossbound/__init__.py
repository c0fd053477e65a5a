"""Certified crossing-number upper bounds from the entropy-balanced fibre-surface construction."""

__version__ = "0.1.0"

from .combinatorics import (  # noqa: E402
    StirlingCertificate,
    asymptotic_constant_check,
    binomial_exact,
    entropy_lower_bound,
    factorial_bounds,
)
from .entropy import (  # noqa: E402
    EntropySolution,
    binary_entropy,
    critical_residual,
    entropy_derivative,
    objective,
    solve_entropy_minimum,
)
from .family import (  # noqa: E402
    CurveSpec,
    FamilySpec,
    classify_pair,
    distinctness_check,
    embedding_check,
    enumerate_family,
    exact_pair_bound_sum,
    family_size,
    lemma3_bound,
    surface_topology,
)
from .planner import (  # noqa: E402
    CertifiedBound,
    ConstructionPlan,
    build_plan,
    certified_bound,
    convergence_study,
    feasibility_search,
)
from .precision import CertifiedFloor, ln_hp, power_floor  # noqa: E402
