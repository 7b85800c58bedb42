"""Chain recurrence, attractors and hyperspace lifts of finite dynamical systems."""

from .conley import (
    AttractorRecord,
    attractor_of,
    conley_intersection,
    enumerate_attractors,
    is_trapping,
    repellor_dual,
)
from .discretize import (
    GridSystem,
    IntervalMapSpec,
    builtin,
    discretize,
    fixed_point_oracle,
    logistic,
    sinpi,
    table,
    tent,
)
from .dynamics import (
    EXACT,
    ChainAnalysis,
    DiscreteSystem,
    Eps,
    Orbit,
    Semantics,
    chain_components,
    chain_graph,
    chain_reachable,
    chain_recurrent_set,
    exists_chain_within,
    forward_orbit,
    iterate,
    omega_limit,
)
from .errors import DomainError, HyperchainError, MetricError, PreconditionError, ResourceLimitError
from .hyperspace import (
    HausdorffSpace,
    HyperSystem,
    attractor_lift_check,
    c_j_set,
    component_structure_check,
    is_chain_transitive,
    lift,
    main_theorem_check,
    partition_check,
    project,
    project_hyper,
    set_identity_check,
)
from .io import InputError, SystemDocument
from .metric import (
    FiniteMetricSpace,
    PointSet,
    eps_neighborhood,
    euclidean_1d_space,
    hausdorff_distance,
    validate_metric,
    zero_one_space,
)
from .report import CheckRecord, VerificationReport

__version__ = "0.1.0"
