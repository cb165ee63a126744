"""Complex nowhere-zero flows: exact wheel and prism constructions, verification, bounds and a numerical solver."""

from .bounds import BoundReport, bound_report, odd_girth_bound, recognize_family
from .errors import (
    CFlowError,
    InfeasibleConfiguration,
    InvalidParameter,
    NoFlowExists,
    NotAFlow,
    NowhereZeroViolation,
    OutOfRange,
    ParseError,
    SolverFailure,
    Unclassifiable,
)
from .flow import (
    FlowAssignment,
    PointSequence,
    VerifyReport,
    conservation_residual,
    flow_number_estimate,
    flow_to_points,
    points_to_flow,
    project_contraction,
    transform,
    verify_nzf,
)
from .graph import (
    Graph,
    OddGirthResult,
    bridges,
    contract_complement,
    cycle_graph,
    is_bipartite,
    is_bridgeless,
    is_cubic,
    odd_girth,
    petersen_graph,
    prism_graph,
    wheel_graph,
)
from .render import RenderSpec, render_sequence
from .solver import (
    CycleBasis,
    SolveResult,
    SolverConfig,
    circulation,
    cycle_basis,
    optimize_wheel_points,
    probe_moves,
    solve_upper,
)
from .wheel import (
    AngleSet,
    ConfigKind,
    VectorType,
    angle_set,
    best_config,
    classify_sequence,
    classify_vector,
    config_lambda,
    even_wheel_flow,
    optimal_flow,
    optimal_sequence,
    prism_flow,
    radial_scale,
    rho,
    sigma,
    table1_lambda,
    theorem1_value,
)

__version__ = "0.1.0"
