"""Degree-preserving rewiring toolkit for maximizing network degree correlation."""

from .candidates import (
    ConflictGraph,
    RewireCandidate,
    admissible,
    build_conflict_graph,
    conflicts,
    enumerate_ep,
    make_candidate,
)
from .errors import (
    ConvergenceError,
    DegenerateWeightsError,
    GraphError,
    InvalidPairError,
    ParseError,
    RewiringError,
    SelfLoopError,
    UndefinedMetricError,
    UndefinedRatioError,
)
from .exact import ExactSolution, approximation_ratio, solve_exact
from .experiments import (
    ExperimentSpec,
    RatioSummary,
    ResultRow,
    run_experiment,
    run_ratio_study,
    write_results_csv,
)
from .graph import (
    Graph,
    ParseReport,
    apply_rewiring,
    component_count,
    connected_components,
    degree_sequence,
    edge,
    parse_edge_list,
    write_edge_list,
)
from .metrics import (
    CorrelationReport,
    assortativity,
    assortativity_denominator,
    candidate_value,
    correlation_report,
    s_metric,
    spearman_degree_correlation,
    spearman_rank_corr,
)
from .models import ba_graph, er_graph, ws_graph
from .robustness import (
    CentralityVector,
    SpectrumReport,
    centrality,
    centrality_sc,
    natural_connectivity,
    spectral_radius,
    spectrum_report,
)
from .strategies import (
    STRATEGIES,
    RewirePlan,
    StrategyConfig,
    load_plan_csv,
    replay_plan,
    resolve_budget,
    run_eda,
    run_ga,
    run_pa,
    run_pea,
    run_ra,
    run_strategy,
    run_ta,
    write_plan_csv,
)

__version__ = "0.1.0"
