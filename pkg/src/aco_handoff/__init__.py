"""Multi-criteria ant colony optimization for vertical handoff channel selection."""

__version__ = "0.1.0"

from .colony import (
    AcoParams,
    ConvergenceReport,
    IterationTrace,
    PheromoneState,
    apply_deposits,
    compute_deposit,
    detect_convergence,
    evaporate,
    make_rng,
    run_until_convergence,
    sample_edges,
    step,
    transition_probabilities,
)
from .criteria import (
    CriteriaConfig,
    NormalizedCriteria,
    RankEntry,
    ScoreVector,
    composite_score,
    derive_evaporation,
    derive_visibility,
    normalize_criteria,
    oracle_rank,
    score_edges,
)
from .errors import (
    DuplicateChannelId,
    EmptyChannelSet,
    EmptyEdgeSet,
    HandoffError,
    InvalidRhoBounds,
    NoFeasibleChannel,
    ParseError,
    ScenarioError,
    UnknownKeyError,
    ValidationError,
)
from .model import (
    CallContext,
    ChannelProfile,
    DecisionGraph,
    EdgeCriteria,
    TrafficType,
    build_decision_graph,
    merge_criteria,
)
from .scenario import (
    Scenario,
    SweepReport,
    baseline_scenario,
    dump_scenario,
    emit_convergence_summary,
    emit_trace_csv,
    generate_scenario,
    load_scenario,
    run_sweep,
)
