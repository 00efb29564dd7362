"""Path planning for coordinated DNN inference at the edge.

The compiled extension module does the heavy lifting; this package
re-exports its public surface.
"""

from ._core import (  # noqa: F401
    AccuracyOracle,
    BaselineMetrics,
    BlockProfile,
    BootstrapRule,
    Bottleneck,
    ConnectionKind,
    EmptyKnownSetError,
    EvaluatedPath,
    EvaluationBudgetExceededError,
    ExternalOracle,
    LinkProfile,
    LoadedScenario,
    NoAdmissiblePathError,
    OracleError,
    PathMetrics,
    PathSpec,
    PathThroughput,
    RewardConfig,
    SchemaError,
    Scenario,
    SearchConfig,
    SearchResult,
    ServiceProfile,
    SimConfig,
    SimReport,
    StageRecord,
    SyntheticConfig,
    SyntheticOracle,
    TableOracle,
    Termination,
    ValidationError,
    accuracy_reward,
    admissible_paths,
    baseline_throughput,
    brute_force,
    code_search,
    enumerate_paths,
    load_scenario_file,
    make_oracle,
    path_count,
    path_distance,
    path_throughput,
    predict_accuracy,
    predict_average_accuracy,
    reward,
    simulate,
    throughput_reward,
    validate_path,
)

__version__ = "0.1.0"
