"""Task-chain mission reliability toolkit.

Subpackages by concern:

* chain      two-state Markov success-probability engine
* ledger     tamper-evident hash-chained flight recorder
* contract   ordered abort-rule engine with dual-channel confirmation
* sim        deterministic mission simulator and ledger replay
* telemetry  synthetic labeled telemetry dataset generator
* metrics    binary-classification evaluation
* cli        command-line surface (`missionkit ...`)
"""

from .chain import (
    ChainQuery,
    McEstimate,
    Outcome,
    OutcomeLog,
    TransitionKernel,
    estimate_kernel,
    limiting_success_prob,
    sample_outcomes,
    simulate_chain_mc,
    success_given_first_incomplete,
    success_given_first_success,
    success_prob_by_conditioning,
    success_prob_closed,
    success_prob_recurrence,
)
from .contract import (
    AbortReason,
    Channel,
    Confirmation,
    ContractSpec,
    Decision,
    MissionState,
    Verdict,
    confirm_abort,
    evaluate,
    project_task_success,
)
from .errors import (
    BadFoldCount,
    DegenerateKernel,
    EmptyInput,
    EmptyMatrix,
    InsufficientData,
    InvalidScenario,
    IoError,
    LengthMismatch,
    MalformedFile,
    MissionError,
    SealedLedger,
    SingleClass,
    TamperedLedger,
    TimestampRegression,
)
from .ledger import ChainStatus, Ledger, LedgerEntry, LedgerMode
from .metrics import (
    ConfusionMatrix,
    MetricsReport,
    confusion,
    kfold_splits,
    metrics,
    roc_auc,
    round_half_up,
)
from .sim import (
    EventKind,
    Mc2Response,
    MissionOutcome,
    MissionReport,
    MissionScenario,
    OutcomeKind,
    ScenarioEvent,
    TaskRecord,
    contract_for_phases,
    load_scenario,
    replay,
    run_mission,
)
from .telemetry import (
    CSV_HEADER,
    PHASES,
    AiDecision,
    DatasetSpec,
    DatasetSummary,
    Phase,
    TelemetryRecord,
    generate_dataset,
    generate_mission_trace,
    generate_records,
)

__version__ = "0.1.0"
