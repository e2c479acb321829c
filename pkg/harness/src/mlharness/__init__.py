"""mlharness: classifier benchmark harness for mission telemetry CSVs.

Consumes the telemetry dataset format produced by the ``missionkit`` CLI,
trains five classical classifiers on a stratified split, repeats k-fold
cross-validation for stability analysis, cross-checks every metric against
the ``missionkit metrics`` reference implementation over a subprocess
boundary, and exports comparison artifacts (CSV tables and plots).
"""

from .artifacts import export_artifacts
from .data import (
    DECISION_VOCAB,
    EXPECTED_COLUMNS,
    LEAKY_COLUMNS,
    PHASE_VOCAB,
    Dataset,
    load_dataset,
)
from .errors import (
    CrossCheckMismatch,
    HarnessError,
    IoError,
    SchemaMismatch,
    SingleClass,
)
from .experiment import (
    DISPLAY_NAMES,
    MODEL_NAMES,
    ROC_EXCLUDED,
    ExperimentConfig,
    ExperimentResult,
    ModelEvaluation,
    build_model,
    run_experiment,
)
from .scoring import Scoreboard, confusion_counts, rank_auc, roc_points, scoreboard

__all__ = [
    "DECISION_VOCAB",
    "DISPLAY_NAMES",
    "EXPECTED_COLUMNS",
    "LEAKY_COLUMNS",
    "MODEL_NAMES",
    "PHASE_VOCAB",
    "ROC_EXCLUDED",
    "CrossCheckMismatch",
    "Dataset",
    "ExperimentConfig",
    "ExperimentResult",
    "HarnessError",
    "IoError",
    "ModelEvaluation",
    "SchemaMismatch",
    "SingleClass",
    "Scoreboard",
    "build_model",
    "confusion_counts",
    "export_artifacts",
    "load_dataset",
    "rank_auc",
    "roc_points",
    "run_experiment",
    "scoreboard",
]

__version__ = "1.0.0"
