"""Train the benchmark classifier suite on one telemetry dataset.

``run_experiment`` is the package's main entry point: it loads a telemetry
CSV, holds out a stratified test split, fits five classical classifiers,
scores them with the shared binary-classification definitions, repeats
k-fold cross-validation several times for stability analysis, and (by
default) cross-checks every scoreboard against the ``missionkit metrics``
reference CLI before returning.

Determinism: everything downstream of ``ExperimentConfig.seed`` is seeded —
the split, each estimator, and each cross-validation shuffle — so the same
config on the same file reproduces the same result object exactly.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np
from sklearn.base import BaseEstimator
from sklearn.ensemble import (
    AdaBoostClassifier,
    BaggingClassifier,
    RandomForestClassifier,
)
from sklearn.model_selection import StratifiedKFold, cross_val_score, train_test_split
from sklearn.naive_bayes import GaussianNB
from sklearn.pipeline import make_pipeline
from sklearn.preprocessing import StandardScaler
from sklearn.svm import SVC
from sklearn.tree import DecisionTreeClassifier

from . import crosscheck
from .data import Dataset, load_dataset
from .errors import SingleClass
from .scoring import Scoreboard, rank_auc, roc_points, scoreboard

#: Every classifier the harness knows how to build, in report order.
MODEL_NAMES: tuple[str, ...] = (
    "random_forest",
    "svm",
    "adaboost",
    "naive_bayes",
    "bagging_trees",
)

#: Models whose scores are not meaningful as a ranking, so they get no ROC
#: analysis: GaussianNB's probabilities saturate to 0/1 on this feature mix.
ROC_EXCLUDED: frozenset[str] = frozenset({"naive_bayes"})

#: Human-facing names used in plots and reports.
DISPLAY_NAMES: dict[str, str] = {
    "random_forest": "Random Forest",
    "svm": "SVM (RBF)",
    "adaboost": "AdaBoost",
    "naive_bayes": "Naive Bayes",
    "bagging_trees": "Bagging Trees",
}


def child_seed(seed: int, tag: str) -> int:
    """A decorrelated 32-bit seed for one named sub-task of an experiment."""
    digest = hashlib.sha256(f"{seed}:{tag}".encode("utf-8")).digest()
    return int.from_bytes(digest[:4], "big")


@dataclass(frozen=True)
class ExperimentConfig:
    """Everything needed to reproduce one benchmark run."""

    dataset_path: str | Path
    train_fraction: float = 0.8
    rf_trees: int = 500
    rf_max_depth: int = 5
    cv_folds: int = 5
    cv_runs: int = 5
    seed: int = 0
    drop_leaky_features: bool = False
    models: tuple[str, ...] = MODEL_NAMES
    cross_check: bool = True
    #: Command prefix of the reference metrics CLI; ``None`` means
    #: "the missionkit module of the current interpreter".
    reference_cli: tuple[str, ...] | None = None

    def __post_init__(self) -> None:
        if not 0.0 < self.train_fraction < 1.0:
            raise ValueError("train_fraction must be strictly between 0 and 1")
        if self.rf_trees < 1:
            raise ValueError("rf_trees must be at least 1")
        if self.rf_max_depth < 1:
            raise ValueError("rf_max_depth must be at least 1")
        if self.cv_folds < 2:
            raise ValueError("cv_folds must be at least 2")
        if self.cv_runs < 1:
            raise ValueError("cv_runs must be at least 1")
        if not self.models:
            raise ValueError("models must not be empty")
        unknown = [name for name in self.models if name not in MODEL_NAMES]
        if unknown:
            raise ValueError(f"unknown models {unknown}; choose from {MODEL_NAMES}")
        if len(set(self.models)) != len(self.models):
            raise ValueError("models must not repeat")


def build_model(name: str, config: ExperimentConfig) -> BaseEstimator:
    """A fresh, unfitted estimator for ``name`` under ``config``."""
    seed = config.seed
    if name == "random_forest":
        return RandomForestClassifier(
            n_estimators=config.rf_trees,
            max_depth=config.rf_max_depth,
            random_state=seed,
            n_jobs=-1,
        )
    if name == "svm":
        # The RBF kernel needs standardized inputs; raw telemetry mixes scales
        # from ~1e-2 (visibility) to ~1e3 (altitude) and barely beats chance
        # unscaled.
        return make_pipeline(
            StandardScaler(),
            SVC(kernel="rbf", cache_size=500, random_state=seed),
        )
    if name == "adaboost":
        return AdaBoostClassifier(random_state=seed)
    if name == "naive_bayes":
        return GaussianNB()
    if name == "bagging_trees":
        return BaggingClassifier(
            estimator=DecisionTreeClassifier(
                max_depth=config.rf_max_depth, random_state=seed
            ),
            n_estimators=10,
            random_state=seed,
            n_jobs=-1,
        )
    raise ValueError(f"unknown model {name!r}")


def _ranking_scores(model: BaseEstimator, features: np.ndarray) -> np.ndarray:
    """Continuous scores for ranking: probabilities if available, else margins."""
    if hasattr(model, "predict_proba"):
        return np.asarray(model.predict_proba(features))[:, 1]
    return np.asarray(model.decision_function(features))


@dataclass(frozen=True)
class ModelEvaluation:
    """One classifier's held-out-test scoreboard plus its stability samples."""

    name: str
    scores_summary: Scoreboard
    roc_auc: float | None
    roc_curve: tuple[tuple[float, float], ...] | None
    predictions: tuple[int, ...]
    ranking_scores: tuple[float, ...] | None
    #: cross-validation accuracies, shape ``cv_runs x cv_folds``.
    cv_accuracy: tuple[tuple[float, ...], ...]

    @property
    def cv_run_means(self) -> tuple[float, ...]:
        return tuple(float(np.mean(run)) for run in self.cv_accuracy)


@dataclass(frozen=True)
class ExperimentResult:
    """The full outcome of one benchmark run."""

    config: ExperimentConfig
    feature_names: tuple[str, ...]
    train_rows: int
    test_rows: int
    test_labels: tuple[int, ...]
    evaluations: dict[str, ModelEvaluation] = field(default_factory=dict)
    cross_checked: bool = False


def _split(
    dataset: Dataset, config: ExperimentConfig
) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    return train_test_split(
        dataset.features,
        dataset.labels,
        train_size=config.train_fraction,
        stratify=dataset.labels,
        random_state=child_seed(config.seed, "split"),
    )


def _cv_samples(
    name: str,
    config: ExperimentConfig,
    features: np.ndarray,
    labels: np.ndarray,
) -> tuple[tuple[float, ...], ...]:
    runs: list[tuple[float, ...]] = []
    for run in range(config.cv_runs):
        # All models share the same partition for a given run so their
        # per-run accuracies are comparable.
        folds = StratifiedKFold(
            n_splits=config.cv_folds,
            shuffle=True,
            random_state=child_seed(config.seed, f"cv-run:{run}"),
        )
        accuracies = cross_val_score(
            build_model(name, config), features, labels, cv=folds, scoring="accuracy"
        )
        runs.append(tuple(float(a) for a in accuracies))
    return tuple(runs)


def run_experiment(config: ExperimentConfig) -> ExperimentResult:
    """Load, split, fit, score, cross-validate, and verify one benchmark run."""
    dataset = load_dataset(
        config.dataset_path, drop_leaky_features=config.drop_leaky_features
    )
    if len(np.unique(dataset.labels)) < 2:
        raise SingleClass(
            "the dataset contains a single label value; training a binary "
            "classifier on it is meaningless"
        )

    train_x, test_x, train_y, test_y = _split(dataset, config)
    if len(np.unique(train_y)) < 2 or len(np.unique(test_y)) < 2:
        raise SingleClass("a split ended up with one class; use a larger dataset")

    evaluations: dict[str, ModelEvaluation] = {}
    for name in config.models:
        model = build_model(name, config)
        model.fit(train_x, train_y)
        predictions = np.asarray(model.predict(test_x), dtype=np.int64)
        board = scoreboard(test_y, predictions)

        if name in ROC_EXCLUDED:
            ranking = None
            auc = None
            curve = None
        else:
            ranking = _ranking_scores(model, test_x)
            auc = rank_auc(test_y, ranking)
            curve = roc_points(test_y, ranking)

        evaluations[name] = ModelEvaluation(
            name=name,
            scores_summary=board,
            roc_auc=auc,
            roc_curve=curve,
            predictions=tuple(int(p) for p in predictions),
            ranking_scores=None
            if ranking is None
            else tuple(float(s) for s in ranking),
            cv_accuracy=_cv_samples(name, config, dataset.features, dataset.labels),
        )

    result = ExperimentResult(
        config=config,
        feature_names=dataset.feature_names,
        train_rows=int(train_y.shape[0]),
        test_rows=int(test_y.shape[0]),
        test_labels=tuple(int(v) for v in test_y),
        evaluations=evaluations,
        cross_checked=False,
    )
    if config.cross_check:
        crosscheck.verify_against_reference(result)
        result = ExperimentResult(
            config=result.config,
            feature_names=result.feature_names,
            train_rows=result.train_rows,
            test_rows=result.test_rows,
            test_labels=result.test_labels,
            evaluations=result.evaluations,
            cross_checked=True,
        )
    return result
