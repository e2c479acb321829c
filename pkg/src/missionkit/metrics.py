"""Binary-classification evaluation.

Confusion counts, the accuracy / precision / recall / F1 family with honest
handling of degenerate denominators (a metric whose denominator is zero is
reported as None, never as 0.0 or NaN), rank-based ROC AUC with average
ranks for tied scores, seeded k-fold index splitting, and decimal half-up
rounding for presentation.
"""

from __future__ import annotations

from dataclasses import dataclass
from decimal import ROUND_HALF_UP, Decimal
from typing import Sequence

import numpy as np

from .errors import BadFoldCount, EmptyInput, EmptyMatrix, LengthMismatch, SingleClass


@dataclass(frozen=True)
class ConfusionMatrix:
    """2x2 count table; rows are actual (negative, positive), columns predicted.

    Row-major layout: [[tn, fp], [fn, tp]].
    """

    tn: int
    fp: int
    fn: int
    tp: int

    def __post_init__(self):
        for name in ("tn", "fp", "fn", "tp"):
            value = getattr(self, name)
            if not isinstance(value, int) or value < 0:
                raise ValueError(f"{name} must be a non-negative integer, got {value!r}")

    @property
    def total(self) -> int:
        return self.tn + self.fp + self.fn + self.tp

    def rows(self) -> list[list[int]]:
        return [[self.tn, self.fp], [self.fn, self.tp]]

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]]) -> "ConfusionMatrix":
        (tn, fp), (fn, tp) = rows
        return cls(tn=int(tn), fp=int(fp), fn=int(fn), tp=int(tp))


@dataclass(frozen=True)
class MetricsReport:
    """Scalar summary of a confusion matrix.

    Fields are None when undefined: precision with no positive predictions,
    recall with no positive labels, f1 when either side is undefined or both
    are zero, roc_auc when no scores were supplied.
    """

    accuracy: float
    precision: float | None
    recall: float | None
    f1: float | None
    roc_auc: float | None = None


def confusion(labels: Sequence[int], predictions: Sequence[int]) -> ConfusionMatrix:
    """Count the four agreement cells between 0/1 labels and 0/1 predictions."""
    if len(labels) != len(predictions):
        raise LengthMismatch(
            f"{len(labels)} labels vs {len(predictions)} predictions"
        )
    if len(labels) == 0:
        raise EmptyInput("no samples")
    cells = {(0, 0): 0, (0, 1): 0, (1, 0): 0, (1, 1): 0}
    for actual, predicted in zip(labels, predictions):
        key = (int(actual), int(predicted))
        if key not in cells or actual not in (0, 1) or predicted not in (0, 1):
            raise ValueError(f"labels and predictions must be 0 or 1, got {(actual, predicted)!r}")
        cells[key] += 1
    return ConfusionMatrix(
        tn=cells[(0, 0)], fp=cells[(0, 1)], fn=cells[(1, 0)], tp=cells[(1, 1)]
    )


def metrics(cm: ConfusionMatrix) -> MetricsReport:
    """Accuracy, precision, recall and F1 from a confusion matrix."""
    if cm.total == 0:
        raise EmptyMatrix("confusion matrix has zero total count")
    accuracy = (cm.tp + cm.tn) / cm.total
    precision = cm.tp / (cm.tp + cm.fp) if (cm.tp + cm.fp) > 0 else None
    recall = cm.tp / (cm.tp + cm.fn) if (cm.tp + cm.fn) > 0 else None
    f1 = None
    if precision is not None and recall is not None and (precision + recall) > 0.0:
        f1 = 2.0 * precision * recall / (precision + recall)
    return MetricsReport(accuracy=accuracy, precision=precision, recall=recall, f1=f1)


def _average_ranks(scores: np.ndarray) -> np.ndarray:
    """1-based ranks, with tied scores sharing the mean of their rank span."""
    order = np.argsort(scores, kind="mergesort")
    ordered = scores[order]
    n = len(scores)
    boundaries = np.flatnonzero(np.diff(ordered)) + 1
    starts = np.concatenate(([0], boundaries))
    ends = np.concatenate((boundaries, [n]))
    ranks = np.empty(n, dtype=float)
    for start, end in zip(starts, ends):
        ranks[order[start:end]] = (start + end + 1) / 2.0
    return ranks


def roc_auc(labels: Sequence[int], scores: Sequence[float]) -> float:
    """Area under the ROC curve as a rank statistic.

    Equals Pr[score(random positive) > score(random negative)] with ties
    counted half, computed from average ranks.  Requires both classes to
    be present.
    """
    y = np.asarray(labels)
    s = np.asarray(scores, dtype=float)
    if y.ndim != 1 or s.ndim != 1 or len(y) != len(s):
        raise LengthMismatch(f"{len(y)} labels vs {len(s)} scores")
    if len(y) == 0:
        raise EmptyInput("no samples")
    if not set(np.unique(y).tolist()) <= {0, 1}:
        raise ValueError("labels must be 0 or 1")
    positives = y == 1
    n_pos = int(positives.sum())
    n_neg = len(y) - n_pos
    if n_pos == 0 or n_neg == 0:
        raise SingleClass(f"need both classes, got {n_pos} positive / {n_neg} negative")
    ranks = _average_ranks(s)
    return float((ranks[positives].sum() - n_pos * (n_pos + 1) / 2.0) / (n_pos * n_neg))


def kfold_splits(n: int, k: int, seed: int) -> list[list[int]]:
    """Disjoint, exhaustive index folds with sizes differing by at most one.

    Indices 0..n-1 are permuted with numpy's default generator under the
    given seed and split into k folds; the first n % k folds receive the
    extra element.
    """
    if k < 2 or k > n:
        raise BadFoldCount(f"need 2 <= k <= n, got k={k} with n={n}")
    perm = np.random.default_rng(seed).permutation(n)
    return [fold.tolist() for fold in np.array_split(perm, k)]


def round_half_up(value: float, digits: int = 2) -> float:
    """Round to `digits` decimal places with ties away from zero.

    Python's built-in round() uses banker's rounding (0.885 -> 0.88); tables
    of reported metrics conventionally round half up (0.885 -> 0.89), so
    presentation goes through Decimal with ROUND_HALF_UP on the shortest
    decimal repr of the float.
    """
    quantum = Decimal(1).scaleb(-digits)
    return float(Decimal(repr(value)).quantize(quantum, rounding=ROUND_HALF_UP))
