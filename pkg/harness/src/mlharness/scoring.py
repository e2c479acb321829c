"""Binary-classification scoring used by the harness.

These are deliberately implemented here, from their textbook definitions,
rather than imported from the mission toolkit: the toolkit's ``metrics``
subcommand is the *reference* this package cross-checks itself against, and
the check is only meaningful if the two sides share no code.

Conventions (identical to the reference CLI):

* confusion matrix is ``[[tn, fp], [fn, tp]]`` with positive label 1;
* a ratio with a zero denominator is ``None`` (never NaN, never 0);
* ROC-AUC is the normalized rank-sum statistic, ties sharing their average
  rank, so it equals the probability a random positive outscores a random
  negative, counting ties as half.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class Scoreboard:
    """Confusion counts plus the derived ratios for one classifier."""

    tn: int
    fp: int
    fn: int
    tp: int
    accuracy: float
    precision: float | None
    recall: float | None
    f1: float | None

    @property
    def confusion(self) -> tuple[tuple[int, int], tuple[int, int]]:
        return ((self.tn, self.fp), (self.fn, self.tp))


def confusion_counts(
    labels: np.ndarray, predictions: np.ndarray
) -> tuple[int, int, int, int]:
    """Return ``(tn, fp, fn, tp)`` for 0/1 labels and predictions."""
    labels = np.asarray(labels, dtype=np.int64)
    predictions = np.asarray(predictions, dtype=np.int64)
    if labels.shape != predictions.shape:
        raise ValueError("labels and predictions must have the same length")
    tp = int(np.sum((labels == 1) & (predictions == 1)))
    tn = int(np.sum((labels == 0) & (predictions == 0)))
    fp = int(np.sum((labels == 0) & (predictions == 1)))
    fn = int(np.sum((labels == 1) & (predictions == 0)))
    return tn, fp, fn, tp


def scoreboard(labels: np.ndarray, predictions: np.ndarray) -> Scoreboard:
    tn, fp, fn, tp = confusion_counts(labels, predictions)
    total = tn + fp + fn + tp
    accuracy = (tn + tp) / total
    precision = tp / (tp + fp) if (tp + fp) > 0 else None
    recall = tp / (tp + fn) if (tp + fn) > 0 else None
    if precision is None or recall is None or (precision + recall) == 0:
        f1 = None
    else:
        f1 = 2 * precision * recall / (precision + recall)
    return Scoreboard(
        tn=tn,
        fp=fp,
        fn=fn,
        tp=tp,
        accuracy=accuracy,
        precision=precision,
        recall=recall,
        f1=f1,
    )


def rank_auc(labels: np.ndarray, scores: np.ndarray) -> float:
    """ROC-AUC as the average-rank statistic (ties get half credit).

    Raises ``ValueError`` when only one class is present, because the
    statistic is undefined there.
    """
    labels = np.asarray(labels, dtype=np.int64)
    scores = np.asarray(scores, dtype=np.float64)
    n_pos = int(np.sum(labels == 1))
    n_neg = int(np.sum(labels == 0))
    if n_pos == 0 or n_neg == 0:
        raise ValueError("ROC-AUC needs both classes present")
    # Average ranks (1-based) with ties sharing the mean of their positions.
    _, inverse, counts = np.unique(scores, return_inverse=True, return_counts=True)
    starts = np.concatenate(([0], np.cumsum(counts)[:-1]))
    average_ranks = starts + (counts + 1) / 2.0
    ranks = average_ranks[inverse]
    positive_rank_sum = float(ranks[labels == 1].sum())
    return (positive_rank_sum - n_pos * (n_pos + 1) / 2.0) / (n_pos * n_neg)


def roc_points(
    labels: np.ndarray, scores: np.ndarray
) -> tuple[tuple[float, float], ...]:
    """The ROC polyline as ``(fpr, tpr)`` pairs from (0,0) to (1,1).

    One point per distinct score threshold, sweeping the threshold downward.
    """
    labels = np.asarray(labels, dtype=np.int64)
    scores = np.asarray(scores, dtype=np.float64)
    n_pos = int(np.sum(labels == 1))
    n_neg = int(np.sum(labels == 0))
    if n_pos == 0 or n_neg == 0:
        raise ValueError("a ROC curve needs both classes present")
    order = np.argsort(-scores, kind="mergesort")
    sorted_labels = labels[order]
    sorted_scores = scores[order]
    cumulative_tp = np.cumsum(sorted_labels)
    cumulative_fp = np.cumsum(1 - sorted_labels)
    # Keep only the last index of each run of equal scores: all rows with the
    # same score cross the threshold together.
    last_of_run = np.nonzero(np.diff(sorted_scores))[0]
    keep = np.concatenate([last_of_run, [len(sorted_scores) - 1]])
    fpr = cumulative_fp[keep] / n_neg
    tpr = cumulative_tp[keep] / n_pos
    points = [(0.0, 0.0)]
    points.extend((float(x), float(y)) for x, y in zip(fpr, tpr))
    return tuple(points)
