"""Verify harness scoreboards against the reference metrics CLI.

The mission toolkit ships a ``metrics`` subcommand that computes the same
classification metrics from a ``label,prediction[,score]`` CSV.  That
implementation is the contract for what the numbers mean, so after every
experiment the harness exports each model's predictions, runs the reference
CLI on them in a subprocess, and demands agreement to 1e-9 (counts exactly).
Because the two implementations share no code, a bug on either side of a
definition shows up as a :class:`~mlharness.errors.CrossCheckMismatch`.
"""

from __future__ import annotations

import csv
import io
import subprocess
import sys
import tempfile
from pathlib import Path
from typing import TYPE_CHECKING

from .errors import CrossCheckMismatch

if TYPE_CHECKING:  # pragma: no cover - import cycle guard for type hints only
    from .experiment import ExperimentResult, ModelEvaluation

#: Maximum allowed |harness - reference| for any metric value.
TOLERANCE = 1e-9

_COUNT_FIELDS = ("tn", "fp", "fn", "tp")
_METRIC_FIELDS = ("accuracy", "precision", "recall", "f1", "roc_auc")


def reference_command(override: tuple[str, ...] | None = None) -> tuple[str, ...]:
    """The argv prefix that runs the reference CLI."""
    if override is not None:
        return tuple(override)
    return (sys.executable, "-m", "missionkit")


def write_prediction_file(
    path: Path,
    labels: tuple[int, ...],
    predictions: tuple[int, ...],
    scores: tuple[float, ...] | None,
) -> None:
    """Write a prediction CSV in the layout the reference CLI reads.

    Scores are written with ``repr`` so the float round-trips exactly and the
    reference computes its ranking from bit-identical values.
    """
    with path.open("w", encoding="utf-8", newline="") as handle:
        if scores is None:
            handle.write("label,prediction\n")
            for lab, pred in zip(labels, predictions):
                handle.write(f"{lab},{pred}\n")
        else:
            handle.write("label,prediction,score\n")
            for lab, pred, score in zip(labels, predictions, scores):
                handle.write(f"{lab},{pred},{score!r}\n")


def reference_metrics(
    pred_file: Path, cli: tuple[str, ...] | None = None
) -> dict[str, float | None]:
    """Run the reference CLI on a prediction file and parse its CSV report."""
    argv = [*reference_command(cli), "--format", "csv", "metrics", "--pred", str(pred_file)]
    proc = subprocess.run(argv, capture_output=True, text=True)
    if proc.returncode != 0:
        raise CrossCheckMismatch(
            f"reference CLI failed (exit {proc.returncode}): "
            f"{proc.stderr.strip() or proc.stdout.strip()}"
        )
    rows = list(csv.DictReader(io.StringIO(proc.stdout)))
    if len(rows) != 1:
        raise CrossCheckMismatch(
            f"expected one CSV report row from the reference CLI, got {len(rows)}"
        )
    report: dict[str, float | None] = {}
    for key, cell in rows[0].items():
        report[key] = None if cell == "" else float(cell)
    return report


def _mismatch(name: str, field: str, ours, theirs) -> CrossCheckMismatch:
    return CrossCheckMismatch(
        f"{name}: harness {field}={ours!r} but the reference CLI says {theirs!r}"
    )


def verify_evaluation(
    evaluation: "ModelEvaluation",
    labels: tuple[int, ...],
    cli: tuple[str, ...] | None = None,
    workdir: Path | None = None,
) -> None:
    """Check one model's scoreboard against the reference CLI."""

    def check(report: dict[str, float | None]) -> None:
        board = evaluation.scores_summary
        ours_by_field = {
            "accuracy": board.accuracy,
            "precision": board.precision,
            "recall": board.recall,
            "f1": board.f1,
            "roc_auc": evaluation.roc_auc,
            "tn": board.tn,
            "fp": board.fp,
            "fn": board.fn,
            "tp": board.tp,
        }
        for field in _COUNT_FIELDS:
            theirs = report.get(field)
            if theirs is None or int(theirs) != ours_by_field[field]:
                raise _mismatch(evaluation.name, field, ours_by_field[field], theirs)
        for field in _METRIC_FIELDS:
            ours = ours_by_field[field]
            theirs = report.get(field)
            if (ours is None) != (theirs is None):
                raise _mismatch(evaluation.name, field, ours, theirs)
            if ours is not None and abs(ours - theirs) > TOLERANCE:
                raise _mismatch(evaluation.name, field, ours, theirs)

    if workdir is None:
        with tempfile.TemporaryDirectory(prefix="mlharness-xcheck-") as tmp:
            pred = Path(tmp) / f"pred_{evaluation.name}.csv"
            write_prediction_file(
                pred, labels, evaluation.predictions, evaluation.ranking_scores
            )
            check(reference_metrics(pred, cli))
    else:
        pred = workdir / f"pred_{evaluation.name}.csv"
        write_prediction_file(
            pred, labels, evaluation.predictions, evaluation.ranking_scores
        )
        check(reference_metrics(pred, cli))


def verify_against_reference(result: "ExperimentResult") -> None:
    """Check every model in an experiment result; raise on first disagreement."""
    for evaluation in result.evaluations.values():
        verify_evaluation(
            evaluation, result.test_labels, cli=result.config.reference_cli
        )
