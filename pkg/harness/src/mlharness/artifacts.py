"""Export an experiment result as a directory of comparison artifacts.

Files written (model names are the snake_case identifiers):

* ``metrics.csv`` — one row per model: accuracy, precision, recall, f1.
* ``confusion_<model>.csv`` — one row of tn, fp, fn, tp counts.
* ``roc_<model>.csv`` — the ROC polyline, one ``fpr,tpr`` row per threshold
  (only for models with a ROC analysis).
* ``cv_accuracy.csv`` — every cross-validation accuracy sample, keyed by
  model, run, and fold.
* ``roc_curves.png`` — all ROC curves overlaid, AUC in the legend.
* ``box_plot.png`` — per-model box plot of the cross-validation accuracies.

CSV content is a pure function of the result object, so re-exporting the
same result (or the result of re-running the same config) produces
byte-identical CSV files.  ``export_artifacts`` returns a manifest mapping
each written file name to the SHA-256 of its bytes.
"""

from __future__ import annotations

import hashlib
from pathlib import Path

import matplotlib

matplotlib.use("Agg")  # headless rendering; must precede pyplot import

import matplotlib.pyplot as plt

from .errors import IoError
from .experiment import DISPLAY_NAMES, ExperimentResult


def _fmt(value: float | None) -> str:
    """Format one CSV cell: 12 significant digits, empty when undefined."""
    if value is None:
        return ""
    return f"{value:.12g}"


def _metrics_csv(result: ExperimentResult) -> str:
    lines = ["model,accuracy,precision,recall,f1"]
    for name, evaluation in result.evaluations.items():
        board = evaluation.scores_summary
        lines.append(
            f"{name},{_fmt(board.accuracy)},{_fmt(board.precision)},"
            f"{_fmt(board.recall)},{_fmt(board.f1)}"
        )
    return "\n".join(lines) + "\n"


def _confusion_csv(result: ExperimentResult, name: str) -> str:
    board = result.evaluations[name].scores_summary
    return f"tn,fp,fn,tp\n{board.tn},{board.fp},{board.fn},{board.tp}\n"


def _roc_csv(result: ExperimentResult, name: str) -> str:
    curve = result.evaluations[name].roc_curve
    assert curve is not None
    lines = ["fpr,tpr"]
    lines.extend(f"{_fmt(fpr)},{_fmt(tpr)}" for fpr, tpr in curve)
    return "\n".join(lines) + "\n"


def _cv_csv(result: ExperimentResult) -> str:
    lines = ["model,run,fold,accuracy"]
    for name, evaluation in result.evaluations.items():
        for run_index, run in enumerate(evaluation.cv_accuracy):
            for fold_index, accuracy in enumerate(run):
                lines.append(f"{name},{run_index},{fold_index},{_fmt(accuracy)}")
    return "\n".join(lines) + "\n"


def _plot_roc(result: ExperimentResult, path: Path) -> None:
    fig, ax = plt.subplots(figsize=(6.4, 4.8), dpi=120)
    for name, evaluation in result.evaluations.items():
        if evaluation.roc_curve is None:
            continue
        xs = [p[0] for p in evaluation.roc_curve]
        ys = [p[1] for p in evaluation.roc_curve]
        label = f"{DISPLAY_NAMES.get(name, name)} (AUC = {evaluation.roc_auc:.3f})"
        ax.plot(xs, ys, linewidth=1.5, label=label)
    ax.plot([0, 1], [0, 1], linestyle="--", linewidth=1.0, color="grey")
    ax.set_xlabel("False positive rate")
    ax.set_ylabel("True positive rate")
    ax.set_title("ROC curves on the held-out test split")
    ax.set_xlim(0.0, 1.0)
    ax.set_ylim(0.0, 1.05)
    ax.legend(loc="lower right", fontsize=8)
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)


def _plot_box(result: ExperimentResult, path: Path) -> None:
    samples = []
    names = []
    for name, evaluation in result.evaluations.items():
        samples.append([a for run in evaluation.cv_accuracy for a in run])
        names.append(DISPLAY_NAMES.get(name, name))
    fig, ax = plt.subplots(figsize=(6.4, 4.8), dpi=120)
    ax.boxplot(samples, tick_labels=names)
    ax.set_ylabel("Cross-validation accuracy")
    ax.set_title(
        f"Accuracy over {len(samples[0])} CV fits per model "
        f"({result.config.cv_runs} runs x {result.config.cv_folds} folds)"
    )
    ax.tick_params(axis="x", labelrotation=20)
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)


def export_artifacts(result: ExperimentResult, out_dir: str | Path) -> dict[str, str]:
    """Write all artifacts into ``out_dir`` and return ``{name: sha256hex}``."""
    out = Path(out_dir)
    try:
        out.mkdir(parents=True, exist_ok=True)

        texts: dict[str, str] = {"metrics.csv": _metrics_csv(result)}
        for name in result.evaluations:
            texts[f"confusion_{name}.csv"] = _confusion_csv(result, name)
        for name, evaluation in result.evaluations.items():
            if evaluation.roc_curve is not None:
                texts[f"roc_{name}.csv"] = _roc_csv(result, name)
        texts["cv_accuracy.csv"] = _cv_csv(result)

        manifest: dict[str, str] = {}
        for file_name, text in texts.items():
            data = text.encode("utf-8")
            (out / file_name).write_bytes(data)
            manifest[file_name] = hashlib.sha256(data).hexdigest()

        for file_name, plotter in (
            ("roc_curves.png", _plot_roc),
            ("box_plot.png", _plot_box),
        ):
            plotter(result, out / file_name)
            manifest[file_name] = hashlib.sha256(
                (out / file_name).read_bytes()
            ).hexdigest()
    except OSError as exc:
        raise IoError(f"cannot write artifacts under {out}: {exc}") from None
    return manifest
