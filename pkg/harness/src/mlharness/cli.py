"""Command line runner: train the suite on a dataset and export artifacts."""

from __future__ import annotations

import argparse
import sys

from .artifacts import export_artifacts
from .errors import HarnessError
from .experiment import ExperimentConfig, run_experiment


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mlharness",
        description=(
            "Train the benchmark classifier suite on a mission telemetry CSV "
            "and export metric tables, ROC data, and plots."
        ),
    )
    parser.add_argument("--data", required=True, help="telemetry CSV file")
    parser.add_argument("--out", required=True, help="artifact output directory")
    parser.add_argument("--seed", type=int, default=0, help="master seed (default 0)")
    parser.add_argument(
        "--train-fraction",
        type=float,
        default=0.8,
        help="fraction of rows used for training (default 0.8)",
    )
    parser.add_argument("--rf-trees", type=int, default=500, help="forest size")
    parser.add_argument("--rf-max-depth", type=int, default=5, help="tree depth cap")
    parser.add_argument("--cv-folds", type=int, default=5, help="folds per CV run")
    parser.add_argument("--cv-runs", type=int, default=5, help="repeated CV runs")
    parser.add_argument(
        "--drop-leaky-features",
        action="store_true",
        help="exclude the AI_Decision column from the feature set",
    )
    parser.add_argument(
        "--no-cross-check",
        action="store_true",
        help="skip verifying metrics against the missionkit reference CLI",
    )
    return parser


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    config = ExperimentConfig(
        dataset_path=args.data,
        train_fraction=args.train_fraction,
        rf_trees=args.rf_trees,
        rf_max_depth=args.rf_max_depth,
        cv_folds=args.cv_folds,
        cv_runs=args.cv_runs,
        seed=args.seed,
        drop_leaky_features=args.drop_leaky_features,
        cross_check=not args.no_cross_check,
    )
    try:
        result = run_experiment(config)
        manifest = export_artifacts(result, args.out)
    except (HarnessError, ValueError) as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return 1

    def fmt(value: float | None) -> str:
        return "undefined" if value is None else f"{value:.4f}"

    print(f"rows: train={result.train_rows} test={result.test_rows}")
    for name, evaluation in result.evaluations.items():
        board = evaluation.scores_summary
        print(
            f"{name}: accuracy={fmt(board.accuracy)} precision={fmt(board.precision)} "
            f"recall={fmt(board.recall)} f1={fmt(board.f1)} "
            f"roc_auc={fmt(evaluation.roc_auc)}"
        )
    print(f"cross_checked: {result.cross_checked}")
    print(f"artifacts: {len(manifest)} files in {args.out}")
    return 0


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
