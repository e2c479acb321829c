"""Shared fixtures: a small generated dataset and one small experiment run.

Datasets are produced by invoking the mission toolkit CLI in a subprocess —
the same interface boundary production users of this harness go through.
"""

from __future__ import annotations

import subprocess
import sys
from pathlib import Path

import pytest

from mlharness import ExperimentConfig, ExperimentResult, run_experiment


def generate_dataset(path: Path, *, rows: int, seed: int, **flags: float) -> None:
    argv = [
        sys.executable,
        "-m",
        "missionkit",
        "gen-data",
        "--rows",
        str(rows),
        "--seed",
        str(seed),
        "--out",
        str(path),
    ]
    for flag, value in flags.items():
        argv.extend([f"--{flag.replace('_', '-')}", str(value)])
    subprocess.run(argv, check=True, capture_output=True, text=True)


@pytest.fixture(scope="session")
def tiny_dataset(tmp_path_factory: pytest.TempPathFactory) -> Path:
    """200 missions (1400 rows), enough signal for stable small-scale fits."""
    path = tmp_path_factory.mktemp("data") / "tiny.csv"
    generate_dataset(path, rows=1400, seed=3)
    return path


def tiny_config(tiny_dataset: Path, **overrides) -> ExperimentConfig:
    defaults = dict(
        dataset_path=tiny_dataset,
        rf_trees=25,
        cv_runs=2,
        cv_folds=3,
        seed=1,
        cross_check=False,
    )
    defaults.update(overrides)
    return ExperimentConfig(**defaults)


@pytest.fixture(scope="session")
def tiny_result(tiny_dataset: Path) -> ExperimentResult:
    """One small experiment, cross-checked against the reference CLI."""
    return run_experiment(tiny_config(tiny_dataset, cross_check=True))
