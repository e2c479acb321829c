"""Telemetry CSV ingestion and feature encoding.

The input format is the mission telemetry CSV produced by the ``missionkit``
toolkit (``missionkit gen-data``).  Column names, column order, and the
categorical vocabularies below are a frozen interface: any deviation raises
:class:`~mlharness.errors.SchemaMismatch` rather than being silently coerced.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np
import pandas as pd

from .errors import IoError, SchemaMismatch

#: Exact header of a telemetry CSV file, in order.
EXPECTED_COLUMNS: tuple[str, ...] = (
    "mission_id",
    "phase",
    "GPS_Latitude",
    "GPS_Longitude",
    "GPS_Altitude",
    "Battery_Level",
    "AI_Decision",
    "Electro_Optical_Visibility",
    "Infrared_Visibility",
    "Wind_Speed",
    "Task_Success_Ratio",
    "Mission_Success",
)

#: Mission phases in flight order; the ordinal encoding of ``phase``.
PHASE_VOCAB: tuple[str, ...] = (
    "takeoff",
    "navigate",
    "localize",
    "identify_target",
    "confirm_clear",
    "strike",
    "return_to_base",
)

#: On-board recommendation vocabulary; the ordinal encoding of ``AI_Decision``.
DECISION_VOCAB: tuple[str, ...] = (
    "proceed",
    "hold",
    "adjust",
    "abort_request",
)

#: Column dropped when leak-prone features are excluded: it is emitted by the
#: same on-board logic that drives the outcome being predicted.
LEAKY_COLUMNS: tuple[str, ...] = ("AI_Decision",)

LABEL_COLUMN = "Mission_Success"

#: mission_id is a row-group key, not a measurement; it is never a feature.
_ID_COLUMN = "mission_id"


@dataclass(frozen=True)
class Dataset:
    """An encoded feature matrix with its labels and provenance."""

    path: Path
    feature_names: tuple[str, ...]
    features: np.ndarray  # shape (rows, len(feature_names)), float64
    labels: np.ndarray  # shape (rows,), int64 values in {0, 1}

    @property
    def rows(self) -> int:
        return int(self.labels.shape[0])


def _encode_categorical(
    series: pd.Series, vocab: tuple[str, ...], column: str
) -> np.ndarray:
    codes = series.map({value: float(i) for i, value in enumerate(vocab)})
    if codes.isna().any():
        bad = sorted(set(series[codes.isna()].astype(str)))[:3]
        raise SchemaMismatch(
            f"column {column!r} contains values outside its vocabulary: {bad}"
        )
    return codes.to_numpy(dtype=np.float64)


def load_dataset(path: str | Path, *, drop_leaky_features: bool = False) -> Dataset:
    """Read and encode a telemetry CSV file.

    Categorical columns are ordinal-encoded against their fixed vocabularies;
    every other feature is parsed as a float.  ``mission_id`` is dropped, and
    ``AI_Decision`` too when ``drop_leaky_features`` is set.
    """
    path = Path(path)
    try:
        frame = pd.read_csv(path, dtype=str, keep_default_na=False)
    except OSError as exc:
        raise IoError(f"cannot read dataset {path}: {exc}") from None
    except (pd.errors.ParserError, pd.errors.EmptyDataError) as exc:
        raise SchemaMismatch(f"unparseable CSV {path}: {exc}") from None

    if tuple(frame.columns) != EXPECTED_COLUMNS:
        raise SchemaMismatch(
            f"unexpected header {list(frame.columns)}; "
            f"a telemetry CSV must have exactly the columns {list(EXPECTED_COLUMNS)}"
        )
    if len(frame) == 0:
        raise SchemaMismatch(f"dataset {path} has a header but no rows")

    labels_raw = frame[LABEL_COLUMN]
    if not labels_raw.isin(("0", "1")).all():
        bad = sorted(set(labels_raw[~labels_raw.isin(("0", "1"))].astype(str)))[:3]
        raise SchemaMismatch(f"label column must be 0 or 1, found {bad}")
    labels = labels_raw.astype(np.int64).to_numpy()

    dropped = {_ID_COLUMN, LABEL_COLUMN}
    if drop_leaky_features:
        dropped.update(LEAKY_COLUMNS)
    feature_names = tuple(c for c in EXPECTED_COLUMNS if c not in dropped)

    columns: list[np.ndarray] = []
    for name in feature_names:
        if name == "phase":
            columns.append(_encode_categorical(frame[name], PHASE_VOCAB, name))
        elif name == "AI_Decision":
            columns.append(_encode_categorical(frame[name], DECISION_VOCAB, name))
        else:
            try:
                columns.append(frame[name].astype(np.float64).to_numpy())
            except ValueError as exc:
                raise SchemaMismatch(f"column {name!r} is not numeric: {exc}") from None

    features = np.column_stack(columns)
    if not np.isfinite(features).all():
        raise SchemaMismatch("feature values must be finite numbers")
    return Dataset(
        path=path, feature_names=feature_names, features=features, labels=labels
    )
