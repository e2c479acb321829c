"""Synthetic mission telemetry dataset generator.

Each mission is one pass through the standard seven phases; each phase emits
one labeled CSV row.  Task outcomes are drawn from the two-state chain in
:mod:`missionkit.chain`, and the label Mission_Success is 1 exactly when all
seven phases ended successful, so with noise_level = 0 the label is a
deterministic function of the drawn outcome path.

Feature design notes:

* Task_Success_Ratio is the running fraction of successful phases so far
  (phases 1..i), carried noise-free.  Rows emitted before a mission's first
  failed phase are therefore distributionally identical to rows of fully
  successful missions, which pins the achievable classifier operating point:
  recall 1.0 and a false-positive fraction equal to the expected fraction of
  pre-failure rows among failed missions (about 0.27 under the default
  kernel), independent of noise_level.
* Battery_Level is strictly non-increasing within a mission and stays within
  [0, 100]; visibility features live in [0, 1]; wind speed is >= 0.
* noise_level scales the dispersion of the continuous sensor features only;
  it never touches outcomes, labels, or the success ratio.
* AI_Decision is categorical and outcome-conditioned; abort_request appears
  only on phases that ended incomplete.

The CSV layout (column names, order, and value formatting) is a stable
external interface consumed by downstream model-training tools.
"""

from __future__ import annotations

import hashlib
import math
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path

import numpy as np

from .chain import Outcome, TransitionKernel, sample_outcomes
from .errors import IoError


class Phase(Enum):
    """The standard mission phases, in flight order."""

    TAKEOFF = "takeoff"
    NAVIGATE = "navigate"
    LOCALIZE = "localize"
    IDENTIFY_TARGET = "identify_target"
    CONFIRM_CLEAR = "confirm_clear"
    STRIKE = "strike"
    RETURN_TO_BASE = "return_to_base"


PHASES: tuple[Phase, ...] = tuple(Phase)


class AiDecision(Enum):
    """On-board assistant's per-phase recommendation."""

    PROCEED = "proceed"
    HOLD = "hold"
    ADJUST = "adjust"
    ABORT_REQUEST = "abort_request"


CSV_HEADER = (
    "mission_id,phase,GPS_Latitude,GPS_Longitude,GPS_Altitude,Battery_Level,"
    "AI_Decision,Electro_Optical_Visibility,Infrared_Visibility,Wind_Speed,"
    "Task_Success_Ratio,Mission_Success"
)

# Cruise profile per phase: nominal altitude (m) and battery drain (%).
_PHASE_ALTITUDE = {
    Phase.TAKEOFF: 150.0,
    Phase.NAVIGATE: 2600.0,
    Phase.LOCALIZE: 2400.0,
    Phase.IDENTIFY_TARGET: 2000.0,
    Phase.CONFIRM_CLEAR: 1800.0,
    Phase.STRIKE: 1200.0,
    Phase.RETURN_TO_BASE: 2200.0,
}
_PHASE_DRAIN = {
    Phase.TAKEOFF: 6.0,
    Phase.NAVIGATE: 13.0,
    Phase.LOCALIZE: 8.0,
    Phase.IDENTIFY_TARGET: 9.0,
    Phase.CONFIRM_CLEAR: 7.0,
    Phase.STRIKE: 12.0,
    Phase.RETURN_TO_BASE: 15.0,
}

# Sensor feature centers by phase outcome (successful / incomplete) and the
# dispersion each gets at noise_level = 1.
_EO_MEAN = {Outcome.SUCCESSFUL: 0.74, Outcome.INCOMPLETE: 0.52}
_IR_MEAN = {Outcome.SUCCESSFUL: 0.81, Outcome.INCOMPLETE: 0.58}
_VIS_SIGMA = 0.07
_WIND_MEAN = {Outcome.SUCCESSFUL: 4.2, Outcome.INCOMPLETE: 6.8}
_WIND_SIGMA = 1.4
_ALTITUDE_SIGMA = 40.0
_GPS_JITTER_DEG = 0.02
_DRAIN_EXTRA_INCOMPLETE = 2.5
_DRAIN_SIGMA = 1.2

_AI_TABLE = {
    Outcome.SUCCESSFUL: (
        (0.82, AiDecision.PROCEED),
        (0.94, AiDecision.ADJUST),
        (1.01, AiDecision.HOLD),
    ),
    Outcome.INCOMPLETE: (
        (0.34, AiDecision.HOLD),
        (0.56, AiDecision.ADJUST),
        (1.01, AiDecision.ABORT_REQUEST),
    ),
}


def _default_kernel() -> TransitionKernel:
    return TransitionKernel(tau_ss=0.9, tau_uu=0.6)


@dataclass(frozen=True)
class DatasetSpec:
    """Generation parameters for one dataset.

    positive_fraction is enforced at mission granularity by stratified
    acceptance sampling: the generator keeps drawing missions until the
    per-class quotas over ceil(rows / 7) missions are filled, then truncates
    the flattened rows to exactly `rows`.
    """

    rows: int = 20_000
    seed: int = 0
    positive_fraction: float = 0.505
    noise_level: float = 1.0
    kernel: TransitionKernel = field(default_factory=_default_kernel)
    p1: float = 0.8

    def __post_init__(self):
        if not isinstance(self.kernel, TransitionKernel):
            # accept a plain (tau_ss, tau_uu) pair; validation happens inside
            object.__setattr__(self, "kernel", TransitionKernel(*self.kernel))
        if self.rows < 1:
            raise ValueError(f"rows must be >= 1, got {self.rows!r}")
        if not 0.0 <= self.positive_fraction <= 1.0:
            raise ValueError(f"positive_fraction must lie in [0, 1], got {self.positive_fraction!r}")
        if self.noise_level < 0.0:
            raise ValueError(f"noise_level must be >= 0, got {self.noise_level!r}")
        if not 0.0 <= self.p1 <= 1.0:
            raise ValueError(f"p1 must lie in [0, 1], got {self.p1!r}")


@dataclass(frozen=True)
class TelemetryRecord:
    """One CSV row: one phase of one mission."""

    mission_id: int
    phase: Phase
    gps_latitude: float
    gps_longitude: float
    gps_altitude: float
    battery_level: float
    ai_decision: AiDecision
    electro_optical_visibility: float
    infrared_visibility: float
    wind_speed: float
    task_success_ratio: float
    mission_success: bool

    def __post_init__(self):
        if not 0.0 <= self.battery_level <= 100.0:
            raise ValueError(f"battery_level out of [0, 100]: {self.battery_level!r}")
        for name in ("electro_optical_visibility", "infrared_visibility"):
            value = getattr(self, name)
            if not 0.0 <= value <= 1.0:
                raise ValueError(f"{name} out of [0, 1]: {value!r}")
        if self.wind_speed < 0.0:
            raise ValueError(f"wind_speed must be >= 0: {self.wind_speed!r}")
        if not 0.0 <= self.task_success_ratio <= 1.0:
            raise ValueError(f"task_success_ratio out of [0, 1]: {self.task_success_ratio!r}")
        if self.gps_altitude < 0.0:
            raise ValueError(f"gps_altitude must be >= 0: {self.gps_altitude!r}")


@dataclass(frozen=True)
class DatasetSummary:
    """What generate_dataset wrote."""

    rows_written: int
    positive_rows: int
    file_sha256: str


class PhaseFeatureSource:
    """Stateful per-mission feature synthesizer.

    Tracks the battery charge, the running success count, and the mission's
    GPS track so that consecutive calls produce physically coherent rows.
    Shared by the dataset generator and the mission simulator's telemetry
    ledger entries.
    """

    def __init__(self, rng: np.random.Generator, noise_level: float):
        self._rng = rng
        self._noise = noise_level
        self._battery = 100.0
        self._successes = 0
        self._phase_count = 0
        self._lat = 31.0 + 6.0 * rng.random()
        self._lon = 42.0 + 6.0 * rng.random()

    def _pick_ai_decision(self, outcome: Outcome) -> AiDecision:
        draw = self._rng.random()
        for cutoff, decision in _AI_TABLE[outcome]:
            if draw < cutoff:
                return decision
        raise AssertionError("unreachable")

    def next_record(self, mission_id: int, phase: Phase, outcome: Outcome) -> dict:
        """Synthesize the feature fields for the next phase of the mission."""
        rng = self._rng
        noise = self._noise
        self._phase_count += 1
        if outcome is Outcome.SUCCESSFUL:
            self._successes += 1
        ratio = self._successes / self._phase_count

        drift = 0.015 * self._phase_count
        lat = self._lat + drift + rng.normal(0.0, _GPS_JITTER_DEG) * noise
        lon = self._lon + drift + rng.normal(0.0, _GPS_JITTER_DEG) * noise
        altitude = max(
            0.0, _PHASE_ALTITUDE[phase] + rng.normal(0.0, _ALTITUDE_SIGMA) * noise
        )

        drain = _PHASE_DRAIN[phase]
        if outcome is Outcome.INCOMPLETE:
            drain += _DRAIN_EXTRA_INCOMPLETE
        drain += abs(rng.normal(0.0, _DRAIN_SIGMA)) * noise
        self._battery = max(0.0, self._battery - drain)

        eo = float(np.clip(_EO_MEAN[outcome] + rng.normal(0.0, _VIS_SIGMA) * noise, 0.0, 1.0))
        ir = float(np.clip(_IR_MEAN[outcome] + rng.normal(0.0, _VIS_SIGMA) * noise, 0.0, 1.0))
        wind = max(0.0, _WIND_MEAN[outcome] + rng.normal(0.0, _WIND_SIGMA) * noise)

        return {
            "mission_id": mission_id,
            "phase": phase,
            "gps_latitude": lat,
            "gps_longitude": lon,
            "gps_altitude": altitude,
            "battery_level": self._battery,
            "ai_decision": self._pick_ai_decision(outcome),
            "electro_optical_visibility": eo,
            "infrared_visibility": ir,
            "wind_speed": wind,
            "task_success_ratio": ratio,
        }


def generate_mission_trace(
    spec: DatasetSpec, mission_id: int, rng: np.random.Generator
) -> list[TelemetryRecord]:
    """Draw one mission: seven outcome-driven rows sharing one label."""
    outcomes = sample_outcomes(spec.kernel, spec.p1, len(PHASES), rng)
    label = all(o is Outcome.SUCCESSFUL for o in outcomes)
    source = PhaseFeatureSource(rng, spec.noise_level)
    records = []
    for phase, outcome in zip(PHASES, outcomes):
        fields = source.next_record(mission_id, phase, outcome)
        records.append(TelemetryRecord(mission_success=label, **fields))
    return records


def format_row(record: TelemetryRecord) -> str:
    """Fixed-precision CSV rendering of one record."""
    return (
        f"{record.mission_id},{record.phase.value},"
        f"{record.gps_latitude:.6f},{record.gps_longitude:.6f},"
        f"{record.gps_altitude:.1f},{record.battery_level:.2f},"
        f"{record.ai_decision.value},"
        f"{record.electro_optical_visibility:.4f},"
        f"{record.infrared_visibility:.4f},{record.wind_speed:.2f},"
        f"{record.task_success_ratio:.6f},{int(record.mission_success)}"
    )


def generate_records(spec: DatasetSpec) -> list[TelemetryRecord]:
    """All rows of the dataset, in order, before any file is written.

    Missions are drawn with acceptance sampling against per-class quotas:
    pos_quota = round(missions * positive_fraction) fully successful
    missions, the rest failed ones.  Rejected draws still consume generator
    state, so the output is a pure function of the ``DatasetSpec`` argument.
    """
    missions = math.ceil(spec.rows / len(PHASES))
    pos_quota = round(missions * spec.positive_fraction)
    neg_quota = missions - pos_quota
    rng = np.random.default_rng(spec.seed)
    accepted: list[list[TelemetryRecord]] = []
    pos_taken = 0
    neg_taken = 0
    attempts = 0
    max_attempts = 1000 + 200 * missions
    while pos_taken + neg_taken < missions:
        attempts += 1
        if attempts > max_attempts:
            raise RuntimeError(
                f"positive_fraction {spec.positive_fraction} not reachable for"
                f" this kernel after {max_attempts} draws"
            )
        trace = generate_mission_trace(spec, mission_id=len(accepted), rng=rng)
        positive = trace[0].mission_success
        if positive and pos_taken < pos_quota:
            pos_taken += 1
        elif not positive and neg_taken < neg_quota:
            neg_taken += 1
        else:
            continue
        accepted.append(trace)
    rows = [record for trace in accepted for record in trace]
    return rows[: spec.rows]


def generate_dataset(spec: DatasetSpec, output_path) -> DatasetSummary:
    """Generate the dataset and write it as CSV; returns a content digest.

    Equal specs produce byte-identical files, so file_sha256 doubles as a
    determinism check.
    """
    records = generate_records(spec)
    lines = [CSV_HEADER]
    lines.extend(format_row(record) for record in records)
    data = ("\n".join(lines) + "\n").encode("utf-8")
    try:
        Path(output_path).write_bytes(data)
    except OSError as exc:
        raise IoError(f"cannot write dataset to {output_path}: {exc}") from None
    return DatasetSummary(
        rows_written=len(records),
        positive_rows=sum(1 for record in records if record.mission_success),
        file_sha256=hashlib.sha256(data).hexdigest(),
    )
