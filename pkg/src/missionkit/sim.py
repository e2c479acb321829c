"""Deterministic single-UAV mission simulator.

Executes a scenario task by task.  Within each task the order is fixed:
scheduled events apply first, then the task outcome is sampled from the
chain, then ledger entries are written (telemetry, outcome), then the
contract engine evaluates and its decision is recorded and acted on.  All
randomness flows from one seeded generator, so a scenario is a pure function
from (spec, seed) to (report, ledger bytes).

Abort protocol: an AbortRequest verdict sends a request to mission control
over an up channel; mission control answers (grant or deny) after a
configurable latency in tasks, on the same channel; the answer binds only
once confirmed on the other channel.  A granted, confirmed abort ends the
mission as Aborted(reason).  A denied abort is logged and the mission
continues.  An unconfirmable answer (the other channel is down) falls back
to return-to-base.  A direct MC2 abort order is handled the same way minus
the request: confirm on the other channel, then abort.

Replay rebuilds the full mission report purely from a verified ledger file;
any tampering surfaces as TamperedLedger before a single entry is trusted.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from enum import Enum
from pathlib import Path

import numpy as np

from .chain import ChainQuery, Outcome, TransitionKernel
from .contract import (
    AbortReason,
    Channel,
    Confirmation,
    ContractSpec,
    Decision,
    MissionState,
    Verdict,
    confirm_abort,
    evaluate,
    project_task_success,
)
from .errors import InvalidScenario, MalformedFile, TamperedLedger
from .ledger import (
    PROVENANCE_CONTRACT_ENGINE,
    PROVENANCE_MC2_COMMAND,
    PROVENANCE_UAV_ACTION,
    ChainStatus,
    Ledger,
    sensor_provenance,
)
from .telemetry import PHASES, DatasetSpec, Phase, PhaseFeatureSource

_TASK_TIME_MS = 1000

PROVENANCE_TELEMETRY = sensor_provenance("telemetry")
PROVENANCE_COMMS = sensor_provenance("comms_monitor")
PROVENANCE_EO_IR = sensor_provenance("eo_ir")

# Mission outcome reason for an abort ordered directly by mission control
# (no contract rule involved, so no AbortReason value applies).
MC2_ORDER_REASON = "mc2_order"


class EventKind(Enum):
    COMMS_LOSS = "comms_loss"
    COMMS_RESTORE = "comms_restore"
    CIVILIANS_DETECTED = "civilians_detected"
    CIVILIANS_CLEARED = "civilians_cleared"
    MC2_ABORT_ORDER = "mc2_abort_order"


_CHANNEL_EVENTS = {EventKind.COMMS_LOSS, EventKind.COMMS_RESTORE, EventKind.MC2_ABORT_ORDER}


class Mc2Response(Enum):
    GRANT = "grant"
    DENY = "deny"


class OutcomeKind(Enum):
    COMPLETED = "completed"
    INCOMPLETE = "incomplete"
    ABORTED = "aborted"
    RETURNED_TO_BASE = "returned_to_base"


@dataclass(frozen=True)
class ScenarioEvent:
    """External happening injected at the start of a task."""

    at_task: int
    kind: EventKind
    channel: Channel | None = None

    def __post_init__(self):
        if self.at_task < 1:
            raise InvalidScenario(f"event at_task must be >= 1, got {self.at_task!r}")
        if self.kind in _CHANNEL_EVENTS and self.channel is None:
            raise InvalidScenario(f"{self.kind.value} event needs a channel")
        if self.kind not in _CHANNEL_EVENTS and self.channel is not None:
            raise InvalidScenario(f"{self.kind.value} event takes no channel")


@dataclass(frozen=True)
class MissionScenario:
    """Everything needed to run one mission deterministically."""

    contract: ContractSpec
    phases: tuple[Phase, ...]
    seed: int
    events: tuple[ScenarioEvent, ...] = ()
    mc2_response: Mc2Response = Mc2Response.GRANT
    mc2_latency_tasks: int = 0
    noise_level: float = 1.0

    def __post_init__(self):
        if not self.phases:
            raise InvalidScenario("phases must be non-empty")
        if self.contract.task_count != len(self.phases):
            raise InvalidScenario(
                f"contract.task_count {self.contract.task_count} does not match"
                f" {len(self.phases)} phases"
            )
        for event in self.events:
            if event.at_task > len(self.phases):
                raise InvalidScenario(
                    f"event at_task {event.at_task} beyond final task {len(self.phases)}"
                )
        if self.mc2_latency_tasks < 0:
            raise InvalidScenario("mc2_latency_tasks must be >= 0")
        if self.noise_level < 0.0:
            raise InvalidScenario("noise_level must be >= 0")


@dataclass(frozen=True)
class TaskRecord:
    """One executed task: sampled outcome plus the contract's view of it."""

    task: int
    phase: Phase
    outcome: Outcome
    min_projection: float | None
    min_projection_task: int | None
    decision: Decision


@dataclass(frozen=True)
class MissionOutcome:
    kind: OutcomeKind
    reason: str | None = None


@dataclass(frozen=True)
class MissionReport:
    outcome: MissionOutcome
    per_task: tuple[TaskRecord, ...]
    ledger_path: str
    ledger_status: ChainStatus


def contract_for_phases(
    phases: tuple[Phase, ...],
    success_threshold: float,
    kernel: TransitionKernel,
    p1: float,
    civilian_rule_enabled: bool = True,
    comms_loss_rule_enabled: bool = True,
    unconditional_projection: bool = False,
    target_identify_task: int | None = None,
    strike_task: int | None = None,
) -> ContractSpec:
    """Build a ContractSpec whose special task indices follow the phase list.

    When not given explicitly, the civilian rule anchors at the first
    identify_target phase and the strike verdict at the first strike phase
    (each None when the phase does not occur).
    """
    if target_identify_task is None and Phase.IDENTIFY_TARGET in phases:
        target_identify_task = phases.index(Phase.IDENTIFY_TARGET) + 1
    if strike_task is None and Phase.STRIKE in phases:
        strike_task = phases.index(Phase.STRIKE) + 1
    return ContractSpec(
        success_threshold=success_threshold,
        kernel=kernel,
        p1=p1,
        task_count=len(phases),
        civilian_rule_enabled=civilian_rule_enabled,
        comms_loss_rule_enabled=comms_loss_rule_enabled,
        target_identify_task=target_identify_task,
        strike_task=strike_task,
        unconditional_projection=unconditional_projection,
    )


def load_scenario(path) -> MissionScenario:
    """Parse a scenario JSON file.

    Structural problems raise MalformedFile; semantically impossible
    scenarios raise InvalidScenario.
    """
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
    except (json.JSONDecodeError, UnicodeDecodeError) as exc:
        raise MalformedFile(f"scenario is not valid JSON: {exc}") from None
    if not isinstance(data, dict):
        raise MalformedFile("scenario must be a JSON object")
    if data.get("version") != 1:
        raise MalformedFile(f"unsupported scenario version {data.get('version')!r}")

    def _enum(cls, raw, what):
        try:
            return cls(raw)
        except ValueError:
            raise MalformedFile(f"unknown {what} {raw!r}") from None

    try:
        contract_raw = data["contract"]
        seed = data["seed"]
        phases = tuple(
            _enum(Phase, name, "phase") for name in data.get("phases", [p.value for p in PHASES])
        )
        kernel = TransitionKernel(contract_raw["tau_ss"], contract_raw["tau_uu"])
        contract = contract_for_phases(
            phases,
            success_threshold=contract_raw["success_threshold"],
            kernel=kernel,
            p1=contract_raw["p1"],
            civilian_rule_enabled=contract_raw.get("civilian_rule_enabled", True),
            comms_loss_rule_enabled=contract_raw.get("comms_loss_rule_enabled", True),
            unconditional_projection=contract_raw.get("unconditional_projection", False),
            target_identify_task=contract_raw.get("target_identify_task"),
            strike_task=contract_raw.get("strike_task"),
        )
        events = []
        for raw in data.get("events", []):
            channel = raw.get("channel")
            events.append(
                ScenarioEvent(
                    at_task=raw["at_task"],
                    kind=_enum(EventKind, raw["kind"], "event kind"),
                    channel=_enum(Channel, channel, "channel") if channel is not None else None,
                )
            )
        mc2 = data.get("mc2", {})
        scenario = MissionScenario(
            contract=contract,
            phases=phases,
            seed=seed,
            events=tuple(events),
            mc2_response=_enum(Mc2Response, mc2.get("abort_response", "grant"), "mc2 response"),
            mc2_latency_tasks=mc2.get("latency_tasks", 0),
            noise_level=data.get("noise_level", 1.0),
        )
    except KeyError as exc:
        raise MalformedFile(f"scenario missing key {exc}") from None
    except TypeError as exc:
        raise MalformedFile(f"scenario field has wrong type: {exc}") from None
    return scenario


class _MissionRun:
    """Mutable execution state for one mission."""

    def __init__(self, scenario: MissionScenario, ledger: Ledger):
        self.scenario = scenario
        self.ledger = ledger
        self.rng = np.random.default_rng(scenario.seed)
        self.features = PhaseFeatureSource(self.rng, scenario.noise_level)
        self.comms_up = {Channel.PRIMARY: True, Channel.SECONDARY: True}
        self.civilians = False
        self.last_outcome: Outcome | None = None
        self.per_task: list[TaskRecord] = []
        self.final: MissionOutcome | None = None
        # pending abort request: (reason, order channel, task the answer lands on)
        self.pending: tuple[AbortReason, Channel, int] | None = None
        self._ts = 0

    def log(self, provenance: str, body: dict) -> None:
        payload = json.dumps(body, separators=(",", ":")).encode("utf-8")
        self.ledger.append(provenance, self._ts, payload)
        self._ts += 1

    def state(self, task: int) -> MissionState:
        return MissionState(
            current_task_index=task,
            last_outcome=self.last_outcome,
            civilians_detected=self.civilians,
            comms_primary_up=self.comms_up[Channel.PRIMARY],
            comms_secondary_up=self.comms_up[Channel.SECONDARY],
        )

    def finish(self, task: int, kind: OutcomeKind, reason: str | None) -> None:
        self.final = MissionOutcome(kind, reason)
        self.log(
            PROVENANCE_CONTRACT_ENGINE,
            {"event": "mission_outcome", "task": task, "kind": kind.value, "reason": reason},
        )

    def apply_event(self, event: ScenarioEvent) -> None:
        task = event.at_task
        if event.kind is EventKind.COMMS_LOSS:
            self.comms_up[event.channel] = False
            self.log(
                PROVENANCE_COMMS,
                {"event": "comms_loss", "task": task, "channel": event.channel.value},
            )
        elif event.kind is EventKind.COMMS_RESTORE:
            self.comms_up[event.channel] = True
            self.log(
                PROVENANCE_COMMS,
                {"event": "comms_restore", "task": task, "channel": event.channel.value},
            )
        elif event.kind is EventKind.CIVILIANS_DETECTED:
            self.civilians = True
            self.log(PROVENANCE_EO_IR, {"event": "civilians_detected", "task": task})
        elif event.kind is EventKind.CIVILIANS_CLEARED:
            self.civilians = False
            self.log(PROVENANCE_EO_IR, {"event": "civilians_cleared", "task": task})
        elif event.kind is EventKind.MC2_ABORT_ORDER:
            self.log(
                PROVENANCE_MC2_COMMAND,
                {"event": "mc2_abort_order", "task": task, "channel": event.channel.value},
            )
            result = confirm_abort(self.state(max(task, 1)), event.channel)
            self.log(
                PROVENANCE_UAV_ACTION,
                {
                    "event": "abort_confirmation",
                    "task": task,
                    "order_channel": event.channel.value,
                    "via_channel": event.channel.other().value,
                    "result": result.value,
                },
            )
            if result is Confirmation.CONFIRMED:
                self.finish(task, OutcomeKind.ABORTED, MC2_ORDER_REASON)
            else:
                self.finish(task, OutcomeKind.RETURNED_TO_BASE, AbortReason.COMMS_LOST.value)

    def send_abort_request(self, task: int, reason: AbortReason) -> None:
        if self.pending is not None:
            return
        if self.comms_up[Channel.PRIMARY]:
            channel = Channel.PRIMARY
        elif self.comms_up[Channel.SECONDARY]:
            channel = Channel.SECONDARY
        else:
            # No channel to even place the request on: give up and head home.
            self.finish(task, OutcomeKind.RETURNED_TO_BASE, AbortReason.COMMS_LOST.value)
            return
        self.log(
            PROVENANCE_UAV_ACTION,
            {
                "event": "abort_request",
                "task": task,
                "reason": reason.value,
                "channel": channel.value,
            },
        )
        self.pending = (reason, channel, task + self.scenario.mc2_latency_tasks)

    def resolve_mc2_response(self, task: int) -> None:
        if self.pending is None or task < self.pending[2]:
            return
        reason, order_channel, _ = self.pending
        response = self.scenario.mc2_response
        self.log(
            PROVENANCE_MC2_COMMAND,
            {
                "event": "abort_response",
                "task": task,
                "response": response.value,
                "channel": order_channel.value,
            },
        )
        result = confirm_abort(self.state(task), order_channel)
        self.log(
            PROVENANCE_UAV_ACTION,
            {
                "event": "abort_confirmation",
                "task": task,
                "order_channel": order_channel.value,
                "via_channel": order_channel.other().value,
                "result": result.value,
            },
        )
        if result is Confirmation.UNCONFIRMABLE:
            self.finish(task, OutcomeKind.RETURNED_TO_BASE, AbortReason.COMMS_LOST.value)
        elif response is Mc2Response.GRANT:
            self.finish(task, OutcomeKind.ABORTED, reason.value)
        else:
            self.log(PROVENANCE_UAV_ACTION, {"event": "abort_denied_continue", "task": task})
            self.pending = None

    def run(self) -> None:
        scenario = self.scenario
        contract = scenario.contract
        for task, phase in enumerate(scenario.phases, start=1):
            self._ts = (task - 1) * _TASK_TIME_MS
            for event in scenario.events:
                if event.at_task == task and self.final is None:
                    self.apply_event(event)
            if self.final is not None:
                break

            p_success = (
                contract.p1
                if self.last_outcome is None
                else (
                    contract.kernel.tau_ss
                    if self.last_outcome is Outcome.SUCCESSFUL
                    else contract.kernel.mu
                )
            )
            outcome = (
                Outcome.SUCCESSFUL if self.rng.random() < p_success else Outcome.INCOMPLETE
            )
            self.last_outcome = outcome

            fields = self.features.next_record(0, phase, outcome)
            self.log(
                PROVENANCE_TELEMETRY,
                {
                    "event": "telemetry",
                    "task": task,
                    "phase": phase.value,
                    "gps_latitude": fields["gps_latitude"],
                    "gps_longitude": fields["gps_longitude"],
                    "gps_altitude": fields["gps_altitude"],
                    "battery_level": fields["battery_level"],
                    "ai_decision": fields["ai_decision"].value,
                    "electro_optical_visibility": fields["electro_optical_visibility"],
                    "infrared_visibility": fields["infrared_visibility"],
                    "wind_speed": fields["wind_speed"],
                    "task_success_ratio": fields["task_success_ratio"],
                },
            )
            self.log(
                PROVENANCE_UAV_ACTION,
                {
                    "event": "task_outcome",
                    "task": task,
                    "phase": phase.value,
                    "outcome": outcome.value,
                },
            )

            state = self.state(task)
            decision = evaluate(contract, state)
            worst: tuple[int, float] | None = None
            for future in range(task + 1, contract.task_count + 1):
                value = project_task_success(contract, state, future)
                if worst is None or value < worst[1]:
                    worst = (future, value)
            self.log(
                PROVENANCE_CONTRACT_ENGINE,
                {
                    "event": "decision",
                    "task": task,
                    "verdict": decision.verdict.value,
                    "reason": decision.reason.value if decision.reason else None,
                    "reason_task": decision.task,
                    "reason_value": decision.value,
                    "min_projection": None if worst is None else worst[1],
                    "min_projection_task": None if worst is None else worst[0],
                },
            )
            self.per_task.append(
                TaskRecord(
                    task=task,
                    phase=phase,
                    outcome=outcome,
                    min_projection=None if worst is None else worst[1],
                    min_projection_task=None if worst is None else worst[0],
                    decision=decision,
                )
            )

            if decision.verdict is Verdict.RETURN_TO_BASE:
                self.finish(task, OutcomeKind.RETURNED_TO_BASE, decision.reason.value)
            elif decision.verdict is Verdict.ABORT_REQUEST:
                self.send_abort_request(task, decision.reason)
            if self.final is None:
                self.resolve_mc2_response(task)
            if self.final is not None:
                break

        if self.final is None:
            if self.last_outcome is Outcome.SUCCESSFUL:
                self.final = MissionOutcome(OutcomeKind.COMPLETED, None)
            else:
                self.final = MissionOutcome(OutcomeKind.INCOMPLETE, None)
            self.log(
                PROVENANCE_CONTRACT_ENGINE,
                {
                    "event": "mission_outcome",
                    "task": len(scenario.phases),
                    "kind": self.final.kind.value,
                    "reason": self.final.reason,
                },
            )
        self.ledger.seal()


def _execute(scenario: MissionScenario, ledger: Ledger) -> tuple[MissionOutcome, tuple[TaskRecord, ...]]:
    run = _MissionRun(scenario, ledger)
    run.run()
    return run.final, tuple(run.per_task)


def run_mission(scenario: MissionScenario, ledger_out) -> MissionReport:
    """Execute the scenario, write the sealed ledger, and report.

    Equal (scenario, seed) pairs produce byte-identical ledger files and
    equal reports apart from the output path.
    """
    ledger = Ledger(mission_epoch_ms=0)
    outcome, per_task = _execute(scenario, ledger)
    ledger.export(ledger_out)
    return MissionReport(
        outcome=outcome,
        per_task=per_task,
        ledger_path=str(ledger_out),
        ledger_status=ledger.verify_chain(),
    )


def build_decoy_ledger(decoy_seed: int, template: DatasetSpec | None, epoch_ms: int) -> Ledger:
    """A sealed ledger of a benign fake mission, deterministic in the seed.

    The fake mission flies the standard phases with abort rules that cannot
    fire (threshold 0, no scripted events), so the resulting file is a
    plausible, verifiable recording.
    """
    spec = template if template is not None else DatasetSpec()
    contract = contract_for_phases(
        PHASES, success_threshold=0.0, kernel=spec.kernel, p1=spec.p1
    )
    scenario = MissionScenario(
        contract=contract,
        phases=PHASES,
        seed=decoy_seed,
        noise_level=spec.noise_level,
    )
    ledger = Ledger(mission_epoch_ms=epoch_ms)
    _execute(scenario, ledger)
    return ledger


def _record_from_payloads(outcome_body: dict, decision_body: dict) -> TaskRecord:
    decision = Decision(
        verdict=Verdict(decision_body["verdict"]),
        reason=AbortReason(decision_body["reason"]) if decision_body["reason"] else None,
        task=decision_body["reason_task"],
        value=decision_body["reason_value"],
    )
    return TaskRecord(
        task=outcome_body["task"],
        phase=Phase(outcome_body["phase"]),
        outcome=Outcome(outcome_body["outcome"]),
        min_projection=decision_body["min_projection"],
        min_projection_task=decision_body["min_projection_task"],
        decision=decision,
    )


def replay(ledger_path) -> MissionReport:
    """Reconstruct the mission report from a ledger file.

    Refuses tampered ledgers (TamperedLedger, carrying the break index).
    Raises MalformedFile if the verified chain does not contain a coherent
    mission transcript.
    """
    ledger, status = Ledger.load(ledger_path)
    if not status.valid:
        raise TamperedLedger(status.broken_at)

    outcome_bodies: dict[int, dict] = {}
    decision_bodies: dict[int, dict] = {}
    final: MissionOutcome | None = None
    for entry in ledger.entries:
        if entry.payload == b"SEAL":
            continue
        try:
            body = json.loads(entry.payload.decode("utf-8"))
        except (UnicodeDecodeError, json.JSONDecodeError):
            raise MalformedFile(
                f"entry {entry.seq}: payload is not a mission event"
            ) from None
        event = body.get("event")
        try:
            if event == "task_outcome":
                outcome_bodies[int(body["task"])] = body
            elif event == "decision":
                decision_bodies[int(body["task"])] = body
            elif event == "mission_outcome":
                final = MissionOutcome(OutcomeKind(body["kind"]), body["reason"])
        except (KeyError, ValueError, TypeError) as exc:
            raise MalformedFile(
                f"entry {entry.seq}: incoherent mission event: {exc}"
            ) from None
    if final is None:
        raise MalformedFile("ledger holds no mission outcome entry")
    if sorted(outcome_bodies) != sorted(decision_bodies) or sorted(outcome_bodies) != list(
        range(1, len(outcome_bodies) + 1)
    ):
        raise MalformedFile("ledger holds an incoherent task transcript")
    try:
        per_task = tuple(
            _record_from_payloads(outcome_bodies[task], decision_bodies[task])
            for task in sorted(outcome_bodies)
        )
    except (KeyError, ValueError) as exc:
        raise MalformedFile(f"ledger task records are incoherent: {exc}") from None
    return MissionReport(
        outcome=final,
        per_task=per_task,
        ledger_path=str(ledger_path),
        ledger_status=status,
    )
