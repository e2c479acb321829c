"""Abort-rule contract engine.

Evaluates a fixed, ordered set of machine-checkable mission rules after each
task and produces a verdict.  Rule priority is part of the contract and never
reordered:

1. comms loss     both command channels down -> ReturnToBase(CommsLost)
2. civilians      civilians detected at or after target identification ->
                  AbortRequest(CiviliansPresent)
3. probability    the projected success probability of any remaining task
                  falls strictly below the contract threshold ->
                  AbortRequest(ProbabilityBelowThreshold(task, value))

If every rule passes, the verdict is Strike when the current task is the
designated strike task, otherwise Continue.  Abort requests travel over a
command channel and become binding only after confirmation on the other
channel (dual-channel rule, see confirm_abort).
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .chain import (
    ChainQuery,
    Outcome,
    TransitionKernel,
    success_given_first_incomplete,
    success_given_first_success,
    success_prob_closed,
)


class Verdict(Enum):
    CONTINUE = "continue"
    ABORT_REQUEST = "abort_request"
    RETURN_TO_BASE = "return_to_base"
    STRIKE = "strike"


class AbortReason(Enum):
    PROBABILITY_BELOW_THRESHOLD = "probability_below_threshold"
    CIVILIANS_PRESENT = "civilians_present"
    COMMS_LOST = "comms_lost"


class Channel(Enum):
    PRIMARY = "primary"
    SECONDARY = "secondary"

    def other(self) -> "Channel":
        return Channel.SECONDARY if self is Channel.PRIMARY else Channel.PRIMARY


class Confirmation(Enum):
    CONFIRMED = "confirmed"
    UNCONFIRMABLE = "unconfirmable"


@dataclass(frozen=True)
class Decision:
    """Verdict plus the evidence behind it.

    task and value are populated only for probability-rule abort requests:
    the earliest remaining task whose projection is minimal, and that
    minimal projected probability.
    """

    verdict: Verdict
    reason: AbortReason | None = None
    task: int | None = None
    value: float | None = None

    def __post_init__(self):
        if self.verdict in (Verdict.ABORT_REQUEST, Verdict.RETURN_TO_BASE):
            if self.reason is None:
                raise ValueError(f"{self.verdict.value} requires a reason")
        elif self.reason is not None:
            raise ValueError(f"{self.verdict.value} must not carry a reason")


@dataclass(frozen=True)
class ContractSpec:
    """Immutable per-mission rule parameters.

    target_identify_task / strike_task are 1-based task indices; None
    disables the corresponding special-casing (civilian rule always active /
    no strike verdict).  unconditional_projection switches the probability
    rule from conditioning on the last observed outcome to the plain
    first-task-probability closed form.
    """

    success_threshold: float
    kernel: TransitionKernel
    p1: float
    task_count: int
    civilian_rule_enabled: bool = True
    comms_loss_rule_enabled: bool = True
    target_identify_task: int | None = None
    strike_task: int | None = None
    unconditional_projection: bool = False

    def __post_init__(self):
        if not 0.0 <= self.success_threshold <= 1.0:
            raise ValueError(f"success_threshold must lie in [0, 1], got {self.success_threshold!r}")
        if not 0.0 <= self.p1 <= 1.0:
            raise ValueError(f"p1 must lie in [0, 1], got {self.p1!r}")
        if self.task_count < 1:
            raise ValueError(f"task_count must be >= 1, got {self.task_count!r}")
        for name in ("target_identify_task", "strike_task"):
            value = getattr(self, name)
            if value is not None and not 1 <= value <= self.task_count:
                raise ValueError(f"{name} must lie in 1..{self.task_count}, got {value!r}")


@dataclass(frozen=True)
class MissionState:
    """Snapshot of the mission after a task has finished.

    current_task_index is 1-based.  last_outcome None means no task outcome
    has been observed yet (projections then fall back to the unconditional
    closed form).
    """

    current_task_index: int
    last_outcome: Outcome | None
    civilians_detected: bool = False
    comms_primary_up: bool = True
    comms_secondary_up: bool = True

    def __post_init__(self):
        if self.current_task_index < 1:
            raise ValueError(f"current_task_index must be >= 1, got {self.current_task_index!r}")


def project_task_success(spec: ContractSpec, state: MissionState, future_task: int) -> float:
    """Projected success probability of a strictly later task.

    Conditions on the most recent observed outcome (the chain is Markov, so
    earlier history is irrelevant) unless the contract asks for the
    unconditional projection or no outcome has been observed yet.
    """
    if future_task <= state.current_task_index:
        raise ValueError(
            f"future_task {future_task} is not after current task {state.current_task_index}"
        )
    if future_task > spec.task_count:
        raise ValueError(f"future_task {future_task} exceeds task_count {spec.task_count}")
    if spec.unconditional_projection or state.last_outcome is None:
        return success_prob_closed(ChainQuery(spec.kernel, n=future_task, p1=spec.p1))
    gap = future_task - state.current_task_index
    if state.last_outcome is Outcome.SUCCESSFUL:
        return success_given_first_success(spec.kernel, gap)
    return success_given_first_incomplete(spec.kernel, gap)


def _min_remaining_projection(
    spec: ContractSpec, state: MissionState
) -> tuple[int, float] | None:
    """Earliest remaining task attaining the minimal projection, or None."""
    best: tuple[int, float] | None = None
    for task in range(state.current_task_index + 1, spec.task_count + 1):
        value = project_task_success(spec, state, task)
        if best is None or value < best[1]:
            best = (task, value)
    return best


def evaluate(spec: ContractSpec, state: MissionState) -> Decision:
    """Apply the rules in priority order and return the first verdict.

    Deterministic and side-effect free: equal inputs give equal decisions.
    The probability rule compares strictly (projection < threshold), so a
    threshold of 0 never fires and a threshold of 1 fires whenever any
    projection is below certainty.
    """
    if spec.comms_loss_rule_enabled and not state.comms_primary_up and not state.comms_secondary_up:
        return Decision(Verdict.RETURN_TO_BASE, AbortReason.COMMS_LOST)

    if (
        spec.civilian_rule_enabled
        and state.civilians_detected
        and (
            spec.target_identify_task is None
            or state.current_task_index >= spec.target_identify_task
        )
    ):
        return Decision(Verdict.ABORT_REQUEST, AbortReason.CIVILIANS_PRESENT)

    worst = _min_remaining_projection(spec, state)
    if worst is not None and worst[1] < spec.success_threshold:
        return Decision(
            Verdict.ABORT_REQUEST,
            AbortReason.PROBABILITY_BELOW_THRESHOLD,
            task=worst[0],
            value=worst[1],
        )

    if spec.strike_task is not None and state.current_task_index == spec.strike_task:
        return Decision(Verdict.STRIKE)
    return Decision(Verdict.CONTINUE)


def confirm_abort(state: MissionState, order_channel: Channel) -> Confirmation:
    """Dual-channel rule: an abort order is binding only if the channel other
    than the one it arrived on is up to confirm it."""
    other_up = (
        state.comms_secondary_up
        if order_channel is Channel.PRIMARY
        else state.comms_primary_up
    )
    return Confirmation.CONFIRMED if other_up else Confirmation.UNCONFIRMABLE
