"""Two-state Markov task-chain success-probability engine.

A mission is an ordered sequence of tasks, each of which finishes either
successful or incomplete.  The outcome of a task depends only on the outcome
of the task immediately before it, through a time-independent transition
kernel.  This module holds the kernel algebra, the recurrence and closed-form
evaluations of the probability that task n ends successful, the conditional
variants given the first task's outcome, maximum-likelihood kernel estimation
from recorded runs, and a seeded Monte Carlo cross-check.

Two derived parameters drive every formula:

    lam = tau_ss + tau_uu - 1    geometric decay rate, |lam| < 1 required
    mu  = 1 - tau_uu             recovery probability after an incomplete task

and the long-run success probability is mu / (1 - lam), which always lands in
[0, 1] for a valid kernel.  All floating-point identities documented here
(e.g. closed form vs recurrence) hold to within 1e-12 absolute for task
indices up to 1e4; exact equality is not promised.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Sequence

import numpy as np

from .errors import DegenerateKernel, InsufficientData


class Outcome(Enum):
    """Completion status of a single task."""

    SUCCESSFUL = "successful"
    INCOMPLETE = "incomplete"


_CHAR_OUTCOME = {"s": Outcome.SUCCESSFUL, "u": Outcome.INCOMPLETE}


@dataclass(frozen=True)
class TransitionKernel:
    """Conditional probabilities linking adjacent task outcomes.

    tau_ss is the probability that a task ends successful given the previous
    task did; tau_uu the probability that a task stays incomplete given the
    previous one was.  The two complements are implied and never stored.

    Kernels with |lam| = 1 are rejected as degenerate: within [0, 1] x [0, 1]
    those are exactly (tau_ss, tau_uu) = (1, 1) and (0, 0), the two fully
    deterministic chains.  lam == 0 is fine; the chain then forgets the
    previous outcome entirely.
    """

    tau_ss: float
    tau_uu: float

    def __post_init__(self):
        for name in ("tau_ss", "tau_uu"):
            value = getattr(self, name)
            if not (isinstance(value, (int, float)) and 0.0 <= value <= 1.0):
                raise ValueError(f"{name} must lie in [0, 1], got {value!r}")
        if abs(self.lam) >= 1.0:
            raise DegenerateKernel(
                f"tau_ss={self.tau_ss}, tau_uu={self.tau_uu} is deterministic"
                " (|decay rate| = 1)"
            )

    @property
    def mu(self) -> float:
        """Recovery probability: Pr[successful | previous incomplete]."""
        return 1.0 - self.tau_uu

    @property
    def lam(self) -> float:
        """Decay rate of the chain's memory of earlier outcomes."""
        # Written as tau_ss - mu rather than tau_ss + tau_uu - 1 so that the
        # identity lam + mu == tau_ss survives the float round trip.
        return self.tau_ss - self.mu


@dataclass(frozen=True)
class ChainQuery:
    """A question about the chain: how likely is task n to end successful?

    p1 is the success probability of the first task.  None means unknown, in
    which case only the conditional operations apply.
    """

    kernel: TransitionKernel
    n: int
    p1: float | None = None

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 1:
            raise ValueError(f"task index n must be an integer >= 1, got {self.n!r}")
        if self.p1 is not None and not 0.0 <= self.p1 <= 1.0:
            raise ValueError(f"p1 must lie in [0, 1], got {self.p1!r}")

    def required_p1(self) -> float:
        if self.p1 is None:
            raise ValueError("this operation needs a known first-task probability p1")
        return self.p1


def success_prob_recurrence(query: ChainQuery) -> float:
    """Pr[task n successful], by iterating p <- lam * p + mu from p1."""
    p = query.required_p1()
    lam, mu = query.kernel.lam, query.kernel.mu
    for _ in range(query.n - 1):
        p = lam * p + mu
    return p


def success_prob_closed(query: ChainQuery) -> float:
    """Pr[task n successful] in closed form.

        (p1 - limit) * lam**(n-1) + limit,   limit = mu / (1 - lam)

    At n == 1 the power is lam**0 == 1.0 (Python defines 0.0**0 == 1.0), so
    the expression collapses to p1 exactly.
    """
    p1 = query.required_p1()
    kernel = query.kernel
    limit = kernel.mu / (1.0 - kernel.lam)
    return (p1 - limit) * kernel.lam ** (query.n - 1) + limit


def success_given_first_success(kernel: TransitionKernel, k: int) -> float:
    """Pr[task 1+k successful | task 1 successful].

    Closed form (1 - limit) * lam**k + limit; at k == 1 this reduces to
    tau_ss (to within float rounding).
    """
    if not isinstance(k, int) or k < 1:
        raise ValueError(f"gap k must be an integer >= 1, got {k!r}")
    limit = kernel.mu / (1.0 - kernel.lam)
    return (1.0 - limit) * kernel.lam**k + limit


def success_given_first_incomplete(kernel: TransitionKernel, k: int) -> float:
    """Pr[task 1+k successful | task 1 incomplete].

    Closed form limit * (1 - lam**k); at k == 1 this reduces to mu.
    """
    if not isinstance(k, int) or k < 1:
        raise ValueError(f"gap k must be an integer >= 1, got {k!r}")
    limit = kernel.mu / (1.0 - kernel.lam)
    return limit * (1.0 - kernel.lam**k)


def success_prob_by_conditioning(query: ChainQuery) -> float:
    """Pr[task n successful], assembled by conditioning on the first task.

        p1 * Pr[n ok | 1 ok] + (1 - p1) * Pr[n ok | 1 incomplete]

    Algebraically identical to success_prob_closed; kept as an independently
    coded assembly so the two can cross-check each other.  Needs n >= 2.
    """
    if query.n < 2:
        raise ValueError("conditioning on the first task needs n >= 2")
    p1 = query.required_p1()
    gap = query.n - 1
    return p1 * success_given_first_success(query.kernel, gap) + (
        1.0 - p1
    ) * success_given_first_incomplete(query.kernel, gap)


def limiting_success_prob(kernel: TransitionKernel) -> float:
    """Long-run probability mu / (1 - lam) that a far-future task succeeds."""
    return kernel.mu / (1.0 - kernel.lam)


@dataclass(frozen=True)
class OutcomeLog:
    """Recorded task outcomes from one or more training runs."""

    runs: tuple[tuple[Outcome, ...], ...]

    def __post_init__(self):
        if not self.runs:
            raise ValueError("outcome log needs at least one run")
        for run in self.runs:
            if not run:
                raise ValueError("every run must contain at least one outcome")
            for item in run:
                if not isinstance(item, Outcome):
                    raise ValueError(f"run items must be Outcome values, got {item!r}")

    @classmethod
    def from_strings(cls, runs: Sequence[str]) -> "OutcomeLog":
        """Parse runs written as strings of 's' (successful) and 'u' (incomplete)."""
        decoded = []
        for text in runs:
            cleaned = text.strip().lower()
            for ch in cleaned:
                if ch not in _CHAR_OUTCOME:
                    raise ValueError(f"unknown outcome character {ch!r} in {text!r}")
            decoded.append(tuple(_CHAR_OUTCOME[ch] for ch in cleaned))
        return cls(tuple(decoded))


def estimate_kernel(log: OutcomeLog) -> TransitionKernel:
    """Pooled maximum-likelihood kernel from observed adjacent transitions.

    Counts are pooled across runs and positions, consistent with the kernel
    being time-independent.  Raises InsufficientData when one of the two
    conditioning states never occurs before the end of a run, and
    DegenerateKernel when the counts themselves are deterministic (for
    example every observed transition repeats its state, so the estimate
    would be tau_ss = tau_uu = 1).
    """
    stay = {Outcome.SUCCESSFUL: 0, Outcome.INCOMPLETE: 0}
    total = {Outcome.SUCCESSFUL: 0, Outcome.INCOMPLETE: 0}
    for run in log.runs:
        for prev, cur in zip(run, run[1:]):
            total[prev] += 1
            if cur is prev:
                stay[prev] += 1
    from_s = total[Outcome.SUCCESSFUL]
    from_u = total[Outcome.INCOMPLETE]
    if from_s == 0 or from_u == 0:
        raise InsufficientData(
            f"need transitions out of both states; saw {from_s} out of"
            f" successful and {from_u} out of incomplete"
        )
    return TransitionKernel(
        stay[Outcome.SUCCESSFUL] / from_s, stay[Outcome.INCOMPLETE] / from_u
    )


@dataclass(frozen=True)
class McEstimate:
    """Monte Carlo estimate of a chain success probability."""

    estimate: float
    stderr: float
    samples: int


def simulate_chain_mc(query: ChainQuery, samples: int, seed: int) -> McEstimate:
    """Estimate Pr[task n successful] by sampling whole chains.

    Uses numpy's default generator (PCG64), so a fixed seed reproduces the
    estimate bit for bit across runs.  stderr is the binomial standard error
    sqrt(est * (1 - est) / samples) of the reported estimate.
    """
    if samples < 1:
        raise ValueError(f"samples must be >= 1, got {samples}")
    p1 = query.required_p1()
    kernel = query.kernel
    rng = np.random.default_rng(seed)
    state = rng.random(samples) < p1
    for _ in range(query.n - 1):
        draw = rng.random(samples)
        state = np.where(state, draw < kernel.tau_ss, draw < kernel.mu)
    estimate = float(state.mean())
    stderr = math.sqrt(estimate * (1.0 - estimate) / samples)
    return McEstimate(estimate=estimate, stderr=stderr, samples=samples)


def sample_outcomes(
    kernel: TransitionKernel, p1: float, count: int, rng: np.random.Generator
) -> list[Outcome]:
    """Draw a single chain path of `count` task outcomes."""
    if count < 1:
        raise ValueError(f"count must be >= 1, got {count}")
    if not 0.0 <= p1 <= 1.0:
        raise ValueError(f"p1 must lie in [0, 1], got {p1!r}")
    path: list[Outcome] = []
    success = rng.random() < p1
    path.append(Outcome.SUCCESSFUL if success else Outcome.INCOMPLETE)
    for _ in range(count - 1):
        p_next = kernel.tau_ss if success else kernel.mu
        success = rng.random() < p_next
        path.append(Outcome.SUCCESSFUL if success else Outcome.INCOMPLETE)
    return path
