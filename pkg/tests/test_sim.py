"""Unit tests for the deterministic mission simulator and ledger replay."""

import base64
import json

import pytest

from missionkit.chain import Outcome, TransitionKernel
from missionkit.contract import AbortReason, Channel, Verdict
from missionkit.errors import InvalidScenario, MalformedFile, TamperedLedger
from missionkit.ledger import (
    GENESIS_HASH,
    PROVENANCE_CONTRACT_ENGINE,
    ChainStatus,
    Ledger,
)
from missionkit.sim import (
    MC2_ORDER_REASON,
    EventKind,
    Mc2Response,
    MissionOutcome,
    MissionScenario,
    OutcomeKind,
    ScenarioEvent,
    build_decoy_ledger,
    contract_for_phases,
    load_scenario,
    replay,
    run_mission,
)
from missionkit.telemetry import PHASES, Phase

SURE_KERNEL = TransitionKernel(0.999999, 0.000001)
MIXED_KERNEL = TransitionKernel(0.9, 0.6)


def scenario(
    threshold=0.0,
    phases=PHASES,
    seed=7,
    events=(),
    response=Mc2Response.GRANT,
    latency=0,
    kernel=SURE_KERNEL,
    p1=1.0,
    **contract_kw,
):
    contract = contract_for_phases(
        phases, success_threshold=threshold, kernel=kernel, p1=p1, **contract_kw
    )
    return MissionScenario(
        contract=contract,
        phases=phases,
        seed=seed,
        events=tuple(events),
        mc2_response=response,
        mc2_latency_tasks=latency,
    )


def run(tmp_path, scn, name="mission.bbx"):
    return run_mission(scn, tmp_path / name)


def entry_bodies(path):
    """Decode the exported ledger into (provenance, body-dict-or-SEAL) pairs."""
    lines = path.read_text(encoding="utf-8").splitlines()
    out = []
    for line in lines[1:]:
        record = json.loads(line)
        payload = base64.b64decode(record["payload_base64"])
        body = "SEAL" if payload == b"SEAL" else json.loads(payload.decode("utf-8"))
        out.append((record["provenance"], body, record["timestamp_ms"]))
    return out


class TestBenignMission:
    def test_completes_all_tasks(self, tmp_path):
        report = run(tmp_path, scenario(seed=7))
        assert report.outcome.kind is OutcomeKind.COMPLETED
        assert report.outcome.reason is None
        assert len(report.per_task) == 7
        assert all(r.outcome is Outcome.SUCCESSFUL for r in report.per_task)
        assert report.ledger_status == ChainStatus(True, None)

    def test_strike_verdict_exactly_at_strike_phase(self, tmp_path):
        report = run(tmp_path, scenario(seed=7))
        verdicts = [r.decision.verdict for r in report.per_task]
        assert verdicts[5] is Verdict.STRIKE
        assert all(v is Verdict.CONTINUE for i, v in enumerate(verdicts) if i != 5)

    def test_phases_recorded_in_order(self, tmp_path):
        report = run(tmp_path, scenario(seed=7))
        assert tuple(r.phase for r in report.per_task) == PHASES
        assert [r.task for r in report.per_task] == list(range(1, 8))

    def test_incomplete_final_task_marks_mission_incomplete(self, tmp_path):
        # hunt a seed whose final task fails but that still reaches task 7
        for seed in range(200):
            scn = scenario(seed=seed, kernel=MIXED_KERNEL, p1=0.8)
            report = run(tmp_path, scn, f"m{seed}.bbx")
            if len(report.per_task) == 7 and report.per_task[-1].outcome is Outcome.INCOMPLETE:
                assert report.outcome.kind is OutcomeKind.INCOMPLETE
                return
        pytest.fail("no seed produced a full run ending in an incomplete task")


class TestAbortPaths:
    def test_civilians_at_strike_task_abort(self, tmp_path):
        events = [ScenarioEvent(6, EventKind.CIVILIANS_DETECTED)]
        report = run(tmp_path, scenario(events=events))
        assert report.outcome == MissionOutcome(
            OutcomeKind.ABORTED, AbortReason.CIVILIANS_PRESENT.value
        )
        assert len(report.per_task) == 6
        assert report.per_task[-1].decision.verdict is Verdict.ABORT_REQUEST

    def test_civilians_before_identify_wait_until_identify(self, tmp_path):
        events = [ScenarioEvent(2, EventKind.CIVILIANS_DETECTED)]
        report = run(tmp_path, scenario(events=events))
        assert report.outcome.kind is OutcomeKind.ABORTED
        assert report.outcome.reason == AbortReason.CIVILIANS_PRESENT.value
        assert len(report.per_task) == 4  # identify_target task
        assert [r.decision.verdict for r in report.per_task[:3]] == [Verdict.CONTINUE] * 3

    def test_civilians_cleared_resumes_mission(self, tmp_path):
        events = [
            ScenarioEvent(2, EventKind.CIVILIANS_DETECTED),
            ScenarioEvent(3, EventKind.CIVILIANS_CLEARED),
        ]
        report = run(tmp_path, scenario(events=events))
        assert report.outcome.kind is OutcomeKind.COMPLETED

    def test_both_comms_down_returns_to_base(self, tmp_path):
        events = [
            ScenarioEvent(3, EventKind.COMMS_LOSS, Channel.PRIMARY),
            ScenarioEvent(3, EventKind.COMMS_LOSS, Channel.SECONDARY),
        ]
        report = run(tmp_path, scenario(events=events))
        assert report.outcome.kind is OutcomeKind.RETURNED_TO_BASE
        assert report.outcome.reason == AbortReason.COMMS_LOST.value
        assert len(report.per_task) == 3
        assert report.per_task[-1].decision.verdict is Verdict.RETURN_TO_BASE

    def test_comms_restore_cancels_return(self, tmp_path):
        events = [
            ScenarioEvent(2, EventKind.COMMS_LOSS, Channel.PRIMARY),
            ScenarioEvent(4, EventKind.COMMS_RESTORE, Channel.PRIMARY),
        ]
        report = run(tmp_path, scenario(events=events))
        assert report.outcome.kind is OutcomeKind.COMPLETED

    def test_denied_abort_continues_with_logged_requests(self, tmp_path):
        events = [ScenarioEvent(4, EventKind.CIVILIANS_DETECTED)]
        report = run(tmp_path, scenario(events=events, response=Mc2Response.DENY))
        assert report.outcome.kind is OutcomeKind.COMPLETED
        verdicts = [r.decision.verdict for r in report.per_task]
        assert verdicts[:3] == [Verdict.CONTINUE] * 3
        assert verdicts[3:] == [Verdict.ABORT_REQUEST] * 4
        bodies = [b for _, b, _ in entry_bodies(tmp_path / "mission.bbx")]
        denials = [b for b in bodies if b != "SEAL" and b["event"] == "abort_denied_continue"]
        assert len(denials) == 4

    def test_response_latency_defers_the_abort(self, tmp_path):
        events = [ScenarioEvent(2, EventKind.CIVILIANS_DETECTED)]
        report = run(tmp_path, scenario(events=events, latency=2))
        # request goes out at the identify task (4); the grant lands two
        # tasks later
        assert report.outcome.kind is OutcomeKind.ABORTED
        assert len(report.per_task) == 6

    def test_probability_rule_aborts_early(self, tmp_path):
        scn = scenario(threshold=0.99, kernel=MIXED_KERNEL, p1=0.8, seed=3)
        report = run(tmp_path, scn)
        assert report.outcome.kind is OutcomeKind.ABORTED
        assert report.outcome.reason == AbortReason.PROBABILITY_BELOW_THRESHOLD.value
        assert len(report.per_task) == 1
        decision = report.per_task[0].decision
        assert decision.task is not None and decision.value is not None
        assert decision.value < 0.99

    def test_abort_request_on_secondary_unconfirmable_while_primary_down(self, tmp_path):
        events = [
            ScenarioEvent(1, EventKind.COMMS_LOSS, Channel.PRIMARY),
            ScenarioEvent(4, EventKind.CIVILIANS_DETECTED),
        ]
        report = run(tmp_path, scenario(events=events))
        # the request goes out on the surviving channel, but the answer can
        # never be cross-confirmed on the dead one, so the UAV heads home
        assert report.outcome.kind is OutcomeKind.RETURNED_TO_BASE
        assert report.outcome.reason == AbortReason.COMMS_LOST.value
        bodies = [b for _, b, _ in entry_bodies(tmp_path / "mission.bbx")]
        requests = [b for b in bodies if b != "SEAL" and b["event"] == "abort_request"]
        assert requests and requests[0]["channel"] == Channel.SECONDARY.value
        confirmations = [
            b for b in bodies if b != "SEAL" and b["event"] == "abort_confirmation"
        ]
        assert confirmations[-1]["via_channel"] == Channel.PRIMARY.value
        assert confirmations[-1]["result"] == "unconfirmable"

    def test_cross_confirmed_abort_after_channel_restore(self, tmp_path):
        events = [
            ScenarioEvent(1, EventKind.COMMS_LOSS, Channel.PRIMARY),
            ScenarioEvent(4, EventKind.CIVILIANS_DETECTED),
            ScenarioEvent(5, EventKind.COMMS_RESTORE, Channel.PRIMARY),
        ]
        report = run(tmp_path, scenario(events=events, latency=1))
        assert report.outcome.kind is OutcomeKind.ABORTED
        assert report.outcome.reason == AbortReason.CIVILIANS_PRESENT.value
        assert len(report.per_task) == 5
        bodies = [b for _, b, _ in entry_bodies(tmp_path / "mission.bbx")]
        requests = [b for b in bodies if b != "SEAL" and b["event"] == "abort_request"]
        assert requests and requests[0]["channel"] == Channel.SECONDARY.value
        confirmations = [
            b for b in bodies if b != "SEAL" and b["event"] == "abort_confirmation"
        ]
        assert confirmations[-1]["via_channel"] == Channel.PRIMARY.value
        assert confirmations[-1]["result"] == "confirmed"


class TestMc2Orders:
    def test_direct_order_aborts_before_task_runs(self, tmp_path):
        events = [ScenarioEvent(2, EventKind.MC2_ABORT_ORDER, Channel.PRIMARY)]
        report = run(tmp_path, scenario(events=events))
        assert report.outcome.kind is OutcomeKind.ABORTED
        assert report.outcome.reason == MC2_ORDER_REASON
        assert len(report.per_task) == 1  # task 2 never executed

    def test_unconfirmable_order_returns_to_base(self, tmp_path):
        events = [
            ScenarioEvent(1, EventKind.COMMS_LOSS, Channel.SECONDARY),
            ScenarioEvent(2, EventKind.MC2_ABORT_ORDER, Channel.PRIMARY),
        ]
        report = run(tmp_path, scenario(events=events))
        assert report.outcome.kind is OutcomeKind.RETURNED_TO_BASE
        assert report.outcome.reason == AbortReason.COMMS_LOST.value


class TestDeterminismAndAudit:
    def test_identical_scenarios_produce_identical_bytes(self, tmp_path):
        events = [ScenarioEvent(4, EventKind.CIVILIANS_DETECTED)]
        a = run(tmp_path, scenario(events=events, seed=19), "a.bbx")
        b = run(tmp_path, scenario(events=events, seed=19), "b.bbx")
        assert (tmp_path / "a.bbx").read_bytes() == (tmp_path / "b.bbx").read_bytes()
        assert (a.outcome, a.per_task, a.ledger_status) == (
            b.outcome,
            b.per_task,
            b.ledger_status,
        )

    def test_seed_changes_the_transcript(self, tmp_path):
        run(tmp_path, scenario(seed=1, kernel=MIXED_KERNEL, p1=0.8), "a.bbx")
        run(tmp_path, scenario(seed=2, kernel=MIXED_KERNEL, p1=0.8), "b.bbx")
        assert (tmp_path / "a.bbx").read_bytes() != (tmp_path / "b.bbx").read_bytes()

    def test_audit_trail_is_complete(self, tmp_path):
        report = run(tmp_path, scenario(seed=7))
        rows = entry_bodies(tmp_path / "mission.bbx")
        per_task_events = {}
        outcome_rows = []
        for provenance, body, _ in rows[:-1]:
            assert body != "SEAL"
            if body["event"] == "mission_outcome":
                outcome_rows.append(body)
            else:
                per_task_events.setdefault(body["task"], []).append(body["event"])
        for record in report.per_task:
            assert per_task_events[record.task] == ["telemetry", "task_outcome", "decision"]
        assert len(outcome_rows) == 1
        assert rows[-1][0] == PROVENANCE_CONTRACT_ENGINE
        assert rows[-1][1] == "SEAL"

    def test_timestamps_follow_task_clock(self, tmp_path):
        run(tmp_path, scenario(seed=7))
        rows = entry_bodies(tmp_path / "mission.bbx")
        stamps = [ts for _, _, ts in rows]
        assert stamps == sorted(stamps)
        for _, body, ts in rows[:-1]:
            task = body["task"]
            assert (task - 1) * 1000 <= ts < task * 1000

    def test_decision_entries_match_report(self, tmp_path):
        report = run(tmp_path, scenario(seed=7, kernel=MIXED_KERNEL, p1=0.8))
        rows = entry_bodies(tmp_path / "mission.bbx")
        decisions = {
            b["task"]: b for _, b, _ in rows if b != "SEAL" and b["event"] == "decision"
        }
        for record in report.per_task:
            body = decisions[record.task]
            assert body["verdict"] == record.decision.verdict.value
            assert body["min_projection"] == record.min_projection
            assert body["min_projection_task"] == record.min_projection_task


class TestReplay:
    def test_replay_round_trips_exactly(self, tmp_path):
        for name, scn in [
            ("benign.bbx", scenario(seed=5, kernel=MIXED_KERNEL, p1=0.8)),
            (
                "abort.bbx",
                scenario(events=[ScenarioEvent(4, EventKind.CIVILIANS_DETECTED)], seed=6),
            ),
            (
                "rtb.bbx",
                scenario(
                    events=[
                        ScenarioEvent(2, EventKind.COMMS_LOSS, Channel.PRIMARY),
                        ScenarioEvent(2, EventKind.COMMS_LOSS, Channel.SECONDARY),
                    ],
                    seed=8,
                ),
            ),
        ]:
            report = run(tmp_path, scn, name)
            rebuilt = replay(tmp_path / name)
            assert rebuilt.outcome == report.outcome
            assert rebuilt.per_task == report.per_task
            assert rebuilt.ledger_status == ChainStatus(True, None)

    def test_tampered_ledger_refused_with_break_index(self, tmp_path):
        run(tmp_path, scenario(seed=7))
        path = tmp_path / "mission.bbx"
        lines = path.read_text(encoding="utf-8").splitlines()
        record = json.loads(lines[5])  # entry index 4
        payload = bytearray(base64.b64decode(record["payload_base64"]))
        payload[0] ^= 0x01
        record["payload_base64"] = base64.b64encode(bytes(payload)).decode("ascii")
        lines[5] = json.dumps(record, separators=(",", ":"))
        path.write_text("\n".join(lines) + "\n", encoding="utf-8")
        with pytest.raises(TamperedLedger) as exc:
            replay(path)
        assert exc.value.broken_at == 4

    def test_zeroized_ledger_refused(self, tmp_path):
        run(tmp_path, scenario(seed=7))
        ledger, status = Ledger.load(tmp_path / "mission.bbx")
        assert status.valid
        ledger.zeroize()
        ledger.export(tmp_path / "zeroed.bbx")
        with pytest.raises(TamperedLedger) as exc:
            replay(tmp_path / "zeroed.bbx")
        assert exc.value.broken_at == 0

    def test_ledger_without_outcome_is_incoherent(self, tmp_path):
        ledger = Ledger(mission_epoch_ms=0)
        ledger.append("uav_action", 0, json.dumps({"event": "task_outcome"}).encode())
        ledger.seal()
        ledger.export(tmp_path / "partial.bbx")
        with pytest.raises(MalformedFile):
            replay(tmp_path / "partial.bbx")

    def test_mismatched_transcript_is_incoherent(self, tmp_path):
        ledger = Ledger(mission_epoch_ms=0)
        body = {
            "event": "task_outcome",
            "task": 1,
            "phase": "takeoff",
            "outcome": "successful",
        }
        ledger.append("uav_action", 0, json.dumps(body).encode())
        final = {"event": "mission_outcome", "task": 1, "kind": "completed", "reason": None}
        ledger.append("contract_engine", 1, json.dumps(final).encode())
        ledger.seal()
        ledger.export(tmp_path / "odd.bbx")
        with pytest.raises(MalformedFile):
            replay(tmp_path / "odd.bbx")  # decision entry for task 1 is missing


class TestDecoy:
    def test_decoy_is_deterministic_and_valid(self, tmp_path):
        a = build_decoy_ledger(99, None, epoch_ms=123)
        b = build_decoy_ledger(99, None, epoch_ms=123)
        a.export(tmp_path / "a.bbx")
        b.export(tmp_path / "b.bbx")
        assert (tmp_path / "a.bbx").read_bytes() == (tmp_path / "b.bbx").read_bytes()
        assert a.verify_chain() == ChainStatus(True, None)

    def test_decoy_replays_as_benign_mission(self, tmp_path):
        build_decoy_ledger(41, None, epoch_ms=0).export(tmp_path / "d.bbx")
        report = replay(tmp_path / "d.bbx")
        assert report.outcome.kind in (OutcomeKind.COMPLETED, OutcomeKind.INCOMPLETE)
        assert report.per_task and report.per_task[0].phase is Phase.TAKEOFF
        for record in report.per_task:
            assert record.decision.verdict in (Verdict.CONTINUE, Verdict.STRIKE)


class TestSafetyInvariants:
    """Model-check a grid of event scripts against the safety rules."""

    @staticmethod
    def _active(events, kind_on, kind_off, task):
        active = False
        for event in sorted(events, key=lambda e: e.at_task):
            if event.at_task <= task:
                if event.kind is kind_on:
                    active = True
                elif event.kind is kind_off:
                    active = False
        return active

    @staticmethod
    def _both_down(events, task):
        down = {Channel.PRIMARY: False, Channel.SECONDARY: False}
        for event in sorted(events, key=lambda e: e.at_task):
            if event.at_task <= task:
                if event.kind is EventKind.COMMS_LOSS:
                    down[event.channel] = True
                elif event.kind is EventKind.COMMS_RESTORE:
                    down[event.channel] = False
        return all(down.values())

    def test_no_strike_under_active_rules(self, tmp_path):
        grids = []
        for civ_task in (1, 3, 4, 6):
            for latency in (0, 2):
                for response in Mc2Response:
                    grids.append(
                        ([ScenarioEvent(civ_task, EventKind.CIVILIANS_DETECTED)], latency, response)
                    )
        for loss_task in (1, 5, 6):
            grids.append(
                (
                    [
                        ScenarioEvent(loss_task, EventKind.COMMS_LOSS, Channel.PRIMARY),
                        ScenarioEvent(loss_task, EventKind.COMMS_LOSS, Channel.SECONDARY),
                    ],
                    0,
                    Mc2Response.GRANT,
                )
            )
        grids.append(
            (
                [
                    ScenarioEvent(2, EventKind.CIVILIANS_DETECTED),
                    ScenarioEvent(5, EventKind.CIVILIANS_CLEARED),
                ],
                0,
                Mc2Response.GRANT,
            )
        )
        for index, (events, latency, response) in enumerate(grids):
            scn = scenario(events=events, latency=latency, response=response, seed=100 + index)
            report = run(tmp_path, scn, f"grid{index}.bbx")
            for record in report.per_task:
                if record.decision.verdict is Verdict.STRIKE:
                    assert record.task == 6, (index, record)
                    assert not self._active(
                        events, EventKind.CIVILIANS_DETECTED, EventKind.CIVILIANS_CLEARED, record.task
                    ), (index, record)
                    assert not self._both_down(events, record.task), (index, record)
            kind, reason = report.outcome.kind, report.outcome.reason
            if kind is OutcomeKind.ABORTED:
                assert reason in (
                    AbortReason.CIVILIANS_PRESENT.value,
                    AbortReason.PROBABILITY_BELOW_THRESHOLD.value,
                    MC2_ORDER_REASON,
                )
            elif kind is OutcomeKind.RETURNED_TO_BASE:
                assert reason == AbortReason.COMMS_LOST.value
            else:
                assert reason is None


class TestScenarioValidation:
    def test_task_count_must_match_phases(self):
        contract = contract_for_phases(PHASES, 0.0, SURE_KERNEL, 1.0)
        with pytest.raises(InvalidScenario):
            MissionScenario(contract=contract, phases=PHASES[:5], seed=0)

    def test_event_bounds_and_channels(self):
        with pytest.raises(InvalidScenario):
            ScenarioEvent(0, EventKind.CIVILIANS_DETECTED)
        with pytest.raises(InvalidScenario):
            ScenarioEvent(2, EventKind.COMMS_LOSS)  # channel required
        with pytest.raises(InvalidScenario):
            ScenarioEvent(2, EventKind.CIVILIANS_DETECTED, Channel.PRIMARY)
        with pytest.raises(InvalidScenario):
            scenario(events=[ScenarioEvent(8, EventKind.CIVILIANS_DETECTED)])

    def test_negative_latency_rejected(self):
        with pytest.raises(InvalidScenario):
            scenario(latency=-1)


class TestScenarioFiles:
    def write(self, tmp_path, data):
        path = tmp_path / "scenario.json"
        path.write_text(json.dumps(data), encoding="utf-8")
        return path

    def base_data(self):
        return {
            "version": 1,
            "seed": 5,
            "contract": {
                "tau_ss": 0.9,
                "tau_uu": 0.6,
                "p1": 0.8,
                "success_threshold": 0.25,
            },
            "events": [{"at_task": 3, "kind": "civilians_detected"}],
            "mc2": {"abort_response": "deny", "latency_tasks": 1},
            "noise_level": 0.5,
        }

    def test_load_round_trip(self, tmp_path):
        scn = load_scenario(self.write(tmp_path, self.base_data()))
        assert scn.seed == 5
        assert scn.phases == PHASES  # defaulted
        assert scn.contract.kernel == TransitionKernel(0.9, 0.6)
        assert scn.contract.success_threshold == 0.25
        assert scn.contract.target_identify_task == 4
        assert scn.contract.strike_task == 6
        assert scn.events == (ScenarioEvent(3, EventKind.CIVILIANS_DETECTED),)
        assert scn.mc2_response is Mc2Response.DENY
        assert scn.mc2_latency_tasks == 1
        assert scn.noise_level == 0.5

    def test_explicit_phases(self, tmp_path):
        data = self.base_data()
        data["phases"] = ["takeoff", "navigate", "return_to_base"]
        scn = load_scenario(self.write(tmp_path, data))
        assert scn.phases == (Phase.TAKEOFF, Phase.NAVIGATE, Phase.RETURN_TO_BASE)
        assert scn.contract.strike_task is None

    def test_loaded_scenario_runs(self, tmp_path):
        report = run_mission(
            load_scenario(self.write(tmp_path, self.base_data())), tmp_path / "m.bbx"
        )
        assert report.ledger_status.valid

    @pytest.mark.parametrize(
        "mangle",
        [
            lambda d: d.update(version=2),
            lambda d: d.pop("seed"),
            lambda d: d.pop("contract"),
            lambda d: d["contract"].pop("p1"),
            lambda d: d.update(phases=["warp"]),
            lambda d: d["events"].append({"at_task": 2, "kind": "solar_flare"}),
            lambda d: d["events"].append(
                {"at_task": 2, "kind": "comms_loss", "channel": "tertiary"}
            ),
            lambda d: d.update(contract=[1, 2]),
        ],
    )
    def test_malformed_scenarios(self, tmp_path, mangle):
        data = self.base_data()
        mangle(data)
        with pytest.raises(MalformedFile):
            load_scenario(self.write(tmp_path, data))

    def test_not_json_at_all(self, tmp_path):
        path = tmp_path / "scenario.json"
        path.write_text("{nope", encoding="utf-8")
        with pytest.raises(MalformedFile):
            load_scenario(path)

    def test_impossible_event_task_is_invalid(self, tmp_path):
        data = self.base_data()
        data["events"] = [{"at_task": 99, "kind": "civilians_detected"}]
        with pytest.raises(InvalidScenario):
            load_scenario(self.write(tmp_path, data))


class TestContractForPhases:
    def test_anchors_follow_first_occurrence(self):
        contract = contract_for_phases(PHASES, 0.5, MIXED_KERNEL, 0.8)
        assert contract.target_identify_task == 4
        assert contract.strike_task == 6

    def test_missing_phases_leave_anchors_unset(self):
        phases = (Phase.TAKEOFF, Phase.NAVIGATE, Phase.RETURN_TO_BASE)
        contract = contract_for_phases(phases, 0.5, MIXED_KERNEL, 0.8)
        assert contract.target_identify_task is None
        assert contract.strike_task is None

    def test_explicit_anchor_wins(self):
        contract = contract_for_phases(PHASES, 0.5, MIXED_KERNEL, 0.8, strike_task=5)
        assert contract.strike_task == 5
