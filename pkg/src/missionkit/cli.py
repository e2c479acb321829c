"""Command-line surface for the toolkit.

Exit codes: 0 success, 1 domain error (printed as "<ErrorName>: <detail>" on
stderr), 2 usage error (argparse).  Output is deterministic: a fixed
command line plus a fixed seed always produces identical bytes.

Seed resolution, for subcommands that take one: the subcommand's --seed if
given, else the MISSION_CHAIN_SEED environment variable, else 0.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from pathlib import Path

from . import chain, sim
from .errors import MalformedFile, MissionError
from .ledger import Ledger
from .metrics import confusion, kfold_splits, metrics as compute_metrics, roc_auc
from .telemetry import DatasetSpec, generate_dataset

_FORMATS = ("table", "csv", "json-lines")


def _fmt(value) -> str:
    """Deterministic human rendering of one cell."""
    if value is None:
        return "undefined"
    if isinstance(value, bool):
        return str(int(value))
    if isinstance(value, float):
        return f"{value:.12g}"
    return str(value)


def _render_record(pairs: list[tuple[str, object]], fmt: str) -> str:
    """One logical record in the chosen output format."""
    if fmt == "table":
        if len(pairs) == 1:
            # single-value results print bare, e.g. `chain eval` -> "0.85"
            return f"{_fmt(pairs[0][1])}\n"
        return "".join(f"{key}: {_fmt(value)}\n" for key, value in pairs)
    if fmt == "csv":
        header = ",".join(key for key, _ in pairs)
        row = ",".join("" if value is None else _fmt(value) for _, value in pairs)
        return f"{header}\n{row}\n"
    return json.dumps(dict(pairs), separators=(",", ":")) + "\n"


def _render_table(header: list[str], rows: list[list[object]], fmt: str) -> str:
    """Many homogeneous records (per-task reports, folds), one per line."""
    if fmt == "table":
        cells = [[_fmt(value) for value in row] for row in rows]
        widths = [
            max(len(name), *(len(row[i]) for row in cells)) if cells else len(name)
            for i, name in enumerate(header)
        ]
        lines = ["  ".join(name.ljust(widths[i]) for i, name in enumerate(header)).rstrip()]
        for row in cells:
            lines.append("  ".join(row[i].ljust(widths[i]) for i in range(len(header))).rstrip())
        return "\n".join(lines) + "\n"
    if fmt == "csv":
        lines = [",".join(header)]
        for row in rows:
            lines.append(",".join("" if value is None else _fmt(value) for value in row))
        return "\n".join(lines) + "\n"
    out = []
    for row in rows:
        out.append(json.dumps(dict(zip(header, row)), separators=(",", ":")))
    return "\n".join(out) + ("\n" if out else "")


def _resolve_seed(args) -> int:
    explicit = getattr(args, "seed", None)
    if explicit is not None:
        return explicit
    env = os.environ.get("MISSION_CHAIN_SEED")
    if env is not None:
        try:
            return int(env)
        except ValueError:
            raise MalformedFile(f"MISSION_CHAIN_SEED must be an integer, got {env!r}") from None
    return 0


def _kernel_from_args(args) -> chain.TransitionKernel:
    return chain.TransitionKernel(tau_ss=args.tau_ss, tau_uu=args.tau_uu)


# ---------------------------------------------------------------- chain ----


def _cmd_chain_eval(args) -> tuple[int, str]:
    query = chain.ChainQuery(_kernel_from_args(args), n=args.n, p1=args.p1)
    method = {
        "closed": chain.success_prob_closed,
        "recurrence": chain.success_prob_recurrence,
        "conditioned": chain.success_prob_by_conditioning,
    }[args.method]
    return 0, _render_record([("value", method(query))], args.format)


def _cmd_chain_mc(args) -> tuple[int, str]:
    query = chain.ChainQuery(_kernel_from_args(args), n=args.n, p1=args.p1)
    result = chain.simulate_chain_mc(query, samples=args.samples, seed=_resolve_seed(args))
    pairs = [
        ("estimate", result.estimate),
        ("stderr", result.stderr),
        ("samples", result.samples),
    ]
    return 0, _render_record(pairs, args.format)


def _cmd_chain_estimate(args) -> tuple[int, str]:
    try:
        text = Path(args.log).read_text(encoding="utf-8")
    except UnicodeDecodeError as exc:
        raise MalformedFile(f"outcome log is not UTF-8 text: {exc}") from None
    lines = [line for line in text.splitlines() if line.strip()]
    if not lines:
        raise MalformedFile("outcome log holds no runs")
    try:
        log = chain.OutcomeLog.from_strings(lines)
    except ValueError as exc:
        raise MalformedFile(str(exc)) from None
    kernel = chain.estimate_kernel(log)
    pairs = [
        ("tau_ss", kernel.tau_ss),
        ("tau_uu", kernel.tau_uu),
        ("lam", kernel.lam),
        ("mu", kernel.mu),
    ]
    return 0, _render_record(pairs, args.format)


def _cmd_chain_limit(args) -> tuple[int, str]:
    value = chain.limiting_success_prob(_kernel_from_args(args))
    return 0, _render_record([("value", value)], args.format)


# ------------------------------------------------------- simulate/replay ----


def _report_text(report: sim.MissionReport, fmt: str) -> str:
    if fmt in ("table", "json-lines"):
        head = [
            ("outcome", report.outcome.kind.value),
            ("reason", report.outcome.reason),
            ("tasks_executed", len(report.per_task)),
            ("ledger_path", report.ledger_path),
            ("ledger_status", str(report.ledger_status)),
        ]
        head_text = _render_record(head, fmt)
    else:
        head_text = ""
    rows = [
        [
            record.task,
            record.phase.value,
            record.outcome.value,
            record.min_projection,
            record.min_projection_task,
            record.decision.verdict.value,
            record.decision.reason.value if record.decision.reason else None,
        ]
        for record in report.per_task
    ]
    header = [
        "task",
        "phase",
        "outcome",
        "min_projection",
        "min_projection_task",
        "verdict",
        "reason",
    ]
    return head_text + _render_table(header, rows, fmt)


def _cmd_simulate(args) -> tuple[int, str]:
    scenario = sim.load_scenario(args.scenario)
    report = sim.run_mission(scenario, args.ledger_out)
    return 0, _report_text(report, args.format)


def _cmd_replay(args) -> tuple[int, str]:
    report = sim.replay(args.ledger)
    return 0, _report_text(report, args.format)


# ---------------------------------------------------------------- gen-data --


def _cmd_gen_data(args) -> tuple[int, str]:
    spec = DatasetSpec(
        rows=args.rows,
        seed=_resolve_seed(args),
        positive_fraction=args.positive_fraction,
        noise_level=args.noise_level,
        kernel=chain.TransitionKernel(args.tau_ss, args.tau_uu),
        p1=args.p1,
    )
    summary = generate_dataset(spec, args.out)
    pairs = [
        ("rows_written", summary.rows_written),
        ("positive_rows", summary.positive_rows),
        ("file_sha256", summary.file_sha256),
    ]
    return 0, _render_record(pairs, args.format)


# ---------------------------------------------------------------- bbx -------


def _cmd_bbx_verify(args) -> tuple[int, str]:
    _, status = Ledger.load(args.ledger)
    return (0 if status.valid else 1), f"{status}\n"


def _cmd_bbx_zeroize(args) -> tuple[int, str]:
    ledger, _ = Ledger.load(args.ledger)
    ledger.zeroize()
    ledger.export(args.ledger)
    return 0, f"zeroized {len(ledger)} entries\n"


def _cmd_bbx_decoy(args) -> tuple[int, str]:
    ledger, _ = Ledger.load(args.ledger)
    ledger.decoy_fill(_resolve_seed(args))
    ledger.export(args.ledger)
    return 0, f"decoy mission written ({len(ledger)} entries)\n"


# ---------------------------------------------------------------- metrics ---


def _read_predictions(path) -> tuple[list[int], list[int], list[float] | None]:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except UnicodeDecodeError as exc:
        raise MalformedFile(f"prediction file is not UTF-8 text: {exc}") from None
    reader = csv.reader(io.StringIO(text))
    try:
        header = [cell.strip().lower() for cell in next(reader)]
    except StopIteration:
        raise MalformedFile("prediction file is empty") from None
    try:
        label_col = header.index("label")
        pred_col = header.index("prediction")
    except ValueError:
        raise MalformedFile(
            f"prediction file needs 'label' and 'prediction' columns, got {header!r}"
        ) from None
    score_col = header.index("score") if "score" in header else None
    labels: list[int] = []
    predictions: list[int] = []
    scores: list[float] = []
    for lineno, row in enumerate(reader, start=2):
        if not row:
            continue
        try:
            labels.append(int(row[label_col]))
            predictions.append(int(row[pred_col]))
            if score_col is not None:
                scores.append(float(row[score_col]))
        except (ValueError, IndexError) as exc:
            raise MalformedFile(f"line {lineno}: {exc}") from None
    return labels, predictions, (scores if score_col is not None else None)


def _cmd_metrics(args) -> tuple[int, str]:
    labels, predictions, scores = _read_predictions(args.pred)
    cm = confusion(labels, predictions)
    report = compute_metrics(cm)
    auc = roc_auc(labels, scores) if scores is not None else None
    pairs = [
        ("accuracy", report.accuracy),
        ("precision", report.precision),
        ("recall", report.recall),
        ("f1", report.f1),
        ("roc_auc", auc),
        ("tn", cm.tn),
        ("fp", cm.fp),
        ("fn", cm.fn),
        ("tp", cm.tp),
    ]
    return 0, _render_record(pairs, args.format)


def _cmd_splits(args) -> tuple[int, str]:
    folds = kfold_splits(args.n, args.k, _resolve_seed(args))
    if args.format == "json-lines":
        lines = [
            json.dumps({"fold": i, "indices": fold}, separators=(",", ":"))
            for i, fold in enumerate(folds)
        ]
        return 0, "\n".join(lines) + "\n"
    rows = [[i, index] for i, fold in enumerate(folds) for index in fold]
    return 0, _render_table(["fold", "index"], rows, args.format)


# ---------------------------------------------------------------- parser ----


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="missionkit",
        description="Task-chain mission reliability toolkit.",
    )
    parser.add_argument(
        "--format", choices=_FORMATS, default="table", help="output rendering"
    )
    parser.add_argument(
        "--output", metavar="PATH", default=None, help="write stdout text to this file"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_seed(p):
        p.add_argument("--seed", type=int, default=None, help="random seed (falls back to MISSION_CHAIN_SEED, then 0)")

    def add_kernel(p, with_p1=True):
        p.add_argument("--tau-ss", type=float, required=True, dest="tau_ss")
        p.add_argument("--tau-uu", type=float, required=True, dest="tau_uu")
        if with_p1:
            p.add_argument("--p1", type=float, required=True)

    p_chain = sub.add_parser("chain", help="success-probability engine")
    chain_sub = p_chain.add_subparsers(dest="chain_command", required=True)

    p_eval = chain_sub.add_parser("eval", help="probability that task n succeeds")
    add_kernel(p_eval)
    p_eval.add_argument("--n", type=int, required=True)
    p_eval.add_argument(
        "--method", choices=("closed", "recurrence", "conditioned"), default="closed"
    )
    p_eval.set_defaults(func=_cmd_chain_eval)

    p_mc = chain_sub.add_parser("mc", help="Monte Carlo cross-check")
    add_kernel(p_mc)
    p_mc.add_argument("--n", type=int, required=True)
    p_mc.add_argument("--samples", type=int, required=True)
    add_seed(p_mc)
    p_mc.set_defaults(func=_cmd_chain_mc)

    p_est = chain_sub.add_parser("estimate", help="kernel from an outcome log")
    p_est.add_argument("--log", required=True, help="text file, one run of s/u characters per line")
    p_est.set_defaults(func=_cmd_chain_estimate)

    p_lim = chain_sub.add_parser("limit", help="long-run success probability")
    add_kernel(p_lim, with_p1=False)
    p_lim.set_defaults(func=_cmd_chain_limit)

    p_simulate = sub.add_parser("simulate", help="run a mission scenario")
    p_simulate.add_argument("--scenario", required=True)
    p_simulate.add_argument("--ledger-out", required=True, dest="ledger_out")
    p_simulate.set_defaults(func=_cmd_simulate)

    p_replay = sub.add_parser("replay", help="rebuild a report from a ledger")
    p_replay.add_argument("--ledger", required=True)
    p_replay.set_defaults(func=_cmd_replay)

    p_gen = sub.add_parser("gen-data", help="generate a telemetry dataset")
    p_gen.add_argument("--rows", type=int, required=True)
    p_gen.add_argument("--out", required=True)
    add_seed(p_gen)
    p_gen.add_argument("--positive-fraction", type=float, default=0.505, dest="positive_fraction")
    p_gen.add_argument("--noise-level", type=float, default=1.0, dest="noise_level")
    p_gen.add_argument("--tau-ss", type=float, default=0.9, dest="tau_ss")
    p_gen.add_argument("--tau-uu", type=float, default=0.6, dest="tau_uu")
    p_gen.add_argument("--p1", type=float, default=0.8)
    p_gen.set_defaults(func=_cmd_gen_data)

    p_bbx = sub.add_parser("bbx", help="black-box ledger operations")
    bbx_sub = p_bbx.add_subparsers(dest="bbx_command", required=True)
    p_verify = bbx_sub.add_parser("verify", help="verify the hash chain")
    p_verify.add_argument("--ledger", required=True)
    p_verify.set_defaults(func=_cmd_bbx_verify)
    p_zero = bbx_sub.add_parser("zeroize", help="destroy contents in place")
    p_zero.add_argument("--ledger", required=True)
    p_zero.set_defaults(func=_cmd_bbx_zeroize)
    p_decoy = bbx_sub.add_parser("decoy", help="replace contents with a fake mission")
    p_decoy.add_argument("--ledger", required=True)
    add_seed(p_decoy)
    p_decoy.set_defaults(func=_cmd_bbx_decoy)

    p_metrics = sub.add_parser("metrics", help="classification metrics from a prediction file")
    p_metrics.add_argument("--pred", required=True, help="CSV with label,prediction[,score] columns")
    p_metrics.set_defaults(func=_cmd_metrics)

    p_splits = sub.add_parser("splits", help="seeded k-fold index splits")
    p_splits.add_argument("--n", type=int, required=True)
    p_splits.add_argument("--k", type=int, required=True)
    add_seed(p_splits)
    p_splits.set_defaults(func=_cmd_splits)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else 0
    try:
        code, text = args.func(args)
    except (MissionError, ValueError) as exc:
        # ValueError covers argument validation done by the library itself,
        # e.g. probabilities outside [0, 1] typed on the command line.
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"IoError: {exc}", file=sys.stderr)
        return 1
    if args.output is not None:
        Path(args.output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
