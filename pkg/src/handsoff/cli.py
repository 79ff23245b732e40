"""Operator command line: serve the relay, generate landmark fixtures,
replay traces through the classifier and gate, and report evaluation tables.

Exit codes: 0 ok, 2 usage, 3 I/O or data, 4 protocol.
"""

from __future__ import annotations

import argparse
import asyncio
import json
import sys
from pathlib import Path

from .accounting import (
    ConfusionCounts,
    EmptyAfterExclusion,
    TrialOutcome,
    TrialRecord,
    deterrence_report,
    latency_summary,
    metrics,
)
from .classifier import ClassifierConfig, GestureClass, classify_trace
from .config import BadConfig, load_app_config
from .gate import EventKind, GateConfig, detection_latency, run_gate
from .landmarks import LandmarkFrame, Trace, TraceError, parse_trace, write_trace
from .poses import synthesize_pose
from .relay import RelayCore

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_IO = 3
EXIT_PROTOCOL = 4


def _gesture(name: str) -> GestureClass:
    try:
        return GestureClass(name.lower())
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"unknown gesture {name!r} (choose from {', '.join(g.value for g in GestureClass)})"
        ) from None


def _unlock_gesture(name: str) -> GestureClass:
    gesture = _gesture(name)
    if gesture is GestureClass.BACKGROUND:
        raise argparse.ArgumentTypeError("background cannot gate an unlock")
    return gesture


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="handsoff")
    sub = parser.add_subparsers(dest="command", required=True)

    serve = sub.add_parser("serve", help="run the relay server")
    serve.add_argument("--config", type=Path, default=None, help="key=value config file")
    serve.add_argument("--host", default=None)
    serve.add_argument("--port", type=int, default=None)
    serve.add_argument("--storage-dir", default=None)
    serve.add_argument(
        "--create-storage", action="store_true", help="create the storage dir if missing"
    )

    gen = sub.add_parser("gen-fixtures", help="write a synthetic landmark trace")
    gen.add_argument("--gesture", type=_gesture, required=True)
    gen.add_argument("--count", type=int, default=60)
    gen.add_argument("--jitter", type=float, default=0.0)
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--fps", type=float, default=30.0)
    gen.add_argument("--out", type=Path, required=True)

    replay = sub.add_parser("replay", help="classify a trace and replay the unlock gate")
    replay.add_argument("--trace", type=Path, required=True)
    replay.add_argument("--gesture", type=_unlock_gesture, required=True)
    replay.add_argument("--threshold", type=float, default=0.90)
    replay.add_argument("--dwell", type=int, default=3)
    replay.add_argument("--grace", type=int, default=5)

    report = sub.add_parser("report", help="deterrence and metrics tables from session logs")
    report.add_argument("--logs", type=Path, required=True, help="JSONL session log file")
    report.add_argument("--exclude", type=_unlock_gesture, action="append", default=[])

    return parser


def cmd_serve(args) -> int:
    try:
        config = load_app_config(
            args.config,
            {"host": args.host, "port": args.port, "storage_dir": args.storage_dir},
        )
    except (BadConfig, OSError, ValueError) as exc:
        print(f"bad configuration: {exc}", file=sys.stderr)
        return EXIT_USAGE
    storage = Path(config.storage_dir)
    if not storage.exists():
        if args.create_storage:
            storage.mkdir(parents=True)
        else:
            print(f"storage dir {storage} does not exist (rerun with --create-storage)", file=sys.stderr)
            return EXIT_IO
    core = RelayCore(
        storage,
        classifier_config=config.classifier_config(),
        payload_cap=config.payload_cap,
        chunks_per_frame=config.chunks_per_frame,
        sender_notifications=config.sender_notifications,
        voice_event_logging=config.voice_event_logging,
    )
    from .wsserver import serve_relay

    try:
        asyncio.run(serve_relay(core, config.host, config.port))
    except OSError as exc:
        print(f"cannot bind {config.host}:{config.port}: {exc}", file=sys.stderr)
        return EXIT_IO
    except KeyboardInterrupt:
        pass
    return EXIT_OK


def cmd_gen_fixtures(args) -> int:
    if args.count < 0:
        print("--count must be non-negative", file=sys.stderr)
        return EXIT_USAGE
    period = max(1, round(1000.0 / args.fps))
    frames = []
    for i in range(args.count):
        pose = synthesize_pose(args.gesture, args.seed + i, args.jitter)
        frames.append(LandmarkFrame(i * period, pose.hands))
    trace = Trace(tuple(frames), args.fps)
    try:
        args.out.write_bytes(write_trace(trace))
    except OSError as exc:
        print(f"cannot write {args.out}: {exc}", file=sys.stderr)
        return EXIT_IO
    print(f"wrote {args.count} frames of {args.gesture.value} to {args.out}")
    return EXIT_OK


def cmd_replay(args) -> int:
    try:
        trace = parse_trace(args.trace.read_bytes())
    except OSError as exc:
        print(f"cannot read {args.trace}: {exc}", file=sys.stderr)
        return EXIT_IO
    except TraceError as exc:
        print(f"bad trace: {exc}", file=sys.stderr)
        return EXIT_PROTOCOL
    gate_config = GateConfig(
        required_gesture=args.gesture,
        confidence_threshold=args.threshold,
        dwell_frames=args.dwell,
        grace_frames=args.grace,
    )
    classifications = classify_trace(trace, ClassifierConfig())
    mask, events = run_gate(classifications, gate_config)
    latency = detection_latency(trace, classifications, gate_config)

    print("frame\ttimestamp_ms\tgesture\tconfidence\tphase")
    for i, (frame, c, reveal) in enumerate(zip(trace.frames, classifications, mask)):
        phase = "Unlocked" if reveal else "Locked"
        print(f"{i}\t{frame.timestamp_ms}\t{c.gesture.value}\t{c.confidence:.4f}\t{phase}")
    print("event\tframe")
    for event in events:
        print(f"{event.kind.value}\t{event.frame_index}")
    unlocks = sum(1 for e in events if e.kind is EventKind.UNLOCKED)
    print(f"unlocks\t{unlocks}")
    print(f"latency_ms\t{latency if latency is not None else 'no unlock'}")
    return EXIT_OK


def _load_session_logs(path: Path) -> tuple[list[TrialRecord], dict[GestureClass, ConfusionCounts], list[float]]:
    trials: list[TrialRecord] = []
    confusion: dict[GestureClass, ConfusionCounts] = {}
    latencies: list[float] = []
    with path.open("r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                record = json.loads(line)
                kind = record.get("type")
                if kind == "trial":
                    trials.append(TrialRecord.from_dict(record))
                elif kind == "confusion":
                    confusion[GestureClass(record["gesture"])] = ConfusionCounts(
                        int(record["tp"]), int(record["fp"]), int(record["fn"])
                    )
                elif kind == "latency":
                    latencies.append(float(record["latency_ms"]))
                else:
                    raise ValueError(f"unknown record type {kind!r}")
            except (ValueError, KeyError) as exc:
                raise ValueError(f"{path}:{lineno}: {exc}") from None
    return trials, confusion, latencies


def cmd_report(args) -> int:
    try:
        trials, confusion, latencies = _load_session_logs(args.logs)
    except OSError as exc:
        print(f"cannot read {args.logs}: {exc}", file=sys.stderr)
        return EXIT_IO
    except ValueError as exc:
        print(f"bad session log: {exc}", file=sys.stderr)
        return EXIT_PROTOCOL
    if not trials and not confusion and not latencies:
        print(f"no records in {args.logs}", file=sys.stderr)
        return EXIT_IO

    if trials:
        try:
            report = deterrence_report(trials, set(args.exclude))
        except EmptyAfterExclusion as exc:
            print(f"nothing to report: {exc}", file=sys.stderr)
            return EXIT_USAGE
        print("# deterrence")
        excluded = ",".join(sorted(g.value for g in args.exclude)) or "-"
        print(f"excluded\t{excluded}")
        for outcome in TrialOutcome:
            print(f"{outcome.value}\t{report.counts[outcome]}")
        print(f"total\t{report.total}")
        print(f"deterrence_rate\t{report.deterrence_rate:.4f}")
    if confusion:
        print("# metrics")
        print("gesture\ttp\tfp\tfn\tprecision\trecall\tf1")
        for gesture in GestureClass:
            counts = confusion.get(gesture)
            if counts is None:
                continue
            m = metrics(counts)
            print(
                f"{gesture.value}\t{counts.tp}\t{counts.fp}\t{counts.fn}"
                f"\t{m.precision:.4f}\t{m.recall:.4f}\t{m.f1:.4f}"
            )
    if latencies:
        mean, lo, hi = latency_summary(latencies)
        print("# latency")
        print(f"count\t{len(latencies)}")
        print(f"mean_ms\t{mean:.1f}")
        print(f"min_ms\t{lo:.1f}")
        print(f"max_ms\t{hi:.1f}")
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    handlers = {
        "serve": cmd_serve,
        "gen-fixtures": cmd_gen_fixtures,
        "replay": cmd_replay,
        "report": cmd_report,
    }
    return handlers[args.command](args)


if __name__ == "__main__":
    sys.exit(main())
