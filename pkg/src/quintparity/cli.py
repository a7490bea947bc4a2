"""Command line entry point: shard tools and fault-injection campaigns."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import shardset
from .faultlab import TrialSpec, campaign_json, run_campaign_parallel
from .galois import FieldSpec
from .shardset import EXIT_USAGE, ShardError


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def parse_field(text: str) -> FieldSpec:
    m, _, poly = text.partition(":")
    try:
        m = int(m)
        return FieldSpec(m, int(poly, 16)) if poly else FieldSpec.default(m)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad field {text!r}: {exc}") from exc


def parse_indices(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad index list {text!r}") from exc


def parse_hex(text: str) -> int:
    try:
        return int(text, 16)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad hex value {text!r}") from exc


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="quintparity", description="Quintuple-parity shard tools.")
    sub = p.add_subparsers(dest="command", required=True)

    e = sub.add_parser("encode", help="split a file into k data and 5 parity shards")
    e.add_argument("--in", dest="input", required=True, type=Path)
    e.add_argument("--out-dir", required=True, type=Path)
    e.add_argument("--k", required=True, type=int)
    e.add_argument("--field", type=parse_field, default=FieldSpec.default(8), help="m[:poly-hex], default 8")

    r = sub.add_parser("reassemble", help="rebuild the original file, repairing missing shards")
    r.add_argument("--dir", required=True, type=Path)
    r.add_argument("--out", required=True, type=Path)
    r.add_argument("--missing", type=parse_indices, default=[], help="shard indices to treat as lost")

    s = sub.add_parser("scrub", help="check every stripe for corruption")
    s.add_argument("--dir", required=True, type=Path)
    s.add_argument("--repair", action="store_true", help="write corrections back to the shards")
    s.add_argument("--list-candidates", action="store_true", help="list 3-error candidates for stripes that cannot be corrected")

    i = sub.add_parser("inject", help="XOR a value into one symbol of a shard")
    i.add_argument("--shard", required=True, type=Path)
    i.add_argument("--stripe", required=True, type=int)
    i.add_argument("--xor", required=True, type=parse_hex)

    f = sub.add_parser("faultlab", help="fault-injection experiments")
    fsub = f.add_subparsers(dest="lab_command", required=True)
    c = fsub.add_parser("campaign", help="run a Monte Carlo campaign from a JSON spec")
    c.add_argument("--spec", required=True, type=Path)
    c.add_argument("--out", required=True, type=Path)
    c.add_argument("--workers", type=int, default=1)
    return p


def _print_report(report: shardset.RepairReport) -> None:
    for line in report.lines:
        print(line)


def run(args) -> int:
    if args.command == "encode":
        payload = args.input.read_bytes()
        paths = shardset.encode_payload(payload, args.out_dir, args.k, args.field)
        print(f"wrote {len(paths)} shards to {args.out_dir}")
        return 0
    if args.command == "reassemble":
        report = shardset.reassemble(args.dir, args.out, args.missing)
        _print_report(report)
        print(
            f"summary\tstripes={report.stripes}\trepaired={len(report.corrected)}"
            f"\tuncorrectable={len(report.uncorrectable)}"
        )
        return report.exit_code
    if args.command == "scrub":
        report = shardset.scrub(args.dir, args.repair, args.list_candidates)
        _print_report(report)
        return report.exit_code
    if args.command == "inject":
        shardset.inject(args.shard, args.stripe, args.xor)
        return 0
    if args.command == "faultlab":
        try:
            spec = TrialSpec.from_dict(json.loads(args.spec.read_text()))
        except (TypeError, ValueError) as exc:
            raise ShardError(f"invalid campaign spec: {exc}", EXIT_USAGE) from exc
        report = run_campaign_parallel(spec, args.workers)
        args.out.write_text(campaign_json(spec, report) + "\n")
        counts = " ".join(f"{k}={v}" for k, v in report.counts.items())
        print(f"trials={report.trials} {counts}")
        return 0
    raise AssertionError(args.command)  # pragma: no cover


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return run(args)
    except ShardError as exc:
        print(f"quintparity: {exc}", file=sys.stderr)
        return exc.code
    except OSError as exc:
        print(f"quintparity: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
