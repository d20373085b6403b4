"""Command-line interface: enumerate, exists, check, export."""
from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import tempfile
from pathlib import Path
from typing import Sequence

from .csa import (
    AFFINE,
    COMPLETE,
    DEFAULT_MAX_TIME,
    TilingEnumeration,
    exists_aperiodic_complement,
    run_csa,
)
from .errors import TilingError
from .model import build_master_problem, cuts_for_solution, export_lp, orbit_cut
from .polynomial import classify_order, cm_report
from .rhythm import MODES, Rhythm

SCHEMA_VERSION = 1

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_LIMIT = 2
EXIT_NO = 3


def write_atomic(path: str | os.PathLike, text: str) -> None:
    """Write via a temp file in the same directory so failures leave nothing behind."""
    path = Path(path)
    fd, tmp = tempfile.mkstemp(dir=path.parent or ".", prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        umask = os.umask(0)
        os.umask(umask)
        os.chmod(tmp, 0o666 & ~umask)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def emit(text: str, out: str | None) -> None:
    if out:
        write_atomic(out, text)
    else:
        sys.stdout.write(text)


def read_rhythm(args: argparse.Namespace) -> Rhythm:
    if args.rhythm_file:
        lines = [
            ln for ln in Path(args.rhythm_file).read_text(encoding="utf-8").splitlines()
            if ln.strip() and not ln.lstrip().startswith("#")
        ]
        if len(lines) != 1:
            raise TilingError(f"{args.rhythm_file}: expected exactly one rhythm line")
        r = Rhythm.parse(lines[0])
        if args.n is not None and args.n != r.period:
            raise TilingError(f"--n {args.n} contradicts period {r.period} in {args.rhythm_file}")
        return r
    if args.n is None or args.rhythm is None:
        raise TilingError("give --n and --rhythm, or --rhythm-file")
    return Rhythm.parse(f"{args.n}: {args.rhythm}")


def enumeration_to_dict(e: TilingEnumeration) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "inner": list(e.inner.elements),
        "n": e.inner.period,
        "mode": e.mode,
        "status": e.status,
        "counts": {
            "solutions": len(e.solutions),
            "classes": len(e.classes),
            "translation_classes": e.translation_count,
        },
        "classes": [c.to_dict() for c in e.classes],
        "solutions": [list(b.elements) for b in e.solutions],
        "search": [
            {"decisions": s.decisions, "propagations": s.propagations, "conflicts": s.conflicts}
            for s in e.stats
        ],
        "iteration_times": list(e.iteration_times),
    }


def timings_csv(times: Sequence[float]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["iteration", "seconds"])
    for k, t in enumerate(times, start=1):
        w.writerow([k, f"{t:.6f}"])
    return buf.getvalue()


def dumps(obj: dict) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _model_flags(args: argparse.Namespace) -> dict:
    return {
        "include_cardinality": not args.no_cardinality,
        "replace_first_family": args.replace_first_family and not args.keep_first_family,
    }


def cmd_enumerate(args: argparse.Namespace) -> int:
    a = read_rhythm(args)
    e = run_csa(
        a,
        mode=args.mode,
        max_solutions=args.max_solutions,
        max_time=args.max_time,
        cut_policy=args.cut_policy,
        aperiodicity=not args.no_aperiodicity,
        **_model_flags(args),
    )
    if args.format == "csv":
        emit(timings_csv(e.iteration_times), args.out)
    else:
        emit(dumps(enumeration_to_dict(e)), args.out)
        if args.times_csv:
            write_atomic(args.times_csv, timings_csv(e.iteration_times))
    return EXIT_OK if e.status == COMPLETE else EXIT_LIMIT


def cmd_exists(args: argparse.Namespace) -> int:
    a = read_rhythm(args)
    res = exists_aperiodic_complement(a, max_time=args.max_time, **_model_flags(args))
    if args.format == "json":
        emit(dumps({
            "schema_version": SCHEMA_VERSION,
            "inner": list(a.elements),
            "n": a.period,
            "answer": res.answer,
            "witness": None if res.witness is None else list(res.witness.elements),
            "search": res.stats.to_dict(),
        }), args.out)
    else:
        line = res.answer
        if res.witness is not None:
            line += " " + res.witness.format()
        emit(line + "\n", args.out)
    return {"yes": EXIT_OK, "no": EXIT_NO}.get(res.answer, EXIT_LIMIT)


def cmd_check(args: argparse.Namespace) -> int:
    payload: dict = {"schema_version": SCHEMA_VERSION}
    if args.order is not None:
        payload["order"] = classify_order(args.order).to_dict()
    else:
        a = read_rhythm(args)
        payload.update(cm_report(a, full_scan=args.full_scan).to_dict())
        payload["order"] = classify_order(a.period).to_dict()
    emit(dumps(payload), args.out)
    return EXIT_OK


def cmd_export(args: argparse.Namespace) -> int:
    a = read_rhythm(args)
    sys_ = build_master_problem(a, aperiodicity=not args.no_aperiodicity, **_model_flags(args))
    if args.resume:
        state = json.loads(Path(args.resume).read_text(encoding="utf-8"))
        if state.get("n") != a.period or state.get("inner") != list(a.elements):
            raise TilingError(f"{args.resume} was produced for a different rhythm")
        cuts = []
        for elems in state.get("solutions", []):
            b = Rhythm(a.period, tuple(elems))
            if args.cut_policy == "orbit":
                cuts += cuts_for_solution(b, state.get("mode", args.mode))
            else:
                cuts.append(orbit_cut(b.elements, len(b)))
        sys_ = sys_.with_rows(cuts)
    if args.summary:
        emit(dumps(sys_.summary()), None)
    emit(export_lp(sys_), args.out)
    return EXIT_OK


class _Parser(argparse.ArgumentParser):
    # usage errors share exit code 1 with other input errors; 2 means "limit reached"
    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(EXIT_ERROR, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="vuzatile",
        description="Aperiodic tiling complements of rhythms in Z_n via a binary linear model.",
    )
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def rhythm_args(p: argparse.ArgumentParser) -> None:
        p.add_argument("--n", type=int, help="period of the cyclic group")
        p.add_argument("--rhythm", help="comma-separated elements, e.g. 0,8,16,18,26,34")
        p.add_argument("--rhythm-file", help="file holding one line 'n: e1,e2,...'")

    def model_args(p: argparse.ArgumentParser) -> None:
        p.add_argument("--no-cardinality", action="store_true",
                       help="omit the sum(b) = n/|A| row")
        p.add_argument("--replace-first-family", action="store_true",
                       help="use the prefix-sum row instead of the smallest prime's u family")
        p.add_argument("--keep-first-family", action="store_true",
                       help="keep every u family (default; overrides --replace-first-family)")
        p.add_argument("--out", help="output file (default stdout)")

    p = sub.add_parser("enumerate", help="list all aperiodic complements up to equivalence")
    rhythm_args(p)
    model_args(p)
    p.add_argument("--mode", choices=MODES, default=AFFINE)
    p.add_argument("--max-solutions", type=int)
    p.add_argument("--max-time", type=float, default=DEFAULT_MAX_TIME, help="seconds")
    p.add_argument("--no-aperiodicity", action="store_true",
                   help="diagnostic: enumerate periodic complements too")
    p.add_argument("--cut-policy", choices=("orbit", "single"), default="orbit")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--times-csv", help="also write per-iteration timings to this CSV file")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("exists", help="decide whether an aperiodic complement exists")
    rhythm_args(p)
    model_args(p)
    p.add_argument("--max-time", type=float, default=DEFAULT_MAX_TIME, help="seconds")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_exists)

    p = sub.add_parser("check", help="Coven-Meyerowitz report and group order class")
    rhythm_args(p)
    p.add_argument("--order", type=int, help="classify this group order only")
    p.add_argument("--full-scan", action="store_true",
                   help="try every cyclotomic index up to deg + n, not just divisors of n")
    p.add_argument("--out")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("export", help="write the model in LP format")
    rhythm_args(p)
    model_args(p)
    p.add_argument("--no-aperiodicity", action="store_true")
    p.add_argument("--resume", help="enumerate JSON whose solutions become cut rows")
    p.add_argument("--mode", choices=MODES, default=AFFINE,
                   help="orbit mode for --resume when the JSON lacks one")
    p.add_argument("--cut-policy", choices=("orbit", "single"), default="orbit")
    p.add_argument("--summary", action="store_true", help="print the JSON system summary to stdout")
    p.set_defaults(func=cmd_export)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (TilingError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
