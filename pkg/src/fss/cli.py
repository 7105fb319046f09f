"""Command-line interface: ``fss decompose | verify | from-perm-group | fixture``.

Exit codes: 0 success, 1 failed verification or report mismatch, 2 input
error, 3 pipeline error.
"""

from __future__ import annotations

import argparse
import logging
import sys
import time
from pathlib import Path
from typing import Sequence

from .algebra import build_algebra
from .decomposition import decompose
from .errors import FSSError, InputError, Mismatch, ParseError, PipelineError
from .field import FieldSpec
from .fixtures import FIXTURES, cycles_to_perms, fixture
from .io import read_document, read_json, write_document
from .meataxe import DEFAULT_BUDGET
from .oracle import perm_group_fixture
from .report import build_report, diff_reports, dumps_report, summary_lines

EXIT_OK, EXIT_MISMATCH, EXIT_INPUT, EXIT_PIPELINE = 0, 1, 2, 3

log = logging.getLogger("fss")


def _run(doc, args) -> tuple[dict, dict]:
    timings: dict[str, float] = {}
    t0 = time.perf_counter()
    alg = build_algebra(doc, seed=args.seed)
    timings["build"] = time.perf_counter() - t0
    t1 = time.perf_counter()
    d = decompose(
        alg,
        seed=args.seed,
        max_levels=args.max_levels,
        budget=args.budget,
        nonsplit=args.nonsplit,
        terminal_dim=args.terminal_dim,
    )
    timings["decompose"] = time.perf_counter() - t1
    t2 = time.perf_counter()
    report = build_report(doc, d, verify=args.verify)
    timings["verify"] = time.perf_counter() - t2
    return report, timings


def cmd_decompose(args) -> int:
    doc = read_document(args.input)
    report, timings = _run(doc, args)
    if args.timings:
        report["timings"] = {k: round(v, 6) for k, v in timings.items()}
    text = dumps_report(report)
    if args.report:
        Path(args.report).write_text(text)
    else:
        sys.stdout.write(text)
    out = sys.stderr if not args.report else sys.stdout
    for line in summary_lines(report):
        print(line, file=out)
    if args.figure:
        from .plotting import chain_figure

        chain_figure(report, args.figure, title=Path(args.input).stem)
    if not report["checks"]["all_passed"]:
        print("error: verification failed", file=sys.stderr)
        return EXIT_MISMATCH
    return EXIT_OK


def cmd_verify(args) -> int:
    recorded = read_json(args.report)
    doc = read_document(args.input)
    if not isinstance(recorded, dict) or "config" not in recorded:
        raise ParseError(f"{args.report} is not a decomposition report")
    cfg = recorded["config"]
    try:
        ns = argparse.Namespace(
            seed=int(cfg["seed"]),
            max_levels=int(cfg["max_levels"]),
            budget=int(cfg["budget"]),
            nonsplit=str(cfg["nonsplit"]),
            terminal_dim=str(cfg["terminal_dim"]),
            verify=str(cfg.get("verify", "full")),
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"report config is malformed: {exc}") from exc
    if recorded.get("input_sha256") != doc.digest():
        raise Mismatch("report was produced from a different input")
    fresh, _ = _run(doc, ns)
    diffs = diff_reports(recorded, fresh)
    if diffs:
        raise Mismatch("report disagrees with recomputation at: " + ", ".join(diffs[:10]))
    if not fresh["checks"]["all_passed"]:
        raise Mismatch("invariant suite failed on recomputation")
    print("ok\tverified\t" + str(args.report))
    return EXIT_OK


def cmd_from_perm_group(args) -> int:
    field = FieldSpec.rational() if args.prime is None else FieldSpec.prime(args.prime)
    perms = cycles_to_perms(args.cycles, args.degree)
    doc = perm_group_fixture(perms, len(perms[0]), field=field)
    doc.metadata["cycles"] = list(args.cycles)
    write_document(doc, args.output)
    print(f"ok\torder={doc.metadata['order']}\tdegree={doc.metadata['degree']}\t{args.output}")
    return EXIT_OK


def cmd_fixture(args) -> int:
    if args.list:
        for name in FIXTURES:
            print(name)
        return EXIT_OK
    if not args.name or not args.output:
        raise InputError("fixture needs a name and an output path (or --list)")
    try:
        doc = fixture(args.name)
    except KeyError as exc:
        raise InputError(str(exc.args[0])) from None
    write_document(doc, args.output)
    print(f"ok\t{args.name}\t{args.output}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="fss", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="count", default=0, help="log progress to stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("decompose", help="decompose the algebra described by an input file")
    p.add_argument("input", help="JSON input document")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-levels", type=int, default=16)
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="random elements per MeatAxe search")
    p.add_argument("--verify", choices=["full", "fast"], default="full")
    p.add_argument("--report", help="write the JSON report here instead of stdout")
    p.add_argument("--terminal-dim", choices=["oracle", "skip"], default="oracle")
    p.add_argument("--nonsplit", choices=["skip", "error"], default="skip",
                   help="what to do with simple submodules that need a field extension")
    p.add_argument("--figure", help="also render the dimension chain to this image file")
    p.add_argument("--timings", action="store_true", help="record wall-clock timings in the report")
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("verify", help="recompute a report and compare")
    p.add_argument("report")
    p.add_argument("input")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("from-perm-group", help="group algebra input from permutation generators")
    p.add_argument("cycles", nargs="+", help='cycle notation, e.g. "(1,2,3,4)(1,3)"')
    p.add_argument("-o", "--output", required=True)
    p.add_argument("--degree", type=int, help="number of points (default: largest point used)")
    p.add_argument("--prime", type=int, help="work over GF(p) instead of the rationals")
    p.set_defaults(func=cmd_from_perm_group)

    p = sub.add_parser("fixture", help="write a built-in fixture")
    p.add_argument("name", nargs="?")
    p.add_argument("-o", "--output")
    p.add_argument("--list", action="store_true")
    p.set_defaults(func=cmd_fixture)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    level = logging.WARNING - 10 * min(args.verbose, 2)
    logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except Mismatch as exc:
        print(f"mismatch: {exc}", file=sys.stderr)
        return EXIT_MISMATCH
    except InputError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except PipelineError as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_PIPELINE
    except FSSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PIPELINE
    except ValueError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
