"""Command line interface: ``entangle measure|schmidt|random|verify``.

Exit codes: 0 ok, 1 verification failure, 2 parse error, 3 norm error,
4 undefined measure, 5 I/O error.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .campaigns import SUITES, run_suite
from .errors import InvalidInputError, UndefinedMeasureError
from .io import (
    NormError,
    StateFile,
    StateFileError,
    file_checksum,
    read_state,
    report_document,
    report_to_json,
    report_to_text,
    write_state,
)
from .measures import entanglement_report
from .schmidt import schmidt_decompose
from .states import PureState, bipartition, random_pure_state

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_PARSE = 2
EXIT_NORM = 3
EXIT_UNDEFINED = 4
EXIT_IO = 5

logger = logging.getLogger("entangle")


class CommandError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


def _default_seed() -> int:
    raw = os.environ.get("ENTANGLE_SEED", "0")
    try:
        return int(raw, 0)
    except ValueError:
        raise CommandError(f"ENTANGLE_SEED must be an integer, got {raw!r}", EXIT_PARSE) from None


def _parse_part(value: str) -> list[int]:
    try:
        parts = [int(p) for p in value.split(",") if p.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated factor indices, got {value!r}") from None
    if not parts:
        raise argparse.ArgumentTypeError("partition must name at least one factor")
    return parts


def _load(path: str) -> StateFile:
    try:
        return read_state(path)
    except StateFileError as exc:
        raise CommandError(f"{path}: {exc}", EXIT_PARSE) from exc
    except NormError as exc:
        raise CommandError(f"{path}: {exc}", EXIT_NORM) from exc
    except UnicodeDecodeError as exc:
        raise CommandError(f"{path}: not a text file", EXIT_PARSE) from exc
    except OSError as exc:
        raise CommandError(f"{path}: {exc.strerror or exc}", EXIT_IO) from exc


def _bipartite(sf: StateFile, part_a: list[int] | None) -> PureState:
    if part_a is None:
        if not sf.is_bipartite:
            raise CommandError(
                f"state has {len(sf.dims)} factors; pass --part-a to choose a bipartition", EXIT_PARSE
            )
        return PureState(sf.tensor)
    bad = [i for i in part_a if not 1 <= i <= len(sf.dims)]
    if bad:
        raise CommandError(f"--part-a indices {bad} outside 1..{len(sf.dims)}", EXIT_PARSE)
    try:
        return bipartition(sf.tensor, [i - 1 for i in part_a])
    except InvalidInputError as exc:
        raise CommandError(str(exc), EXIT_PARSE) from exc


def _emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
        return
    try:
        Path(out).write_text(text)
    except OSError as exc:
        raise CommandError(f"{out}: {exc.strerror or exc}", EXIT_IO) from exc


def cmd_measure(args: argparse.Namespace) -> int:
    sf = _load(args.file)
    psi = _bipartite(sf, args.part_a)
    try:
        report = entanglement_report(psi)
    except UndefinedMeasureError as exc:
        raise CommandError(f"measure undefined: {exc}", EXIT_UNDEFINED) from exc
    doc = report_document(
        report,
        checksum=file_checksum(args.file),
        version=__version__,
        timestamp=not args.no_timestamp,
        partition=args.part_a,
    )
    _emit(report_to_json(doc) if args.format == "json" else report_to_text(doc), args.out)
    return EXIT_OK


def _fmt(x: float) -> str:
    return f"{x:.15g}"


def cmd_schmidt(args: argparse.Namespace) -> int:
    sf = _load(args.file)
    sd = schmidt_decompose(_bipartite(sf, args.part_a))
    lines = [", ".join(_fmt(v) for v in sd.lambdas)]
    if args.bases:
        for label, basis in (("A", sd.basis_a), ("B", sd.basis_b)):
            for i in range(sd.lambdas.size):
                col = basis[:, i]
                entries = " ".join(f"{_fmt(z.real)}{'+' if z.imag >= 0 else '-'}{_fmt(abs(z.imag))}j" for z in col)
                lines.append(f"basis_{label}[{i + 1}]: {entries}")
    sys.stdout.write("\n".join(lines) + "\n")
    return EXIT_OK


def cmd_random(args: argparse.Namespace) -> int:
    if args.dim_a < 1 or args.dim_b < 1:
        raise CommandError("dimensions must be >= 1", EXIT_PARSE)
    seed = _default_seed() if args.seed is None else args.seed
    psi = random_pure_state(args.dim_a, args.dim_b, seed)
    try:
        write_state(args.out, psi.shape, psi.amplitudes)
    except OSError as exc:
        raise CommandError(f"{args.out}: {exc.strerror or exc}", EXIT_IO) from exc
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    if args.trials < 1:
        raise CommandError("--trials must be >= 1", EXIT_PARSE)
    if args.max_dim < 2:
        raise CommandError("--max-dim must be >= 2", EXIT_PARSE)
    seed = _default_seed() if args.seed is None else args.seed
    suites = SUITES if args.suite == "all" else (args.suite,)
    summaries = [
        run_suite(name, args.trials, args.max_dim, seed, args.tolerance, jobs=args.jobs) for name in suites
    ]
    ok = all(s.passed for s in summaries)
    if args.format == "json":
        doc = {"seed": seed, "passed": ok, "suites": [s.to_dict() for s in summaries]}
        sys.stdout.write(json.dumps(doc, indent=2) + "\n")
    else:
        for s in summaries:
            d = s.to_dict()
            status = "PASS" if s.passed else "FAIL"
            sys.stdout.write(
                f"{status} {s.suite}: {d['trials']} trials, {d['failures']} failures, "
                f"worst={d['worst']:.3e}, median={d['median']:.3e} ({s.criterion}, tol={s.tolerance:g})\n"
            )
            for f in d["failed_trials"][:20]:
                sys.stdout.write(f"  trial {f['index']} seed {f['seed']}: value={f['value']:.3e} {f['detail']}\n")
            if len(d["failed_trials"]) > 20:
                sys.stdout.write(f"  ... {len(d['failed_trials']) - 20} more\n")
    return EXIT_OK if ok else EXIT_VERIFY_FAILED


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="entangle", description="Entanglement of bipartite pure states")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("measure", help="compute every entanglement measure for a state file")
    p.add_argument("file")
    p.add_argument("--part-a", type=_parse_part, help="1-based factor indices forming subsystem A, e.g. 1,3")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--out", help="write the report here instead of stdout")
    p.add_argument("--no-timestamp", action="store_true", help="omit the timestamp for reproducible output")
    p.set_defaults(func=cmd_measure)

    p = sub.add_parser("schmidt", help="print Schmidt parameters (descending)")
    p.add_argument("file")
    p.add_argument("--bases", action="store_true", help="also print the local Schmidt bases")
    p.add_argument("--part-a", type=_parse_part, help="bipartition for states with three or more factors")
    p.set_defaults(func=cmd_schmidt)

    p = sub.add_parser("random", help="write a Haar-random bipartite state file")
    p.add_argument("--dim-a", type=int, required=True)
    p.add_argument("--dim-b", type=int, required=True)
    p.add_argument("--seed", type=lambda v: int(v, 0), help="defaults to $ENTANGLE_SEED, else 0")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_random)

    p = sub.add_parser("verify", help="run randomized property campaigns")
    p.add_argument("--suite", choices=SUITES + ("all",), default="all")
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--max-dim", type=int, default=4)
    p.add_argument("--seed", type=lambda v: int(v, 0), help="defaults to $ENTANGLE_SEED, else 0")
    p.add_argument("--tolerance", type=float, default=1e-9)
    p.add_argument("--jobs", type=int, default=1, help="worker threads")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: list[str] | None = None) -> int:
    logging.basicConfig(level=logging.WARNING, format="entangle: %(levelname)s: %(message)s")
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CommandError as exc:
        print(f"entangle: error: {exc}", file=sys.stderr)
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
