"""Command-line front end.

Exit status: 0 when every check passed, 1 when violations were found (or a
certificate was rejected), 2 for usage or capability errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import os
import sys
from dataclasses import dataclass
from pathlib import Path

from . import config
from .binary_order import default_table, initial_segment
from .certificate import Certificate, trace_induction, verify_certificate
from .checks import (
    UNRESTRICTED_MIN_MAX_N,
    check_identities,
    check_lemma3,
    check_lemma4,
    check_lemma5,
    check_lemma6,
    check_theorem1,
    check_theorem2,
    minimize_boundary,
)
from .constructions import extremal_family, theorem_rhs
from .cube import Family, edge_profile
from .errors import CapabilityError, InputError

EXIT_OK, EXIT_VIOLATIONS, EXIT_USAGE = 0, 1, 2

STATEMENTS = ("thm1", "thm2", "lemma3", "lemma4", "lemma5", "lemma6", "identities")


@dataclass
class RunConfig:
    subcommand: str
    statement: str | None = None
    n: int | None = None
    mode: str = "exhaustive"
    budget: int | None = None
    seed: int = config.DEFAULT_SEED
    output: str | None = None
    output_format: str = "text"
    max_dimension: int | None = None
    force: bool = False
    workers: int = 1
    limit: int = 1 << 12
    samples: int = 10_000


def _emit(text: str, output: str | None) -> None:
    if output:
        Path(output).write_text(text)
    else:
        sys.stdout.write(text)


def _csv(rows) -> str:
    buf = io.StringIO()
    csv.writer(buf, lineterminator="\n").writerows(rows)
    return buf.getvalue()


def cmd_verify(cfg: RunConfig) -> int:
    st, n = cfg.statement, cfg.n
    common = dict(seed=cfg.seed, workers=cfg.workers)
    if st in ("thm1", "thm2"):
        if n is None:
            raise InputError(f"--n is required for {st}")
        checker = check_theorem1 if st == "thm1" else check_theorem2
        report = checker(n, mode=cfg.mode, budget=cfg.budget, allow_long=cfg.force, **common)
    elif st == "lemma3":
        report = check_lemma3(cfg.limit)
    elif st == "lemma4":
        report = check_lemma4(12 if n is None else n)
    elif st in ("lemma5", "lemma6"):
        if n is None:
            raise InputError(f"--n is required for {st}")
        checker = check_lemma5 if st == "lemma5" else check_lemma6
        exhaustive = None if cfg.mode == "auto" else cfg.mode == "exhaustive"
        samples = cfg.budget if cfg.budget is not None else cfg.samples
        report = checker(n, samples=samples, exhaustive=exhaustive, **common)
    elif st == "identities":
        if n is None:
            raise InputError("--n is required for identities")
        samples = cfg.budget if cfg.budget is not None else cfg.samples
        report = check_identities(n, samples=samples, seed=cfg.seed)
    else:
        raise InputError(f"unknown statement {st!r}")
    _emit(report.to_csv() if cfg.output_format == "csv" else report.to_text(), cfg.output)
    print(report.summary(), file=sys.stderr)
    return EXIT_OK if report.passed else EXIT_VIOLATIONS


def profile_rows(n: int, antipodal_only: bool = True) -> list[tuple]:
    """Rows ``(m, theorem_rhs, oracle_min, tight)``; the oracle columns are blank when infeasible."""
    oracle: dict[int, int] = {}
    if antipodal_only:
        try:
            report = check_theorem1(n)
            oracle = {m: w[0] for m, w in report.witnesses.items()}
        except CapabilityError:
            pass
    elif n <= UNRESTRICTED_MIN_MAX_N:
        oracle = {m: minimize_boundary(n, m, False)[0] for m in range(0, (1 << n) + 1, 2)}
    rows = []
    for m in range(0, (1 << n) + 1, 2):
        rhs = theorem_rhs(n, m)
        if m in oracle:
            rows.append((m, rhs, oracle[m], str(oracle[m] == rhs).lower()))
        else:
            rows.append((m, rhs, "", ""))
    return rows


def cmd_profile(n: int, antipodal_only: bool, output: str | None = None) -> int:
    rows = profile_rows(n, antipodal_only)
    _emit(_csv([("m", "theorem_rhs", "oracle_min", "tight"), *rows]), output)
    if antipodal_only and any(r[3] == "false" for r in rows):
        return EXIT_VIOLATIONS
    return EXIT_OK


def cmd_extremal(n: int, family_size: int | None, output: str | None = None) -> int:
    if family_size is not None:
        _emit(extremal_family(n, family_size).serialize() + "\n", output)
        return EXIT_OK
    rows = [(m, theorem_rhs(n, m)) for m in range(0, (1 << n) + 1, 2)]
    _emit(_csv([("m", "boundary_rhs"), *rows]), output)
    return EXIT_OK


def _read_family(source: str) -> Family:
    path = Path(source)
    text = path.read_text() if path.exists() else source
    return Family.parse(text)


def cmd_trace(family_source: str, output: str | None, check_only: str | None) -> int:
    A = _read_family(family_source)
    if check_only:
        cert = Certificate.from_text(Path(check_only).read_text())
    else:
        cert = trace_induction(A)
        _emit(cert.to_text(), output)
    verdict = verify_certificate(cert, A)
    if verdict:
        print(f"certificate verified: n={A.n} |A|={A.size}", file=sys.stderr)
        return EXIT_OK
    for line in verdict.failures[:20]:
        print(f"certificate rejected: {line}", file=sys.stderr)
    return EXIT_VIOLATIONS


def cmd_ftable(limit: int, output: str | None) -> int:
    F = default_table()
    if limit > F.limit:
        raise CapabilityError(f"F table holds k <= {F.limit}")
    _emit(_csv([("k", "F(k)"), *((k, int(F[k])) for k in range(limit + 1))]), output)
    return EXIT_OK


def _parse_sets(text: str) -> list[list[int]]:
    members = []
    for chunk in text.split(";"):
        chunk = chunk.strip().strip("{}")
        members.append([int(x) for x in chunk.split(",") if x.strip()])
    return members


def cmd_serialize(args: argparse.Namespace) -> int:
    if args.describe:
        A = _read_family(args.describe)
        p = edge_profile(A)
        _emit(
            _csv([("n", "size", "internal", "boundary", "potential"),
                  (p.n, p.size, p.internal, p.boundary, p.potential)]),
            args.output,
        )
        return EXIT_OK
    if args.n is None:
        raise InputError("--n is required")
    if args.codes is not None:
        A = Family.from_codes(args.n, [int(c) for c in args.codes.split(",") if c.strip()])
    elif args.sets is not None:
        A = Family.from_sets(args.n, _parse_sets(args.sets))
    elif args.segment is not None:
        A = initial_segment(args.n, args.segment)
    elif args.extremal is not None:
        A = extremal_family(args.n, args.extremal)
    else:
        raise InputError("give one of --codes, --sets, --segment, --extremal or --describe")
    _emit(A.serialize() + "\n", args.output)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="antipodal",
        description="Edge-isoperimetry of antipodal families in the discrete cube.",
    )
    parser.add_argument("--max-dimension", type=int, help=f"dimension cap (also {config.MAX_DIMENSION_ENV})")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser("verify", help="run a checker")
    p.add_argument("--statement", choices=STATEMENTS, required=True)
    p.add_argument("--n", type=int)
    p.add_argument("--mode", choices=("exhaustive", "sampled", "auto"), default="exhaustive")
    p.add_argument("--budget", type=int)
    p.add_argument("--samples", type=int, default=10_000)
    p.add_argument("--seed", type=int, default=config.DEFAULT_SEED)
    p.add_argument("--range", dest="limit", type=int, default=1 << 12, help="Lemma 3 sweep bound")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--force", action="store_true", help="allow long exhaustive runs")
    p.add_argument("--format", dest="output_format", choices=("csv", "text"), default="text")
    p.add_argument("--output")

    p = sub.add_parser("profile", help="extremal boundary against the exhaustive minimum")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--all-families", action="store_true", help="minimise over all families, not only antipodal ones")
    p.add_argument("--output")

    p = sub.add_parser("extremal", help="m,boundary_rhs table or one extremal family")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--family", dest="family_size", type=int, help="print the extremal family of this size")
    p.add_argument("--output")

    p = sub.add_parser("trace", help="build and check an induction certificate")
    p.add_argument("--family", required=True, help="file or literal 'n=<n> hex=<digits>'")
    p.add_argument("--output")
    p.add_argument("--check-only", metavar="CERT", help="check an existing certificate instead")

    p = sub.add_parser("ftable", help="k,F(k) table")
    p.add_argument("--k", type=int, default=64)
    p.add_argument("--output")

    p = sub.add_parser("serialize", help="write or describe a family")
    p.add_argument("--n", type=int)
    g = p.add_mutually_exclusive_group()
    g.add_argument("--codes", help="comma separated vertex codes")
    g.add_argument("--sets", help="members like '{};{1};{2,3}'")
    g.add_argument("--segment", type=int, help="initial segment of this size")
    g.add_argument("--extremal", type=int, help="extremal antipodal family of this size")
    g.add_argument("--describe", metavar="FAMILY", help="print the edge profile of a family")
    p.add_argument("--output")
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.max_dimension is not None:
        os.environ[config.MAX_DIMENSION_ENV] = str(args.max_dimension)
    try:
        if args.subcommand == "verify":
            cfg = RunConfig(**{k: v for k, v in vars(args).items() if k in RunConfig.__dataclass_fields__})
            return cmd_verify(cfg)
        if args.subcommand == "profile":
            return cmd_profile(args.n, not args.all_families, args.output)
        if args.subcommand == "extremal":
            return cmd_extremal(args.n, args.family_size, args.output)
        if args.subcommand == "trace":
            return cmd_trace(args.family, args.output, args.check_only)
        if args.subcommand == "ftable":
            return cmd_ftable(args.k, args.output)
        return cmd_serialize(args)
    except (InputError, CapabilityError) as exc:
        print(f"antipodal: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"antipodal: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
