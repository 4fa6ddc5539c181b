"""Command-line front end: build, check, identify, oracle, tables, theta, hilbert.

Exit codes: 0 success or match, 1 mismatch or counterexample, 2 usage or parse error.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from . import codes as cd
from . import fixtures
from .construction import (
    ConstructionError,
    build_gamma_c,
    coset_oracle,
    is_even,
    is_integral,
    is_unimodular,
    root_lattice_sum,
    verify_main_theorem,
)
from .rootlattices import RootLatticeError, RootLatticeSpec
from .theta import EnumerationError, RootSystemLabel, labels_equal, root_system, theta_coefficients

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    subcommand: str
    spec: RootLatticeSpec | None = None
    code: cd.Code | None = None
    m: int | None = None
    bound: Fraction | None = None
    output: Path | None = None

    @classmethod
    def from_args(cls, args: argparse.Namespace) -> "RunConfig":
        cfg = cls(args.command)
        if getattr(args, "family", None):
            try:
                cfg.spec = RootLatticeSpec(args.family.upper(), args.n, getattr(args, "ring", None))
            except RootLatticeError as exc:
                raise UsageError(str(exc)) from None
        if getattr(args, "code", None):
            cfg.code = load_code(args.code)
            if cfg.spec is not None and cfg.code.spec != cfg.spec.ring:
                raise UsageError(f"code is over {cfg.code.spec.name} but {cfg.spec} needs {cfg.spec.ring.name}")
        cfg.m = getattr(args, "m", None)
        if cfg.m is not None and cfg.m < 1:
            raise UsageError("--m must be positive")
        if getattr(args, "bound", None) is not None:
            cfg.bound = Fraction(args.bound)
            if cfg.bound < 0:
                raise UsageError("--bound must be nonnegative")
        if getattr(args, "out", None):
            cfg.output = Path(args.out)
        return cfg


def load_code(ref: str) -> cd.Code:
    """A code file path, or the name of a shipped fixture."""
    p = Path(ref)
    try:
        if p.exists():
            code = cd.read_code(p)
        elif ref in fixtures.available():
            code = fixtures.load(ref)
        else:
            raise UsageError(f"no code file or fixture named {ref!r}")
    except cd.CodeFormatError as exc:
        raise UsageError(f"{ref}: {exc}") from None
    if code.length == 0:
        raise UsageError(f"{ref}: code has length 0")
    return code


def _lattice(cfg: RunConfig):
    if cfg.spec is None:
        raise UsageError("--family and --n are required")
    if cfg.code is not None:
        return build_gamma_c(cfg.spec, cfg.code)
    if cfg.m:
        return root_lattice_sum(cfg.spec, cfg.m)
    raise UsageError("give --code or --m")


def _tf(b: bool) -> str:
    return str(bool(b)).lower()


def cmd_build(cfg: RunConfig, out=sys.stdout) -> int:
    lat = _lattice(cfg)
    text = lat.dump()
    if cfg.output:
        cfg.output.write_text(text)
        print(f"wrote rank-{lat.rank} lattice to {cfg.output}", file=out)
    else:
        out.write(text)
    return EXIT_OK


def cmd_check(cfg: RunConfig, out=sys.stdout) -> int:
    lat = _lattice(cfg)
    integral = is_integral(lat)
    print(f"rank: {lat.rank}", file=out)
    print(f"determinant: {lat.determinant}", file=out)
    print(f"integral: {_tf(integral)}", file=out)
    print(f"even: {_tf(integral and is_even(lat))}", file=out)
    print(f"unimodular: {_tf(is_unimodular(lat))}", file=out)
    if cfg.code is None:
        return EXIT_OK
    print(f"|C|: {cfg.code.size}", file=out)
    rep = verify_main_theorem(cfg.spec, cfg.code, lat)
    print(rep, file=out)
    return EXIT_OK if rep.passed else EXIT_MISMATCH


def cmd_identify(cfg: RunConfig, out=sys.stdout, expect: str | None = None) -> int:
    lat = _lattice(cfg)
    if not (is_integral(lat) and is_even(lat)):
        raise UsageError("root-system labels need an even lattice")
    label = root_system(lat)
    print(label, file=out)
    if expect is not None and not labels_equal(label, RootSystemLabel.parse(expect)):
        print(f"expected {expect}", file=out)
        return EXIT_MISMATCH
    return EXIT_OK


def cmd_oracle(cfg: RunConfig, out=sys.stdout, seed: int = 0) -> int:
    if cfg.spec is None:
        raise UsageError("--family and --n are required")
    rep = coset_oracle(cfg.spec, cfg.m or 1, seed=seed)
    print(rep, file=out)
    return EXIT_OK if rep.passed else EXIT_MISMATCH


def table_lines(only: str | None = None) -> tuple[list[str], int]:
    """One line per table row; returns the lines and the number of mismatches."""
    lines, bad = [], 0
    for row in fixtures.TABLE_ROWS:
        if only and row.table != only:
            continue
        head = f"{row.table:<10} {row.code_name:<22}"
        if not row.has_code:
            lines.append(f"{head} {'-':<10} {row.expected:<10} SKIP ({row.source})")
            continue
        label = root_system(build_gamma_c(row.spec, row.build()))
        ok = labels_equal(label, RootSystemLabel.parse(row.expected))
        bad += not ok
        lines.append(f"{head} {str(label):<10} {row.expected:<10} {'MATCH' if ok else 'MISMATCH'}")
    return lines, bad


def cmd_tables(cfg: RunConfig, out=sys.stdout, only: str | None = None) -> int:
    print(f"{'table':<10} {'code':<22} {'computed':<10} {'expected':<10} status", file=out)
    lines, bad = table_lines(only)
    if not lines:
        raise UsageError(f"no table named {only!r}")
    for line in lines:
        print(line, file=out)
    return EXIT_MISMATCH if bad else EXIT_OK


def cmd_theta(cfg: RunConfig, out=sys.stdout) -> int:
    lat = _lattice(cfg)
    bound = cfg.bound if cfg.bound is not None else Fraction(4)
    for norm, count in theta_coefficients(lat, bound):
        print(f"{norm} {count}", file=out)
    return EXIT_OK


def cmd_hilbert(args, out=sys.stdout) -> int:
    from . import hilbert as hb

    if args.action == "level":
        basis = hb.level_ideal(args.field)
        expected = hb._ideal_basis(hb.cyclotomic_field(args.field), hb.expected_level_generator(args.field))
        print(f"level ideal HNF (eta-coordinates): {basis.rows}", file=out)
        ok = basis == expected
        print("matches tabulated generator" if ok else "DIFFERS from tabulated generator", file=out)
        return EXIT_OK if ok else EXIT_MISMATCH
    if not args.code:
        raise UsageError("hilbert verify needs --code")
    code = load_code(args.code)
    if code.spec != hb.field_ring(args.field):
        raise UsageError(f"{args.field} needs a code over {hb.field_ring(args.field).name}")
    rep = hb.verify_theta_identity(args.field, code, Fraction(args.bound))
    print(rep, file=out)
    for t, c in rep.lhs.by_trace().items():
        print(f"  trace {t}: {c}", file=out)
    return EXIT_OK if rep.passed else EXIT_MISMATCH


def _add_spec(p: argparse.ArgumentParser, code: bool = True):
    p.add_argument("--family", required=True, choices=["A", "D", "E", "a", "d", "e"])
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--ring", help="F2u, F4 or F2xF2 for D_n with n even")
    if code:
        p.add_argument("--code", help="code file path or shipped fixture name")
        p.add_argument("--m", type=int, help="number of blocks when no code is given")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="adelattice", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build", help="write the HNF basis of Gamma_C")
    _add_spec(p)
    p.add_argument("--out")

    p = sub.add_parser("check", help="lattice properties against code conditions")
    _add_spec(p)

    p = sub.add_parser("identify", help="root-system label of an even lattice")
    _add_spec(p)
    p.add_argument("--expect")

    p = sub.add_parser("oracle", help="exhaustive coset checks of the integrality and evenness criteria")
    _add_spec(p, code=False)
    p.add_argument("--m", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("tables", help="regenerate the table rows")
    p.add_argument("--table", help="restrict to one table, e.g. A1/Z2")

    p = sub.add_parser("theta", help="theta coefficients up to a norm bound")
    _add_spec(p)
    p.add_argument("--bound", default="4")

    p = sub.add_parser("hilbert", help="cyclotomic models and theta series over K")
    p.add_argument("action", choices=["verify", "level"])
    p.add_argument("--field", required=True, choices=["zeta8", "zeta9"])
    p.add_argument("--code")
    p.add_argument("--bound", default="4")
    return ap


def main(argv: list[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        if args.command == "hilbert":
            return cmd_hilbert(args, out)
        cfg = RunConfig.from_args(args)
        if args.command == "build":
            return cmd_build(cfg, out)
        if args.command == "check":
            return cmd_check(cfg, out)
        if args.command == "identify":
            return cmd_identify(cfg, out, args.expect)
        if args.command == "oracle":
            return cmd_oracle(cfg, out, args.seed)
        if args.command == "tables":
            return cmd_tables(cfg, out, args.table)
        return cmd_theta(cfg, out)
    except (UsageError, cd.GuardError, ConstructionError, EnumerationError, RootLatticeError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
