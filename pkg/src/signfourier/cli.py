"""Command line interface.

Subcommands: sigma, table, thm1, thm2, ortho, render.  Exit codes: 0 on
success, 2 on argument errors, 1 when a verification subcommand finds a
pinned-invariant violation or an internal failure occurs.  The env var
SIGNFOURIER_THREADS overrides any --threads value.
"""

from __future__ import annotations

import argparse
import json
import sys

from .artifacts import RenderSpec, write_pgm, write_report
from .composite_shifts import (
    CLASS_RESIDUAL_R,
    SHIFT_ENVELOPE_C,
    ShiftQuery,
    InvalidQuery,
    analyze_shift,
    verify_grid,
)
from .orthopoly import SignGram, sign_gram_chebyshev, sign_gram_legendre
from .prime_estimates import analyze_modulus
from .residues import NotInvertible, OutOfRange
from .signs import sigma_exact
from .tables import CompositeModulus, SigmaTable, build_table

_USAGE_ERRORS = (
    InvalidQuery,
    CompositeModulus,
    NotInvertible,
    OutOfRange,
    ValueError,
    FileNotFoundError,
)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="signfourier",
        description="Exact sign-correlation sums of sampled cosine rows",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sigma", help="one correlation magnitude sigma(a, b)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--a", type=int, required=True)
    p.add_argument("--b", type=int, required=True)
    p.add_argument("--json", action="store_true", help="print the full record")

    p = sub.add_parser("table", help="sigma table as CSV (class mode for prime n)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--dense", action="store_true", help="force the dense mode")
    p.add_argument("--threads", default=None, help="worker count or 'auto'")
    p.add_argument("--fig", help="also render a matplotlib heatmap PNG")

    p = sub.add_parser("thm1", help="verify the prime-modulus estimates")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--max-d", type=int, default=25)
    p.add_argument("--ell-max", type=int, default=100000)
    p.add_argument("--out", help="write class reports as JSON")
    p.add_argument("--fig", help="also plot sigma vs class distance")

    p = sub.add_parser("thm2", help="verify the composite-shift class sums")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--a", type=int, help="single query frequency (needs --c)")
    p.add_argument("--c", type=int, help="single query shift (needs --a)")
    p.add_argument("--out", help="write reports as JSON")
    p.add_argument("--fig", help="also plot class sums vs predictions")

    p = sub.add_parser("ortho", help="orthogonal-polynomial sign Gram as CSV")
    p.add_argument("--kind", choices=("legendre", "chebyshev"), required=True)
    p.add_argument("--size", type=int, default=100)
    p.add_argument("--out", required=True)
    p.add_argument("--fig", help="also render a matplotlib heatmap PNG")

    p = sub.add_parser("render", help="byte-exact PGM image of a table or gram")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--input", help="table or gram CSV to render")
    src.add_argument("--n", type=int, help="build the sigma table to render")
    p.add_argument("--dense", action="store_true", help="force dense with --n")
    p.add_argument("--out", required=True)
    p.add_argument("--tau", type=float, default=0.05)
    p.add_argument("--gamma", type=float, default=1.0)
    p.add_argument("--mode", choices=("binary", "grayscale"), default="binary")
    p.add_argument("--no-invert", action="store_true", help="large = bright")
    return parser


def _cmd_sigma(args) -> int:
    rec = sigma_exact(args.a, args.b, args.n)
    if args.json:
        print(json.dumps({
            "n": rec.n,
            "a": rec.a,
            "b": rec.b,
            "raw": rec.raw,
            "sigma": rec.sigma,
            "class_distance": rec.class_distance,
        }))
    else:
        print(rec.sigma)
    return 0


def _cmd_table(args) -> int:
    table = build_table(args.n, "dense" if args.dense else None, args.threads)
    table.to_csv(args.out)
    print(f"wrote {table.mode} table for n={table.n} to {args.out}")
    if args.fig:
        from . import figures

        figures.sigma_heatmap(table, args.fig)
        print(f"wrote figure to {args.fig}")
    return 0


def _cmd_thm1(args) -> int:
    reports, violations = analyze_modulus(args.n, args.max_d, args.ell_max)
    if args.out:
        write_report([r.to_dict() for r in reports], "json", args.out)
        print(f"wrote {len(reports)} class reports to {args.out}")
    if args.fig:
        from . import figures

        figures.estimate_profile(reports, args.fig)
        print(f"wrote figure to {args.fig}")
    print(f"n={args.n}: {len(reports)} classes reported, {len(violations)} violations")
    for v in violations:
        print(f"  violation: {v}", file=sys.stderr)
    return 1 if violations else 0


def _cmd_thm2(args) -> int:
    if (args.a is None) != (args.c is None):
        raise InvalidQuery("--a and --c must be given together")
    if args.a is not None:
        reports = [analyze_shift(ShiftQuery(n=args.n, p=args.p, a=args.a, c=args.c))]
        violations = []
        rep = reports[0]
        if abs(rep.record.residual) > SHIFT_ENVELOPE_C * args.p:
            violations.append(f"main envelope: S={rep.record.s}")
        for crep in rep.classes:
            if abs(crep.residual) > CLASS_RESIDUAL_R:
                violations.append(f"class residual: i={crep.i}")
        payload = rep.to_dict()
    else:
        reports, violations, worst_c, worst_r = verify_grid(args.n, args.p)
        payload = [r.to_dict() for r in reports]
        print(
            f"worst main-term ratio {float(worst_c):.4f} (<= {SHIFT_ENVELOPE_C}), "
            f"worst class residual {float(worst_r):.4f} (<= {CLASS_RESIDUAL_R})"
        )
    if args.out:
        write_report(payload, "json", args.out)
        print(f"wrote {len(reports)} reports to {args.out}")
    if args.fig:
        from . import figures

        figures.class_residuals(reports, args.fig)
        print(f"wrote figure to {args.fig}")
    print(f"n={args.n} p={args.p}: {len(reports)} queries, {len(violations)} violations")
    for v in violations:
        print(f"  violation: {v}", file=sys.stderr)
    return 1 if violations else 0


def _cmd_ortho(args) -> int:
    gram = (
        sign_gram_legendre(args.size)
        if args.kind == "legendre"
        else sign_gram_chebyshev(args.size)
    )
    gram.to_csv(args.out)
    print(f"wrote {args.kind} sign Gram N={args.size} to {args.out}")
    if args.fig:
        from . import figures

        figures.gram_heatmap(gram, args.fig)
        print(f"wrote figure to {args.fig}")
    return 0


def _sniff_csv(path: str):
    with open(path) as fh:
        head = fh.readline().strip()
    if head == "n,mode":
        return SigmaTable.from_csv(path)
    if head == "kind,N":
        return SignGram.from_csv(path)
    raise ValueError(f"unrecognized CSV header {head!r} in {path}")


def _cmd_render(args) -> int:
    obj = _sniff_csv(args.input) if args.input else build_table(
        args.n, "dense" if args.dense else None
    )
    spec = RenderSpec(
        tau=args.tau, gamma=args.gamma, mode=args.mode, invert=not args.no_invert
    )
    data = write_pgm(obj, args.out, spec)
    print(f"wrote {len(data)} bytes to {args.out}")
    return 0


_COMMANDS = {
    "sigma": _cmd_sigma,
    "table": _cmd_table,
    "thm1": _cmd_thm1,
    "thm2": _cmd_thm2,
    "ortho": _cmd_ortho,
    "render": _cmd_render,
}


def run(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except _USAGE_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # internal failure
        print(f"internal error: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
