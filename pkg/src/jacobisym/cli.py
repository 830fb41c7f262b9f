"""Command-line interface: ``jacobisym {compute,verify,table} TARGET [options]``.

Exit codes: 0 success, 1 verification failure, 2 input error, 3 parameters
failed certification.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import deformed as dfm
from .core import (
    CertificationError,
    deformed_h,
    draw_generic_params,
    eigenvalue_of,
    finite_h,
    format_partition,
    format_rational,
    make_context,
    parse_partition,
    parse_rational,
    partitions_upto,
    weight,
)
from .eigenfunctions import jack_k, jacobi, jacobi_zero_closed
from .interpolation import interpolation_comb
from .pieri import InadmissibleShiftError, SignedShift, admissible_shifts, pieri_coeff_r1
from .suites import SUITES, SuiteOptions, run_suite

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_CERT = 0, 1, 2, 3

COMPUTE_TARGETS = ("jacobi", "jack", "super-jacobi", "super-jack", "interpolation", "pieri-coeff", "eval-zero")
TABLE_TARGETS = ("eval-zero", "eigenvalues", "pieri-coeffs")

VALUE_FLAGS = {
    "--partition", "--k", "--p", "--q", "--h", "--N", "--m", "--n", "--max-weight", "--r",
    "--seed", "--trials", "--jobs", "--format", "--output", "--mutate", "--shift",
}


class InputError(ValueError):
    pass


def _join_negative_values(argv: list[str]) -> list[str]:
    """Rewrite ``--k -3/7`` as ``--k=-3/7`` so values may start with a minus sign."""
    out, i = [], 0
    while i < len(argv):
        tok = argv[i]
        if tok in VALUE_FLAGS and i + 1 < len(argv) and argv[i + 1].startswith("-") and argv[i + 1] not in VALUE_FLAGS:
            out.append(f"{tok}={argv[i + 1]}")
            i += 2
        else:
            out.append(tok)
            i += 1
    return out


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="jacobisym", description="Exact Jacobi symmetric functions and super Jacobi polynomials.")
    sub = ap.add_subparsers(dest="verb", required=True)

    def common(p: argparse.ArgumentParser):
        p.add_argument("--partition", default=None, help="comma-separated parts; '' is the empty partition")
        for name in ("k", "p", "q", "h"):
            p.add_argument(f"--{name}", default=None, help=f"rational parameter {name}")
        p.add_argument("--N", type=int, default=None, help="number of variables (finite locus)")
        p.add_argument("--m", type=int, default=None)
        p.add_argument("--n", type=int, default=None)
        p.add_argument("--max-weight", type=int, default=None)
        p.add_argument("--r", type=int, default=None)
        p.add_argument("--seed", type=int, action="append", default=None, help="parameter seed (repeatable)")
        p.add_argument("--trials", type=int, default=3)
        p.add_argument("--jobs", type=int, default=1)
        p.add_argument("--format", choices=("json", "tsv", "text"), default="json")
        p.add_argument("--output", default=None, help="write to FILE instead of stdout")
        p.add_argument("--shift", default=None, help="signed shift such as +e1, -e2, +d1")
        p.add_argument("--mutate", default=None, help=argparse.SUPPRESS)

    common(sub.add_parser("compute", help="compute one object"))
    sub.choices["compute"].add_argument("target", choices=COMPUTE_TARGETS)
    common(sub.add_parser("verify", help="run a verification suite"))
    sub.choices["verify"].add_argument("target", choices=SUITES + ("all",))
    common(sub.add_parser("table", help="print a table"))
    sub.choices["table"].add_argument("target", choices=TABLE_TARGETS)
    return ap


# ---------------------------------------------------------------------------
# argument helpers


def _rat(args, name: str, required: bool = True) -> Fraction | None:
    raw = getattr(args, name)
    if raw is None:
        if required:
            raise InputError(f"--{name} is required")
        return None
    try:
        return parse_rational(raw)
    except ValueError as exc:
        raise InputError(str(exc)) from exc


def _partition(args, required: bool = True):
    if args.partition is None:
        if required:
            raise InputError("--partition is required")
        return None
    try:
        return parse_partition(args.partition)
    except ValueError as exc:
        raise InputError(str(exc)) from exc


def _parse_shift(text: str) -> tuple[str, int, int]:
    t = text.strip()
    if len(t) < 3 or t[0] not in "+-" or t[1] not in "ed" or not t[2:].isdigit() or int(t[2:]) < 1:
        raise InputError(f"malformed shift {text!r} (expected e.g. +e1, -d2)")
    return t[1], int(t[2:]), 1 if t[0] == "+" else -1


def _format_shift(kind: str, i: int, s: int) -> str:
    return f"{'+' if s > 0 else '-'}{kind}{i}"


def _params(args, d: int):
    """(k, p, q, h) from explicit flags, from --N / --m,--n, or from the first seed."""
    k = _rat(args, "k", required=False)
    if k is None:
        if args.seed:
            ctx = draw_generic_params(args.seed[0], d)
            if args.N is not None or args.h is not None:
                raise InputError("--N/--h need explicit --k --p --q")
            return ctx
        raise InputError("give --k --p --q (and --h or --N) or --seed")
    p, q = _rat(args, "p"), _rat(args, "q")
    h = _rat(args, "h", required=False)
    if h is None:
        if args.N is None:
            raise InputError("give --h or --N")
        if args.N < 1:
            raise InputError("--N must be positive")
        h = finite_h(k, p, q, args.N)
    elif args.N is not None and h != finite_h(k, p, q, args.N):
        raise InputError("--h disagrees with --N")
    return make_context(k, p, q, h, d)


def _need_mn(args) -> tuple[int, int]:
    if args.m is None or args.n is None:
        raise InputError("--m and --n are required")
    if args.m < 0 or args.n < 0:
        raise InputError("--m and --n must be nonnegative")
    return args.m, args.n


def _super_params(args):
    m, n = _need_mn(args)
    if args.h is not None or args.N is not None:
        raise InputError("super targets derive h from --m, --n; do not pass --h or --N")
    k, p, q = _rat(args, "k"), _rat(args, "p"), _rat(args, "q")
    return m, n, k, p, q


# ---------------------------------------------------------------------------
# output


def _emit(args, payload, text: str | None = None, rows: list[list[str]] | None = None, header: list[str] | None = None):
    if args.format == "json" or (args.format == "tsv" and rows is None):
        out = json.dumps(payload, indent=None if isinstance(payload, str) else 2)
    elif args.format == "tsv":
        out = "\n".join("\t".join(r) for r in ([header] if header else []) + rows)
    else:
        if rows is not None:
            table = ([header] if header else []) + rows
            widths = [max(len(r[c]) for r in table) for c in range(len(table[0]))]
            out = "\n".join("  ".join(cell.ljust(w) for cell, w in zip(r, widths)).rstrip() for r in table)
        else:
            out = text if text is not None else json.dumps(payload, indent=2)
    out += "\n"
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(out)
    else:
        sys.stdout.write(out)


def _symfunc_text(f) -> str:
    if f.is_zero():
        return "0"
    sym = "m" if f.basis == "m" else "p"
    return " + ".join(f"({format_rational(c)})*{sym}[{format_partition(lam)}]" for lam, c in f.sorted_terms())


# ---------------------------------------------------------------------------
# verbs


def cmd_compute(args) -> int:
    target = args.target
    if target == "jacobi":
        lam = _partition(args)
        ctx = _params(args, max(weight(lam), 1))
        J = jacobi(lam, ctx)
        _emit(args, J.to_json(), _symfunc_text(J))
    elif target == "jack":
        lam = _partition(args)
        k = _rat(args, "k")
        try:
            P = jack_k(lam, k)
        except ZeroDivisionError as exc:
            raise CertificationError(f"Jack polynomial undefined at k={format_rational(k)}") from exc
        _emit(args, P.to_json(), _symfunc_text(P))
    elif target in ("super-jacobi", "super-jack"):
        lam = _partition(args)
        m, n, k, p, q = _super_params(args)
        if not dfm.in_hook(lam, m, n):
            raise InputError(f"partition {format_partition(lam) or '()'} is not in the fat ({m},{n})-hook")
        if target == "super-jacobi":
            make_context(k, p, q, deformed_h(k, p, q, m, n), max(weight(lam), 6))
            P = dfm.super_jacobi(lam, m, n, k, p, q)
        else:
            P = dfm.super_jack(lam, m, n, k)
        _emit(args, P.to_json(), P.to_text())
    elif target == "interpolation":
        lam = _partition(args)
        k, h = _rat(args, "k"), _rat(args, "h")
        N = args.N if args.N is not None else max(len(lam), 1)
        if N < len(lam):
            raise InputError("--N must be at least the length of the partition")
        P = interpolation_comb(lam, N, k, h)
        _emit(args, P.to_json(), P.to_text())
    elif target == "pieri-coeff":
        lam = _partition(args)
        if args.m is not None or args.n is not None:
            m, n, k, p, q = _super_params(args)
            if not dfm.in_hook(lam, m, n):
                raise InputError("partition is not in the fat hook")
            moves = [_parse_shift(args.shift)] if args.shift else [b for b, _ in dfm.admissible_moves(lam, m, n)]
            out = {}
            for beta in moves:
                try:
                    out[_format_shift(*beta)] = format_rational(dfm.deformed_pieri_coeff(lam, beta, m, n, k, p, q))
                except dfm.InadmissibleMoveError as exc:
                    raise InputError(str(exc)) from exc
        else:
            ctx = _params(args, weight(lam) + 1)
            if args.shift:
                kind, i, s = _parse_shift(args.shift)
                if kind != "e":
                    raise InputError("only e-shifts exist without --m/--n")
                shifts = [SignedShift(i, s)]
            else:
                shifts = admissible_shifts(lam)
            out = {}
            for sh in shifts:
                try:
                    out[_format_shift("e", sh.index, sh.sign)] = format_rational(pieri_coeff_r1(lam, sh, ctx))
                except InadmissibleShiftError as exc:
                    raise InputError(str(exc)) from exc
        payload = next(iter(out.values())) if args.shift else out
        _emit(args, payload, "\n".join(f"{a}\t{b}" for a, b in out.items()))
    elif target == "eval-zero":
        lam = _partition(args)
        if args.m is not None or args.n is not None:
            m, n, k, p, q = _super_params(args)
            if not dfm.in_hook(lam, m, n):
                raise InputError("partition is not in the fat hook")
            value = dfm.super_jacobi_zero_product(lam, m, n, k, p, q)
        else:
            value = jacobi_zero_closed(lam, _params(args, max(weight(lam), 1)))
        _emit(args, format_rational(value), format_rational(value))
    return EXIT_OK


def cmd_table(args) -> int:
    target = args.target
    if target == "pieri-coeffs":
        lam = _partition(args)
        ctx = _params(args, weight(lam) + 1)
        rows = []
        for sh in admissible_shifts(lam):
            rows.append([
                _format_shift("e", sh.index, sh.sign),
                format_partition(sh.apply(lam)),
                format_rational(pieri_coeff_r1(lam, sh, ctx)),
            ])
        header = ["shift", "target", "coefficient"]
    else:
        d = args.max_weight if args.max_weight is not None else 3
        if d < 0:
            raise InputError("--max-weight must be nonnegative")
        ctx = _params(args, max(d, 1))
        fn = (lambda lam: jacobi_zero_closed(lam, ctx)) if target == "eval-zero" else (
            lambda lam: eigenvalue_of(lam, ctx.k, ctx.h)
        )
        rows = [[format_partition(lam), format_rational(fn(lam))] for lam in partitions_upto(d)]
        header = ["partition", "value"]
    payload = {"target": target, "params": ctx.describe(), "columns": header, "rows": rows}
    _emit(args, payload, rows=rows, header=header)
    return EXIT_OK


def cmd_verify(args) -> int:
    opts = SuiteOptions(
        max_weight=args.max_weight,
        m=args.m,
        n=args.n,
        N=args.N,
        r=args.r,
        seeds=tuple(args.seed) if args.seed else (42,),
        trials=args.trials,
        jobs=max(1, args.jobs),
    )
    if args.k is not None:
        k, p, q, h = _rat(args, "k"), _rat(args, "p"), _rat(args, "q"), _rat(args, "h")
        opts.params = (k, p, q, h)
    if args.mutate:
        kind, i, s = _parse_shift(args.mutate)
        opts.mutate = SignedShift(i, s)
    names = SUITES if args.target == "all" else (args.target,)
    reports = [run_suite(name, opts) for name in names]
    passed = all(not r["failures"] for r in reports)
    if len(reports) == 1:
        payload = {**reports[0], "passed": passed}
    else:
        payload = {"suite": "all", "passed": passed, "reports": reports}
    text = "\n".join(
        f"{r['suite']}: {'PASS' if not r['failures'] else 'FAIL'} ({r['cases']} cases, {len(r['failures'])} failures)"
        for r in reports
    )
    _emit(args, payload, text)
    return EXIT_OK if passed else EXIT_FAIL


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(_join_negative_values(argv))
    except SystemExit as exc:
        return EXIT_INPUT if exc.code not in (0, None) else EXIT_OK
    handler = {"compute": cmd_compute, "verify": cmd_verify, "table": cmd_table}[args.verb]
    try:
        return handler(args)
    except CertificationError as exc:
        print(f"error: parameters not certified: {exc}", file=sys.stderr)
        return EXIT_CERT
    except (InputError, dfm.FatHookError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
