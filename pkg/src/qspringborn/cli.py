"""Command-line interface.

Exit codes: 0 success, 1 verification failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys
from fractions import Fraction
from typing import Any, Sequence

from .errors import PreconditionError, QError
from .farey import KINDS, q_farey_add, q_farey_det
from .geom import disk_of, homothety_numeric, render_svg
from .markov import (
    MAX_DEPTH,
    check_markov_cf,
    check_q_markov,
    companion,
    companion_identity_check,
    companion_springborn_check,
    first_markov_fractions,
    iter_nodes,
    markov_tree,
)
from .qrat import Frac, epsilon, quantize
from .springborn import main_theorem_check, regularity, springborn_diff, springborn_sum
from .verify import SUITES, run_suite

SCHEMA = 1
EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

# Allow "-3/2" and "-1..3" as positional values rather than options.
_NEGATIVE = re.compile(r"^-\d+(/\d+)?$|^-\d*\.\d+$|^-[\d/.]+\.\.")


class _Parser(argparse.ArgumentParser):
    def __init__(self, *args, **kwargs):
        super().__init__(*args, **kwargs)
        self._negative_number_matcher = _NEGATIVE


class UsageError(Exception):
    pass


def _frac(text: str) -> Frac:
    try:
        return Frac.parse(text)
    except (ValueError, ZeroDivisionError, QError) as exc:
        raise argparse.ArgumentTypeError(f"not a fraction: {text!r}") from exc


def _range(text: str) -> tuple[Fraction, Fraction]:
    lo, sep, hi = text.partition("..")
    if not sep:
        raise argparse.ArgumentTypeError(f"range must look like lo..hi, got {text!r}")
    try:
        return Fraction(lo), Fraction(hi)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"bad range {text!r}") from exc


def _positive(text: str) -> int:
    try:
        n = int(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from exc
    if n <= 0:
        raise argparse.ArgumentTypeError(f"must be positive, got {n}")
    return n


def _color(text: str, code: str) -> str:
    if os.environ.get("NO_COLOR") or not sys.stdout.isatty():
        return text
    return f"\033[{code}m{text}\033[0m"


def _emit_json(payload: dict[str, Any]) -> None:
    print(json.dumps({"schema": SCHEMA, **payload}, indent=2, sort_keys=True))


# --- commands ---------------------------------------------------------------------------


def cmd_quantize(args) -> int:
    sides = ("sharp", "flat") if args.side == "both" else (args.side,)
    results = {side: quantize(args.x, side) for side in sides}
    if args.json:
        payload = {"x": str(args.x), **{s: r.to_json() for s, r in results.items()}}
        if not args.x.is_inf:
            payload["epsilon"] = epsilon(args.x)
        _emit_json(payload)
        return EXIT_OK
    mark = {"sharp": "#", "flat": "b"}
    for side, r in results.items():
        print(f"[{args.x}]{mark[side]} = ({r.num}) / ({r.den})")
    return EXIT_OK


def cmd_qfarey_det(args) -> int:
    kinds = KINDS if args.kind == "all" else (args.kind,)
    dets = {k: q_farey_det(args.x, args.y, k) for k in kinds}
    if args.json:
        _emit_json({"x": str(args.x), "y": str(args.y), "det": {k: str(v) for k, v in dets.items()}})
    else:
        for k, v in dets.items():
            print(f"d_F^{k}({args.x}, {args.y}) = {v}")
    return EXIT_OK


def cmd_qfarey_add(args) -> int:
    r = q_farey_add(args.x, args.y, args.side, args.slots, difference=args.difference)
    op = "diff" if args.difference else "sum"
    if args.json:
        _emit_json(
            {
                "x": str(args.x),
                "y": str(args.y),
                "op": op,
                "slots": args.slots,
                "result": r.result.to_json(),
                "alpha": r.alpha,
                "beta": r.beta,
                "sign": r.sign,
                "solutions": r.solutions,
            }
        )
    else:
        print(f"q-Farey {op} of {args.x}, {args.y} ({args.slots} -> {args.side}) = {r.result}")
        print(f"alpha = {r.alpha}, beta = {r.beta}, sign = {r.sign:+d}, solutions = {r.solutions}")
    return EXIT_OK


def cmd_springborn(args) -> int:
    x, y = args.x, args.y
    if args.op == "check":
        reg = regularity(x, y)
        rep = main_theorem_check(x, y)
        if args.json:
            _emit_json(
                {
                    "x": str(x),
                    "y": str(y),
                    "d_F": reg.d_f,
                    "inner_regular": reg.inner,
                    "outer_regular": reg.outer,
                    "inner": rep.inner,
                    "outer": rep.outer,
                }
            )
        else:
            print(f"d_F = {reg.d_f}, inner regular = {reg.inner}, outer regular = {reg.outer}")
            print(f"inner: {rep.inner}")
            print(f"outer: {rep.outer}")
        return EXIT_FAIL if "fails" in (rep.inner, rep.outer) and (reg.inner or reg.outer) else EXIT_OK
    op, side, mode = (
        (springborn_sum, "sharp", "inner") if args.op == "sum" else (springborn_diff, "flat", "outer")
    )
    z = op(x, y)
    r = quantize(z, side)
    payload: dict[str, Any] = {"x": str(x), "y": str(y), "op": args.op, "result": str(z), "q_result": r.to_json()}
    if args.q is not None:
        numeric = homothety_numeric(disk_of(x, args.q), disk_of(y, args.q), mode)
        payload.update(q=args.q, homothety=numeric, q_value=r(args.q))
    if args.json:
        _emit_json(payload)
        return EXIT_OK
    print(f"{x} {'(+)' if args.op == 'sum' else '(-)'}_S {y} = {z}")
    print(f"[{z}]{'#' if side == 'sharp' else 'b'} = ({r.num}) / ({r.den})")
    if args.q is not None:
        print(f"{mode} homothety centre at q={args.q}: {payload['homothety']:.12g}")
        print(f"q-rational at q={args.q}: {payload['q_value']:.12g}")
    return EXIT_OK


def cmd_markov_tree(args) -> int:
    root = markov_tree(args.depth)
    nodes = list(iter_nodes(root))
    checks = {}
    ok = True
    if args.check_q:
        for n in nodes:
            res = check_q_markov(n)
            res["cf"] = check_markov_cf(n)
            checks[n.triple] = res
            ok = ok and all(res.values())
    if args.json:
        _emit_json(
            {
                "depth": args.depth,
                "nodes": [
                    {
                        "depth": n.depth,
                        "triple": [str(x) for x in n.triple],
                        **({"checks": checks[n.triple]} if args.check_q else {}),
                    }
                    for n in nodes
                ],
                "ok": ok,
            }
        )
    else:
        for n in nodes:
            line = "  " * (n.depth - 1) + "(" + ", ".join(str(x) for x in n.triple) + ")"
            if args.check_q:
                bad = [k for k, v in checks[n.triple].items() if not v]
                line += "  " + (_color("ok", "32") if not bad else _color("FAIL " + ",".join(bad), "31"))
            print(line)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_markov_companions(args) -> int:
    sources = [args.x] if args.x is not None else first_markov_fractions(5)
    rows = []
    ok = True
    for x in sources:
        comps = [str(companion(x, k)) for k in range(1, args.count + 1)]
        row: dict[str, Any] = {"x": str(x), "companions": comps}
        if args.verify:
            diffs = all(
                companion_springborn_check(x, k, l)
                for k in range(1, args.count)
                for l in range(1, args.count - k + 1)
                if k != l
            )
            row["springborn_difference"] = diffs
            row["u_identity"] = companion_identity_check(x.den)
            ok = ok and diffs and row["u_identity"]
        rows.append(row)
    if args.json:
        _emit_json({"rows": rows, "ok": ok})
    else:
        for row in rows:
            line = f"{row['x']}: " + ", ".join(row["companions"])
            if args.verify:
                good = row["springborn_difference"] and row["u_identity"]
                line += "  " + (_color("ok", "32") if good else _color("FAIL", "31"))
            print(line)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_render(args) -> int:
    lo, hi = args.range
    svg = render_svg(
        args.q,
        lo,
        hi,
        args.max_den,
        tangents=tuple(args.tangents) if args.tangents else None,
        domain=args.domain,
    )
    if args.output in (None, "-"):
        sys.stdout.write(svg)
    else:
        try:
            with open(args.output, "w", encoding="utf-8", newline="\n") as fh:
                fh.write(svg)
        except OSError as exc:
            print(f"error: cannot write {args.output}: {exc}", file=sys.stderr)
            return EXIT_FAIL
        print(f"wrote {args.output}")
    return EXIT_OK


def cmd_verify(args) -> int:
    kwargs: dict[str, Any] = {
        "max_den": args.max_den,
        "max_num": args.max_num,
        "depth": args.depth,
        "q": args.q,
    }
    if args.range is not None:
        lo, hi = args.range
        if lo.denominator != 1 or hi.denominator != 1:
            raise UsageError("verify ranges take integer bounds")
        kwargs.update(lo=int(lo), hi=int(hi))
    res = run_suite(args.suite, **kwargs)
    if args.json:
        _emit_json(res.to_json())
    else:
        status = _color("PASS", "32") if res.ok else _color("FAIL", "31")
        print(f"{status} {res.name}: {res.checked} checks, {len(res.failures)} failures")
        for k, v in res.notes.items():
            print(f"  {k}: {json.dumps(v)}")
        if not res.ok:
            print("first counterexample:")
            print(json.dumps(res.failures[0], indent=2, sort_keys=True))
    return EXIT_OK if res.ok else EXIT_FAIL


# --- parser ----------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="qspringborn", description="q-deformed rationals, Springborn operations and Markov fractions")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp):
        sp.add_argument("--json", action="store_true", help="machine-readable output")
        return sp

    sp = common(sub.add_parser("quantize", help="right/left q-version of a rational"))
    sp.add_argument("x", type=_frac)
    sp.add_argument("--side", choices=("sharp", "flat", "both"), default="both")
    sp.set_defaults(func=cmd_quantize)

    qf = sub.add_parser("qfarey", help="q-Farey determinants and additions")
    qsub = qf.add_subparsers(dest="qfarey_cmd", required=True, parser_class=_Parser)
    sp = common(qsub.add_parser("det"))
    sp.add_argument("x", type=_frac)
    sp.add_argument("y", type=_frac)
    sp.add_argument("--kind", choices=KINDS + ("all",), default="all")
    sp.set_defaults(func=cmd_qfarey_det)
    sp = common(qsub.add_parser("add"))
    sp.add_argument("x", type=_frac)
    sp.add_argument("y", type=_frac)
    sp.add_argument("--side", choices=("sharp", "flat"), default="sharp")
    sp.add_argument("--kind", "--slots", dest="slots", choices=KINDS, default="ss")
    sp.add_argument("--difference", action="store_true")
    sp.set_defaults(func=cmd_qfarey_add)

    sp = common(sub.add_parser("springborn", help="Springborn sum/difference and their q-versions"))
    sp.add_argument("op", choices=("sum", "diff", "check"))
    sp.add_argument("x", type=_frac)
    sp.add_argument("y", type=_frac)
    sp.add_argument("--q", type=float, help="also compare with the numeric homothety centre at q")
    sp.set_defaults(func=cmd_springborn)

    mk = sub.add_parser("markov", help="rational Markov tree and companions")
    msub = mk.add_subparsers(dest="markov_cmd", required=True, parser_class=_Parser)
    sp = common(msub.add_parser("tree"))
    sp.add_argument("--depth", type=_positive, default=3)
    sp.add_argument("--check-q", action="store_true")
    sp.set_defaults(func=cmd_markov_tree)
    sp = common(msub.add_parser("companions"))
    sp.add_argument("x", type=_frac, nargs="?", help="defaults to the first five Markov fractions")
    sp.add_argument("--count", type=_positive, default=7, help="number of companions")
    sp.add_argument("--verify", action="store_true")
    sp.set_defaults(func=cmd_markov_companions)

    rd = sub.add_parser("render", help="SVG output")
    rsub = rd.add_subparsers(dest="render_cmd", required=True, parser_class=_Parser)
    sp = rsub.add_parser("disks")
    sp.add_argument("--q", type=float, default=0.45)
    sp.add_argument("--range", type=_range, default=(Fraction(-1), Fraction(3)))
    sp.add_argument("--max-den", type=_positive, default=20)
    sp.add_argument("--tangents", nargs=2, type=_frac, metavar=("X", "Y"))
    sp.add_argument("--domain", action="store_true")
    sp.add_argument("-o", "--output")
    sp.set_defaults(func=cmd_render)

    sp = common(sub.add_parser("verify", help="run an invariant suite"))
    sp.add_argument("suite", choices=tuple(SUITES))
    sp.add_argument("--max-den", type=_positive)
    sp.add_argument("--max-num", type=_positive)
    sp.add_argument("--range", type=_range)
    sp.add_argument("--q", type=float)
    sp.add_argument("--depth", type=_positive)
    sp.set_defaults(func=cmd_verify)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if getattr(args, "depth", None) is not None and args.depth > MAX_DEPTH:
        print(f"error: depth must be at most {MAX_DEPTH}", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args)
    except (UsageError, PreconditionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except QError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
