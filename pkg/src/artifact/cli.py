"""Command-line front end. JSON on stdout, structured errors, stable exit codes.

    artifact analyze --p 2 --minpoly "x^6+3*x^5+6*x^4+3*x^3+9*x+9"
    artifact value   --p 3 --minpoly "..." --expr "x"
    artifact digits  --p 5 --poly "x^3-2" --root 3 --n 4
    artifact branches --p 5 --minpoly "..."
    artifact selftest
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional, Sequence

from .approx import DEFAULT_IMMEDIATE_DEPTH, analyze, value_adaptive
from .errors import ArtifactError, NonConvergent, ParseError
from .exactnum import value_to_json
from .padic import DEFAULT_PRECISION, BranchOracle, hensel_root
from .polyring import format_poly, parse_poly
from .residue import is_prime
from .selftest import run_selftest

DEFAULT_SEED = 0
VALUE_MAX_DEPTH = 64


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ParseError(message)


def _prime(text: str) -> int:
    try:
        p = int(text)
    except ValueError as exc:
        raise ParseError(f"--p expects an integer, got {text!r}") from exc
    if not is_prime(p):
        raise ParseError(f"{p} is not prime")
    return p


def _build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="artifact", description="Key polynomials and p-adic valuations of simple extensions.")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp):
        sp.add_argument("--p", required=True, type=_prime, help="prime")
        sp.add_argument("--minpoly", required=True, help="monic minimal polynomial, e.g. 'x^2+1'")
        sp.add_argument("--branch", type=int, default=0, help="branch index (default 0)")
        sp.add_argument("--immediate-depth", type=int, default=DEFAULT_IMMEDIATE_DEPTH)
        sp.add_argument("--seed", type=int, default=DEFAULT_SEED)
        sp.add_argument("--precision", type=int, default=DEFAULT_PRECISION, help="initial p-adic digits")
        sp.add_argument("--pretty", action="store_true", help="indented output")

    a = sub.add_parser("analyze", help="build the key polynomial chain of a branch")
    common(a)
    a.add_argument("--all-branches", action="store_true")

    v = sub.add_parser("value", help="value of a polynomial expression in the generator")
    common(v)
    v.add_argument("--expr", required=True)

    d = sub.add_parser("digits", help="p-adic digits of a simple root")
    d.add_argument("--p", required=True, type=_prime)
    d.add_argument("--poly", required=True)
    d.add_argument("--root", required=True, type=int)
    d.add_argument("--n", required=True, type=int)
    d.add_argument("--seed", type=int, default=DEFAULT_SEED)
    d.add_argument("--pretty", action="store_true")

    b = sub.add_parser("branches", help="coprime factor groups of the minimal polynomial mod p")
    b.add_argument("--p", required=True, type=_prime)
    b.add_argument("--minpoly", required=True)
    b.add_argument("--seed", type=int, default=DEFAULT_SEED)
    b.add_argument("--pretty", action="store_true")

    s = sub.add_parser("selftest", help="run the fixture suite")
    s.add_argument("--seed", type=int, default=DEFAULT_SEED)
    s.add_argument("--pretty", action="store_true")
    return ap


def _minpoly(text: str):
    f = parse_poly(text)
    if f.degree < 2:
        raise ParseError(f"minimal polynomial {text!r} must have degree at least 2")
    return f


def _oracle(args, branch=None) -> BranchOracle:
    return BranchOracle(
        args.p,
        _minpoly(args.minpoly),
        args.branch if branch is None else branch,
        precision=args.precision,
        seed=args.seed,
    )


def _unfinished(o: BranchOracle, seed: int, exc: NonConvergent) -> dict:
    return {
        "prime": o.p,
        "minpoly": format_poly(o.minpoly),
        "branch": o.branch,
        "truncated": True,
        "nonconvergent": str(exc),
        "seed": seed,
    }


def _analyze_json(o: BranchOracle, args) -> dict:
    try:
        return analyze(o, args.immediate_depth, seed=args.seed).to_json()
    except NonConvergent as exc:
        return _unfinished(o, args.seed, exc)


def _cmd_analyze(args) -> dict:
    if args.all_branches:
        first = _oracle(args)
        oracles = [first] + [_oracle(args, b) for b in range(1, first.branch_count)]
        return {"seed": args.seed, "branches": [_analyze_json(o, args) for o in oracles]}
    return _analyze_json(_oracle(args), args)


def _cmd_value(args) -> dict:
    o = _oracle(args)
    g = parse_poly(args.expr)
    try:
        report = analyze(o, args.immediate_depth, seed=args.seed)
        v = value_adaptive(report, g, max_depth=max(VALUE_MAX_DEPTH, args.immediate_depth))
    except NonConvergent as exc:
        out = _unfinished(o, args.seed, exc)
        out["expr"] = format_poly(g)
        return out
    return {
        "prime": o.p,
        "minpoly": format_poly(o.minpoly),
        "branch": o.branch,
        "expr": format_poly(g),
        "value": value_to_json(v),
        "seed": args.seed,
    }


def _cmd_digits(args) -> dict:
    if args.n < 0:
        raise ParseError("--n must be non-negative")
    x = hensel_root(parse_poly(args.poly), args.p, args.root, args.n + 1)
    return {
        "p": args.p,
        "poly": format_poly(parse_poly(args.poly)),
        "root": args.root % args.p,
        "digits": x.digits(),
        "partial_sums": x.partial_sums(),
        "seed": args.seed,
    }


def _cmd_branches(args) -> dict:
    o = BranchOracle(args.p, _minpoly(args.minpoly), 0, seed=args.seed)
    return {
        "prime": args.p,
        "minpoly": format_poly(o.minpoly),
        "branches": [
            {"index": i, "residual_factor": str(phi), "multiplicity": k, "local_degree": phi.degree * k}
            for i, (phi, k) in enumerate(o.groups)
        ],
        "seed": args.seed,
    }


def _emit(obj, pretty: bool, stream=None):
    stream = stream or sys.stdout
    if pretty:
        stream.write(json.dumps(obj, indent=2, sort_keys=True, ensure_ascii=False) + "\n")
    else:
        stream.write(json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=False) + "\n")


def main(argv: Optional[Sequence[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    pretty = "--pretty" in argv
    try:
        args = _build_parser().parse_args(argv)
        if args.command == "selftest":
            out = run_selftest(args.seed)
            _emit(out, pretty)
            return 0 if not out["failed"] else 1
        handler = {
            "analyze": _cmd_analyze,
            "value": _cmd_value,
            "digits": _cmd_digits,
            "branches": _cmd_branches,
        }[args.command]
        _emit(handler(args), pretty)
        return 0
    except ArtifactError as exc:
        _emit({"error": {"kind": exc.kind, "message": str(exc)}}, pretty)
        return exc.exit_code
    except (ValueError, ZeroDivisionError) as exc:
        _emit({"error": {"kind": "InvalidInput", "message": str(exc)}}, pretty)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
