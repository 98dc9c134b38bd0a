"""Command-line front end: ``weiljet <command> ...`` prints one JSON document.

Points on the command line use ";" between tuple slots and "," between
coordinates, e.g. ``--v "2,1;1,0;0,0"``.  Numbers are exact strings such as
``3`` or ``-1/2``.  Exit codes: 0 success, 1 parse error, 2 domain or
non-singularity error, 3 flag misuse, 4 a verification suite failed.
Errors go to stderr as ``{"error": {"kind": ..., "detail": ...}}``.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import cubic, jets, simplicial
from .errors import (ArityMismatch, DomainError, ExactRingRequired, NonsingularRequired,
                     NotInvertible, ParseError, UnknownSuite)
from .expr import parse
from .quotient import (CubicAlgebra, TruncatedPolyRing, embed_simplicial_in_cubic, subset_label,
                       subset_of)
from .rings import fmt, fmt_point, fmt_points, parse_ring
from .verify import SUITES, run_suite


class UsageError(Exception):
    """Flag misuse detected after argparse accepted the command line."""


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


# -- input parsing ------------------------------------------------------------------------

def _number(ring, text):
    try:
        return ring.parse(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"bad number {text!r}: {exc}", 0) from None


def scalars(ring, text):
    return tuple(_number(ring, part) for part in text.split(","))


def points(ring, text):
    return tuple(scalars(ring, slot) for slot in text.split(";"))


def load_map(text):
    if os.path.isfile(text):
        with open(text, encoding="utf-8") as fh:
            text = fh.read().strip()
    return parse(text)


def cubic_params(ring, text):
    """Parse ``"t1=2,t2=1,t12=1"``; each digit after ``t`` is one index."""
    out = {}
    for item in filter(None, (p.strip() for p in text.split(","))):
        key, sep, value = item.partition("=")
        key = key.strip()
        if not sep or not key.startswith("t") or not key[1:].isdigit():
            raise UsageError(f"bad parameter {item!r}; expected t<indices>=<value>")
        subset = tuple(sorted(int(ch) for ch in key[1:]))
        if 0 in subset or len(set(subset)) != len(subset):
            raise UsageError(f"bad parameter index {key!r}")
        out[subset] = _number(ring, value)
    return out


def _check_arity(f, v):
    for p in v:
        if len(p) != f.arity:
            raise ArityMismatch(f"{f.name} takes {f.arity} coordinates, got a point with {len(p)}")


def _check_order(order, s):
    if order is not None and order != len(s) - 1:
        raise UsageError(f"--order {order} does not match {len(s)} entries of --s")


# -- commands ---------------------------------------------------------------------------------

def cmd_divdiff(args):
    ring = parse_ring(args.ring)
    f = load_map(args.map)
    v, s = points(ring, args.v), scalars(ring, args.s)
    _check_order(args.order, s)
    _check_arity(f, v)
    if len(v) != len(s):
        raise UsageError(f"--v has {len(v)} slots but --s has {len(s)} entries")
    return {
        "points": fmt_points(simplicial.eval_points(v, s)),
        "divdiff": fmt_point(simplicial.divided_difference(f, v, s)),
        "sj": fmt_points(simplicial.sj_extension(f, v, s)),
    }


def cmd_jet(args):
    ring = parse_ring(args.ring)
    f = load_map(args.map)
    v, s = points(ring, args.v), scalars(ring, args.s)
    _check_order(args.order, s)
    _check_arity(f, v)
    if len(v) != len(s):
        raise UsageError(f"--v has {len(v)} slots but --s has {len(s)} entries")
    return {"jet": fmt_points(jets.sj_via_ring(f, v, s))}


def cmd_taylor(args):
    ring = parse_ring(args.ring)
    f = load_map(args.map)
    x, h = scalars(ring, args.at), scalars(ring, args.dir)
    _check_arity(f, (x, h))
    if args.order < 0:
        raise UsageError("--order must be non-negative")
    return {"coeffs": fmt_points(jets.taylor_coeffs(f, x, h, args.order))}


def cmd_cubic(args):
    ring = parse_ring(args.ring)
    f = load_map(args.map)
    xs = points(ring, args.x)
    k = len(xs).bit_length() - 1
    if len(xs) != 1 << k or k < 1:
        raise UsageError(f"--x needs 2^k points for some k >= 1, got {len(xs)}")
    if args.order is not None and args.order != k:
        raise UsageError(f"--order {args.order} does not match {len(xs)} points")
    _check_arity(f, xs)
    t = cubic_params(ring, args.t)
    arg = cubic.CubicArg.from_dicts(k, {subset_of(m): xs[m] for m in range(1 << k)}, t)
    engine = args.engine
    if engine == "difference":
        out = cubic.t_extension(f, arg)
    elif engine == "ring":
        out = jets.t_via_ring(f, arg)
    else:
        try:
            out, engine = cubic.t_extension(f, arg), "difference"
        except NonsingularRequired:
            out, engine = jets.t_via_ring(f, arg), "ring"
    return {"engine": engine, "T": {subset_label(subset_of(m)): fmt_point(p) for m, p in enumerate(out)}}


def cmd_ring_table(args):
    ring = parse_ring(args.ring)
    if args.type == "bpoly":
        if not args.s:
            raise UsageError("ring-table --type bpoly needs --s")
        b = TruncatedPolyRing.from_nodes(scalars(ring, args.s))
        table = [{"i": i, "j": j, "l": l, "value": fmt(g)}
                 for (i, j, l), g in sorted(b.structure_constants().items())]
        return dict(b.descriptor, gamma=table)
    if args.k is None:
        raise UsageError("ring-table --type cubic needs --k")
    if args.k < 1:
        raise UsageError("--k must be at least 1")
    t = cubic_params(ring, args.t or "")
    if any(max(key) > args.k for key in t):
        raise UsageError(f"parameter index exceeds k = {args.k}")
    alg = CubicAlgebra(ring, args.k, t)
    table = [{"J": subset_label(j), "K": subset_label(kk), "L": subset_label(l), "value": fmt(g)}
             for (j, kk, l), g in alg.structure_constants().items()]
    return dict(alg.descriptor, gamma=table)


def cmd_embed(args):
    ring = parse_ring(args.ring)
    s = scalars(ring, args.s)
    if len(s) < 2:
        raise UsageError("--s needs at least two entries")
    report = embed_simplicial_in_cubic(s)
    return {
        "t": {subset_label(key): fmt(value) for key, value in report.t.items()},
        "minpoly": fmt_point(report.minpoly),
        "expected": fmt_point(report.expected),
        "match": report.match,
    }


def cmd_verify(args):
    if args.suite not in SUITES:
        raise UnknownSuite(args.suite)
    if args.trials < 1 or args.max_order < 1 or args.workers < 1:
        raise UsageError("--trials, --max-order and --workers must be positive")
    return run_suite(args.suite, args.ring, args.trials, args.seed, args.max_order, args.workers)


# -- wiring -------------------------------------------------------------------------------------

def build_parser():
    parser = _Parser(prog="weiljet", description="Divided differences, jets and Weil algebras over exact rings.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p, ring=True):
        if ring:
            p.add_argument("--ring", default="rational", help="rational | zmod:<m> | real:<tol>")
        return p

    p = common(sub.add_parser("divdiff", help="divided difference f^<k>(v; s) and SJ^(s) f (v)"))
    p.add_argument("--map", required=True, help='map source or file, e.g. "f(x) = x^2"')
    p.add_argument("--order", type=int)
    p.add_argument("--v", required=True, help='k+1 points, e.g. "2;1;0"')
    p.add_argument("--s", required=True, help='k+1 scalars, e.g. "0,1,3"')
    p.set_defaults(run=cmd_divdiff)

    p = common(sub.add_parser("jet", help="SJ^(s) f (v) by scalar extension, any s"))
    p.add_argument("--map", required=True)
    p.add_argument("--order", type=int)
    p.add_argument("--v", required=True)
    p.add_argument("--s", required=True)
    p.set_defaults(run=cmd_jet)

    p = common(sub.add_parser("taylor", help="radial Taylor coefficients of t -> f(x + t h)"))
    p.add_argument("--map", required=True)
    p.add_argument("--at", required=True, help='base point x, e.g. "2"')
    p.add_argument("--dir", required=True, help="direction h")
    p.add_argument("--order", type=int, required=True)
    p.set_defaults(run=cmd_taylor)

    p = common(sub.add_parser("cubic", help="cubic extension T^(t) f"))
    p.add_argument("--map", required=True)
    p.add_argument("--order", type=int)
    p.add_argument("--t", required=True, help='parameters, e.g. "t1=1,t2=2,t12=1"')
    p.add_argument("--x", required=True, help="2^k points in subset order: {}, {1}, {2}, {1,2}, ...")
    p.add_argument("--engine", choices=("auto", "difference", "ring"), default="auto")
    p.set_defaults(run=cmd_cubic)

    p = common(sub.add_parser("ring-table", help="structure constants of B^s or A^t_k"))
    p.add_argument("--type", choices=("bpoly", "cubic"), default="cubic")
    p.add_argument("--s", help="nodes for --type bpoly")
    p.add_argument("--k", type=int, help="order for --type cubic")
    p.add_argument("--t", help="parameters for --type cubic")
    p.set_defaults(run=cmd_ring_table)

    p = common(sub.add_parser("embed", help="embed B^s_k into A^t(s)_k and check the minimal polynomial"))
    p.add_argument("--s", required=True)
    p.set_defaults(run=cmd_embed)

    p = common(sub.add_parser("verify", help="run a randomized verification suite"))
    p.add_argument("--suite", required=True, help=", ".join(SUITES))
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-order", type=int, default=3)
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(run=cmd_verify)
    return parser


_EXIT = [
    (ParseError, 1),
    ((DomainError, NonsingularRequired, NotInvertible), 2),
    ((UsageError, UnknownSuite, ArityMismatch, ExactRingRequired, ValueError), 3),
]


def _fail(exc, code):
    detail = exc.args[0] if isinstance(exc, KeyError) and exc.args else str(exc)
    if isinstance(exc, UnknownSuite):
        detail = f"unknown suite {detail!r}; known: {', '.join(SUITES)}"
    error = {"kind": type(exc).__name__, "detail": detail}
    if isinstance(exc, ParseError):
        error.update(offset=exc.offset, expected=sorted(exc.expected))
    if isinstance(exc, DomainError):
        error.update(witness=exc.witness, value=None if exc.value is None else str(exc.value))
    print(json.dumps({"error": error}), file=sys.stderr)
    return code


def main(argv=None):
    try:
        args = build_parser().parse_args(argv)
        result = args.run(args)
    except SystemExit as exc:  # --help
        return exc.code or 0
    except Exception as exc:
        for kinds, code in _EXIT:
            if isinstance(exc, kinds):
                return _fail(exc, code)
        raise
    print(json.dumps(result))
    if args.command == "verify" and not result["ok"]:
        return 4
    return 0


if __name__ == "__main__":
    sys.exit(main())
