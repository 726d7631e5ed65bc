"""Command-line front end: ``mkzgs {eval,converge,verify,kfunc,list-functions}``.

Exit codes: 0 success, 1 a verification check failed, 2 configuration or
domain error, 3 numerical failure (truncation or quadrature).
"""
from __future__ import annotations

import argparse
import csv
import json
import sys

import numpy as np

from . import analysis as A
from . import operators as ops
from .basis import TruncationPolicy
from .errors import DomainError, NumericFailure
from .functions import REGISTRY, get_function
from .quadrature import QuadraturePolicy

EXIT_OK, EXIT_FAIL, EXIT_CONFIG, EXIT_NUMERIC = 0, 1, 2, 3
SUITE_NAMES = ("identities", "norms", "jackson", "voronovskaya", "bernstein", "direct", "converse", "all")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_CONFIG)


def _fmt(v: float) -> str:
    return format(float(v), ".17g")


def _floats(text):
    try:
        return [float(t) for t in str(text).split(",") if t.strip()]
    except ValueError:
        raise DomainError(f"cannot parse number list {text!r}") from None


def _ints(text):
    vals = _floats(text)
    if any(v != int(v) for v in vals):
        raise DomainError(f"expected integers, got {text!r}")
    return [int(v) for v in vals]


def _json_default(o):
    if isinstance(o, (np.floating, np.integer)):
        return o.item()
    if isinstance(o, np.ndarray):
        return o.tolist()
    raise TypeError(type(o))


def _dump(obj, out):
    json.dump(obj, out, indent=2, sort_keys=True, default=_json_default, allow_nan=False)
    out.write("\n")


def _policies(args):
    trunc = TruncationPolicy(tail_tol=args.tail_tol, max_terms=args.max_terms)
    quad = QuadraturePolicy(rel_tol=args.quad_tol)
    return trunc, quad


def _op_cfg(args, n):
    trunc, quad = _policies(args)
    return ops.OperatorConfig(n, trunc, quad, 1.0 - args.window_delta)


def _points(args, domain):
    if args.points is not None:
        return np.array(_floats(args.points))
    lo, hi, m = args.grid
    m = int(m)
    if m < 2:
        raise DomainError("grid needs at least two points")
    return np.linspace(lo, hi, m)


def cmd_eval(args, out):
    kind = ops.OperatorKind.parse(args.op)
    f = get_function(args.function)
    if kind.domain == "ray":
        from .bridge import to_ray
        f = to_ray(f)
    pts = _points(args, kind.domain)
    vals = ops.apply(kind, _op_cfg(args, args.n), f, pts)
    w = csv.writer(out, lineterminator="\n")
    w.writerow(["x" if kind.domain == "unit" else "xi", "value"])
    for p, v in zip(pts, np.atleast_1d(vals)):
        w.writerow([_fmt(p), _fmt(v)])
    return EXIT_OK


def cmd_converge(args, out):
    ns = _ints(args.n_list)
    if len(ns) < 2:
        raise DomainError("converge needs at least two orders in --n-list")
    kind = ops.OperatorKind.parse(args.op)
    if kind.domain != "unit":
        raise DomainError("convergence experiments run on unit-side operators")
    rep = A.convergence_experiment(kind, get_function(args.function), ns, _op_cfg(args, ns[0]), args.sup_grid)
    summary = {"kind": rep.kind, "function": rep.label, "n_list": list(rep.n_list),
               "errors": list(rep.errors), "slope": rep.slope, "slope_reliable": rep.reliable}
    if args.format == "json":
        _dump(summary, out)
    else:
        w = csv.writer(out, lineterminator="\n")
        w.writerow(["n", "error"])
        for n, e in zip(rep.n_list, rep.errors):
            w.writerow([n, _fmt(e)])
        out.write(json.dumps({"slope": rep.slope, "slope_reliable": rep.reliable}, sort_keys=True) + "\n")
    return EXIT_OK


def _verify_config(args):
    trunc, quad = _policies(args)
    funcs = tuple(args.functions.split(",")) if args.functions else tuple(REGISTRY)
    for name in funcs:
        get_function(name)
    return A.VerifyConfig(seed=args.seed, sup_grid=args.sup_grid, window_delta=args.window_delta,
                          trunc=trunc, quad=quad, functions=funcs)


def cmd_verify(args, out):
    vc = _verify_config(args)
    if args.suite == "bernstein" and args.n:
        reports = A.check_bernstein(vc, tuple(_ints(args.n)))
    elif args.suite == "converse" and args.n:
        reports = []
        for n in _ints(args.n):
            if n < 17:
                raise DomainError("the converse check needs n >= 17")
            reports += A.check_converse(vc, n)
    else:
        reports = A.run_suite(args.suite, vc)
    _dump([r.to_json() for r in reports], out)
    return EXIT_OK if all(r.passed for r in reports) else EXIT_FAIL


def cmd_kfunc(args, out):
    f = get_function(args.function)
    rows = []
    for n in _ints(args.n):
        if n < 2:
            raise DomainError("kfunc needs n >= 2")
        cfg = _op_cfg(args, n)
        up = A.k_upper(f, 1.0 / n ** 2, n, args.witness, cfg, args.sup_grid)
        lo = A.k_lower(f, n, cfg, args.sup_grid)
        rows.append({"n": n, "t": 1.0 / n ** 2, "lower": lo, "upper": up.value, "witness": up.witness,
                     "upper_times_n2": up.value * n * n})
    _dump(rows[0] if len(rows) == 1 else rows, out)
    return EXIT_OK


def cmd_list(args, out):
    w = csv.writer(out, lineterminator="\n")
    w.writerow(["id", "description", "w2", "w2_0", "analytic_chain"])
    for name, f in REGISTRY.items():
        w.writerow([name, f.description, f.w2, f.w2_0, len(f.dtilde_chain) == 3])
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="mkzgs", description="MKZ / Baskakov Goodman-Sharma operators and their verification.")
    p.add_argument("-o", "--output", help="write to this file instead of stdout")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def numeric(sp):
        sp.add_argument("--tail-tol", type=float, default=1e-12)
        sp.add_argument("--max-terms", type=int, default=2_000_000)
        sp.add_argument("--quad-tol", type=float, default=1e-10)
        sp.add_argument("--window-delta", type=float, default=2.0 ** -10,
                        help="unit-side points are limited to [0, 1 - delta]")
        sp.add_argument("--sup-grid", type=int, default=513)

    e = sub.add_parser("eval", help="evaluate an operator image at points")
    e.add_argument("--op", required=True, help="mkz-classical, mkz-gs, mkz-gs-mod, baskakov, baskakov-gs, baskakov-gs-mod")
    e.add_argument("-n", type=int, required=True)
    e.add_argument("-f", "--function", required=True)
    g = e.add_mutually_exclusive_group(required=True)
    g.add_argument("--points", help="comma separated points")
    g.add_argument("--grid", nargs=3, type=float, metavar=("LO", "HI", "COUNT"))
    numeric(e)
    e.set_defaults(func=cmd_eval)

    c = sub.add_parser("converge", help="error of Op_n f - f for several n and the log-log slope")
    c.add_argument("--op", required=True)
    c.add_argument("-f", "--function", required=True)
    c.add_argument("--n-list", required=True)
    c.add_argument("--format", choices=("csv", "json"), default="csv")
    numeric(c)
    c.set_defaults(func=cmd_converge)

    v = sub.add_parser("verify", help="run a verification suite and print JSON reports")
    v.add_argument("suite", choices=SUITE_NAMES)
    v.add_argument("-n", help="orders for the bernstein / converse suites")
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--functions", help="comma separated registry ids (default: all)")
    numeric(v)
    v.set_defaults(func=cmd_verify)

    k = sub.add_parser("kfunc", help="lower and upper bounds of K(f, 1/n^2)")
    k.add_argument("-f", "--function", required=True)
    k.add_argument("-n", required=True, help="one or more orders, comma separated")
    k.add_argument("--witness", choices=("best", "auto", "self"), default="best")
    numeric(k)
    k.set_defaults(func=cmd_kfunc)

    lf = sub.add_parser("list-functions", help="show the function registry")
    lf.set_defaults(func=cmd_list)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    out = open(args.output, "w", newline="") if args.output else sys.stdout
    try:
        return args.func(args, out)
    except DomainError as exc:
        print(f"mkzgs: error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except NumericFailure as exc:
        print(f"mkzgs: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    finally:
        if out is not sys.stdout:
            out.close()
        else:
            out.flush()


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
