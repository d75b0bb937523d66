"""Command-line interface: ``polycycles <group> <command> ...``."""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction
from typing import Any, Sequence

from . import checks, syntax
from .algebra import LinComb
from .bar import bar_element, coproduct_admissible, coproduct_deconcat
from .cycles import Degenerate, UnsupportedExponent, cycle_differential, forest_cycling, is_admissible
from .iterint import i_cobracket, i_coproduct, i_normalize
from .polygons import PolygonError, polygon_differential, triangulations_psi
from .realization import (
    NonConvergent,
    NumericConfig,
    SingularPath,
    double_log_cycle_check,
    iterint_numeric,
    li_series,
)
from .trees import tree_differential

EXIT_PARSE, EXIT_MATH, EXIT_VERIFY = 1, 2, 3

GRAMMAR = syntax.__doc__.split("Grammars::", 1)[1]


class _Failure(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


def _number(text: str) -> float | complex:
    try:
        return float(Fraction(text))
    except ValueError:
        pass
    try:
        z = complex(text.replace("i", "j"))
    except ValueError as exc:
        raise syntax.ParseError(f"not a number: {text!r}") from exc
    return z.real if z.imag == 0 else z


def _emit(value: Any, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(syntax.to_json(value), sort_keys=True)
    if fmt == "latex":
        return syntax.render_latex(value)
    return syntax.render_text(value)


def _emit_plain(data: dict, fmt: str, kind: str) -> str:
    if fmt == "json":
        return json.dumps({"kind": kind, "data": data}, sort_keys=True)
    return "\n".join(f"{k}: {v}" for k, v in data.items())


def _forest(text: str) -> LinComb:
    f = syntax.parse_forest(text)
    from .trees import forest_element

    return forest_element(*f.trees)


# --- handlers --------------------------------------------------------------------

def _tree(args: argparse.Namespace) -> str:
    return _emit(tree_differential(_forest(args.tree)), args.format)


def _polygon(args: argparse.Namespace) -> str:
    p = syntax.parse_polygon(args.polygon)
    if args.command == "diff":
        return _emit(polygon_differential(p, "bar" if args.bar_variant else "standard"), args.format)
    if args.command == "psi":
        return _emit(triangulations_psi(p), args.format)
    if args.command == "bar":
        return _emit(bar_element(p), args.format)
    if args.method == "deconcat":
        return _emit(coproduct_deconcat(bar_element(p)), args.format)
    return _emit(coproduct_admissible(p), args.format)


def _cycle(args: argparse.Namespace) -> str:
    if args.command == "from-tree":
        return _emit(forest_cycling(_forest(args.value)), args.format)
    if args.command == "from-polygon":
        return _emit(forest_cycling(triangulations_psi(syntax.parse_polygon(args.value))), args.format)
    c = syntax.parse_cycle(args.value)
    if args.command == "diff":
        return _emit(cycle_differential(c), args.format)
    ok = is_admissible(c)
    return json.dumps({"kind": "admissible", "data": ok}) if args.format == "json" else str(ok).lower()


def _iterint(args: argparse.Namespace) -> str:
    s = syntax.parse_isymbol(args.symbol)
    zero_rule = not args.keep_loops
    if args.command == "normalize":
        return _emit(i_normalize(s, zero_rule), args.format)
    if args.command == "coproduct":
        return _emit(i_coproduct(s, zero_rule), args.format)
    if s.a0 != "0":
        raise syntax.ParseError("the cobracket needs a basis symbol I(0; ...; b)")
    return _emit(i_cobracket(s, zero_rule), args.format)


def _show(z: float | complex) -> str:
    return repr(z) if isinstance(z, float) else f"{z.real!r}{z.imag:+.17g}i"


def _eval(args: argparse.Namespace) -> str:
    cfg = NumericConfig(tolerance=args.tolerance)
    if args.command == "li":
        ns = [int(n) for n in args.ns]
        zs = [_number(z) for z in args.zs]
        est = li_series(ns, zs, cfg)
    else:
        est = iterint_numeric(_number(args.x0), [_number(x) for x in args.xs], _number(args.xend), cfg)
    data = {"value": _show(est.value), "error_bound": f"{est.error:.3g}"}
    if est.terms:
        data["terms"] = est.terms
    return _emit_plain(data, args.format, "estimate")


def _compare(args: argparse.Namespace) -> str:
    h = double_log_cycle_check(float(_number(args.x1)), float(_number(args.x2)), NumericConfig())
    data = {
        "simplex_integral": repr(h.integral),
        "iterated_integral": repr(h.iterated),
        "series": repr(h.series) if h.series is not None else "n/a",
        "difference": f"{h.difference:.3g}",
        "prefactor": f"(2 pi i)^{h.two_pi_i_power}",
    }
    return _emit_plain(data, args.format, "hodge_check")


def _verify(args: argparse.Namespace) -> str:
    seed = args.seed
    if seed is None:
        seed = int(os.environ.get("POLYLOG_SEED", "0"))
    if args.suite == "all":
        results = checks.run_all(args.max_sides, seed)
    else:
        results = checks.run_suite(args.suite, args.max_sides, seed)
    if args.format == "json":
        text = json.dumps({"kind": "verify_report", "data": {"seed": seed, "results": [
            {"name": r.name, "passed": r.passed, "cases": r.cases, "counterexample": r.counterexample}
            for r in results]}}, sort_keys=True)
    else:
        lines = [f"seed {seed}"] + [r.line() for r in results]
        lines.append(f"{sum(r.passed for r in results)}/{len(results)} checks passed")
        text = "\n".join(lines)
    if not all(r.passed for r in results):
        raise _Failure(EXIT_VERIFY, text)
    return text


# --- parser ------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    # the flag is accepted before or after the subcommand; only the top level sets a default
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json", "latex"), default=argparse.SUPPRESS)
    parser = argparse.ArgumentParser(
        prog="polycycles",
        description="Trees, polygons, cycles and iterated integrals, exactly.",
        epilog="literal grammars:" + GRAMMAR,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    parser.add_argument("--format", choices=("text", "json", "latex"), default="text")
    groups = parser.add_subparsers(dest="group", required=True)

    tree = groups.add_parser("tree", help="forest differential")
    tcmd = tree.add_subparsers(dest="command", required=True)
    d = tcmd.add_parser("diff", parents=[common], help="edge-contraction differential")
    d.add_argument("tree", help="tree or forest, e.g. '(1 (x1 x2))'")
    tree.set_defaults(run=_tree)

    poly = groups.add_parser("polygon", help="polygon algebra and bar construction")
    pcmd = poly.add_subparsers(dest="command", required=True)
    d = pcmd.add_parser("diff", parents=[common], help="arrow differential")
    d.add_argument("polygon")
    d.add_argument("--bar-variant", action="store_true", help="keep inherited orientations")
    for name, text in (("psi", "sum over triangulations of dual trees"), ("bar", "bar cocycle B(p)")):
        c = pcmd.add_parser(name, parents=[common], help=text)
        c.add_argument("polygon")
    c = pcmd.add_parser("coproduct", parents=[common], help="coproduct of B(p)")
    c.add_argument("polygon")
    c.add_argument("--method", choices=("deconcat", "admissible"), default="admissible")
    poly.set_defaults(run=_polygon)

    cyc = groups.add_parser("cycle", help="algebraic cycles")
    ccmd = cyc.add_subparsers(dest="command", required=True)
    for name, text in (("from-tree", "forest cycling map"), ("from-polygon", "cycling map of the tree sum"),
                       ("diff", "cycle differential"), ("admissible", "proper intersection with all faces")):
        c = ccmd.add_parser(name, parents=[common], help=text)
        c.add_argument("value")
    cyc.set_defaults(run=_cycle)

    it = groups.add_parser("iterint", help="formal iterated integrals")
    icmd = it.add_subparsers(dest="command", required=True)
    for name in ("normalize", "coproduct", "cobracket"):
        c = icmd.add_parser(name, parents=[common])
        c.add_argument("symbol", help="e.g. 'I(0; x1, x2; 1)'")
        c.add_argument("--keep-loops", action="store_true", help="do not set I(0; ...; 0) to zero")
    it.set_defaults(run=_iterint)

    ev = groups.add_parser("eval", help="numeric values")
    ecmd = ev.add_subparsers(dest="command", required=True)
    c = ecmd.add_parser("li", parents=[common], help="multiple polylogarithm series")
    c.add_argument("--ns", nargs="+", required=True)
    c.add_argument("--zs", nargs="+", required=True)
    c.add_argument("--tolerance", type=float, default=1e-12)
    c = ecmd.add_parser("iint", parents=[common], help="iterated integral on the straight path")
    c.add_argument("--x0", required=True)
    c.add_argument("--xs", nargs="+", required=True)
    c.add_argument("--xend", required=True)
    c.add_argument("--tolerance", type=float, default=1e-12)
    ev.set_defaults(run=_eval)

    cmp_ = groups.add_parser("compare", help="cross-checks against numerics")
    mcmd = cmp_.add_subparsers(dest="command", required=True)
    c = mcmd.add_parser("hodge", parents=[common], help="double-logarithm chain integral")
    c.add_argument("--x1", required=True)
    c.add_argument("--x2", required=True)
    cmp_.set_defaults(run=_compare)

    ver = groups.add_parser("verify", parents=[common], help="run invariant suites")
    ver.add_argument("suite", choices=checks.SUITES + ("all",))
    ver.add_argument("--max-sides", type=int, default=None)
    ver.add_argument("--seed", type=int, default=None, help="defaults to $POLYLOG_SEED, then 0")
    ver.set_defaults(run=_verify, command="verify")
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_PARSE if exc.code else 0
    try:
        print(args.run(args))
    except (syntax.ParseError, PolygonError) as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (Degenerate, UnsupportedExponent, SingularPath, NonConvergent) as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_MATH
    except _Failure as exc:
        print(exc)
        return exc.code
    return 0


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
