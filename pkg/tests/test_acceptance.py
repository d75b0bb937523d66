"""Acceptance suite: one PASS/FAIL line per criterion, with timing.

Run ``pytest tests/test_acceptance.py -s`` to see the report lines.
"""

from __future__ import annotations

import time

from polycycles import checks
from polycycles.algebra import LinComb, Wedge, lc_sum
from polycycles.bar import bar_element
from polycycles.cycles import cycle_differential, forest_cycling, totaro_cycle
from polycycles.polygons import Arrow, Dissection, Polygon, polygon_differential, sign_dissection, tree_sum
from polycycles.realization import NumericConfig, check_diff_li, double_log_cycle_check, iterint_numeric, li_series
from polycycles.syntax import parse_bar, parse_cycle, parse_forest, parse_polygon, parse_tree
from polycycles.trees import forest_element, tree_differential


def _report(capsys, label: str, ok: bool, seconds: float, budget: float, detail: str = "") -> None:
    status = "PASS" if ok and seconds < budget else "FAIL"
    with capsys.disabled():
        print(f"\n{status} {label} ({seconds:.2f}s, budget {budget:g}s){' ' + detail if detail else ''}")


def _forests(*terms: tuple[int, str]) -> LinComb:
    return lc_sum(forest_element(*parse_forest(text).trees) * c for c, text in terms)


def _bars(*terms: tuple[int, str]) -> LinComb:
    return lc_sum(parse_bar(text) * c for c, text in terms)


def _component(b: LinComb, length: int) -> LinComb:
    return LinComb((w, c) for w, c in b if len(w.letters) == length)


def _shuffle_tail(head: str, a: str, b: str) -> list[str]:
    return [f"[{head}|{a}|{b}]", f"[{head}|{b}|{a}]"]


def fixture_checks() -> dict[str, bool]:
    out: dict[str, bool] = {}

    out["two-leaf tree differential"] = tree_differential(parse_tree("(1 (x1 x2))")) == _forests(
        (1, "(1 x1) * (1 x2)"), (-1, "(1 x1) * (x1 x2)"), (1, "(1 x2) * (x2 x1)"))

    two_leaf = forest_cycling(tree_sum(["x1", "x2", "1"]))
    out["two-leaf tree cycle"] = two_leaf == parse_cycle("[1-1/u, 1-u/x1, 1-u/x2]")

    z2 = parse_cycle("[1-1/t, 1-t/x1, 1-t/x2]")
    bdry = parse_cycle("[1-1/x1, 1-1/x2]") - parse_cycle("[1-1/x1, 1-x1/x2]") + parse_cycle("[1-1/x2, 1-x2/x1]")
    out["boundary of the double-log cycle"] = cycle_differential(z2) == bdry

    out["boundary of the Totaro cycle"] = cycle_differential(totaro_cycle("a")) == parse_cycle("[a, 1-a]")

    z3 = parse_cycle("[1-1/t, 1-t/x1, 1-t/u, 1-u/x2, 1-u/x3]") + \
        parse_cycle("[1-1/t, 1-t/u, 1-u/x1, 1-u/x2, 1-t/x3]")
    out["triple-log cycle"] = forest_cycling(tree_sum(["x1", "x2", "x3", "1"])) == z3

    tri = parse_polygon("[1,2,3]")
    out["triangle differential"] = polygon_differential(tri) == (
        _wedge("[1,3]", "[2,3]") + _wedge("[2,3]", "[1,2]") - _wedge("[1,3]", "[2,1]"))

    out["triangle bar element"] = bar_element(tri) == _bars(
        (1, "[[1,2,3]]"), (1, "[[1,3]|[2,3]]"), (1, "[[2,3]|[1,2]]"), (-1, "[[1,3]|[2,1]]"))

    quad = bar_element(parse_polygon("[1,2,3,4]"))
    two = _bars((1, "[[1,4]|[2,3,4]]"), (1, "[[3,4]|[1,2,3]]"), (-1, "[[1,2,4]|[3,2]]"),
                (-1, "[[1,3,4]|[2,1]]"), (1, "[[1,2,4]|[3,4]]"), (1, "[[1,3,4]|[2,3]]"),
                (1, "[[2,3,4]|[1,2]]"), (1, "[[1,4]|[3,2,1]]"))
    out["quadrangle two-letter component"] = _component(quad, 2) == two

    three_terms = [
        (1, ["[[1,4]|[2,4]|[3,4]]"]), (1, ["[[3,4]|[1,3]|[2,3]]"]),
        (-1, _shuffle_tail("[2,4]", "[1,2]", "[3,2]")), (1, ["[[1,4]|[3,1]|[2,1]]"]),
        (1, ["[[1,4]|[3,4]|[2,3]]"]), (1, ["[[3,4]|[2,3]|[1,2]]"]),
        (1, ["[[1,4]|[2,1]|[3,2]]"]), (-1, _shuffle_tail("[1,4]", "[2,1]", "[3,4]")),
        (-1, ["[[1,4]|[2,4]|[3,2]]"]), (-1, ["[[3,4]|[1,3]|[2,1]]"]),
        (1, _shuffle_tail("[2,4]", "[1,2]", "[3,4]")), (-1, ["[[1,4]|[3,1]|[2,3]]"]),
    ]
    three = _bars(*[(c, w) for c, ws in three_terms for w in ws])
    out["quadrangle three-letter component"] = _component(quad, 3) == three

    octagon = Dissection(Polygon.of(*"12345678"), (Arrow(2, 1), Arrow(2, 8), Arrow(3, 5), Arrow(7, 5)))
    out["octagon dissection sign"] = sign_dissection(octagon) == -1
    return out


def _wedge(a: str, b: str) -> LinComb:
    w, sign = Wedge.build([parse_polygon(a), parse_polygon(b)])
    return LinComb.single(w, sign)


def test_criterion_1_fixtures(capsys):
    start = time.perf_counter()
    results = fixture_checks()
    seconds = time.perf_counter() - start
    failed = [k for k, ok in results.items() if not ok]
    _report(capsys, "criterion 1: fixture equalities", not failed, seconds, 1.0,
            f"{len(results) - len(failed)}/{len(results)} fixtures" + (f"; failed: {failed}" if failed else ""))
    assert not failed
    assert seconds < 1.0


def test_criterion_2_invariant_suites(capsys):
    start = time.perf_counter()
    results = checks.run_all(seed=0)
    seconds = time.perf_counter() - start
    failed = [r.line() for r in results if not r.passed]
    _report(capsys, "criterion 2: invariant suites", not failed, seconds, 300.0,
            f"{len(results) - len(failed)}/{len(results)} checks")
    assert not failed, failed
    assert seconds < 300.0


def test_criterion_3_numeric(capsys):
    start = time.perf_counter()
    cfg = NumericConfig()
    series = li_series([1, 1], [0.3, 0.2], cfg)
    quad = iterint_numeric(0.0, [50 / 3, 5.0], 1.0, cfg)
    # the sign (-1)^2 relating the two presentations is +1
    gap = abs(series.value - quad.value)
    hodge = double_log_cycle_check(5.0, 2.5, cfg)
    r1, r2 = check_diff_li(5.0, 2.5, 1e-4), check_diff_li(5.0, 2.5, 2e-4)
    ratio = check_diff_li(5.0, 2.5, 2e-2) / check_diff_li(5.0, 2.5, 1e-2)
    seconds = time.perf_counter() - start
    ok = (series.error < 1e-12 and gap < 1e-6 and hodge.difference < 1e-8
          and r1 < 1e-6 and r1 < r2 and 3.5 < ratio < 4.5)
    _report(capsys, "criterion 3: numeric checks", ok, seconds, 30.0,
            f"series-vs-quadrature {gap:.1e}, hodge {hodge.difference:.1e}, "
            f"diffLi residual {r1:.1e}, h-halving ratio {ratio:.2f}")
    assert ok
    assert seconds < 30.0
