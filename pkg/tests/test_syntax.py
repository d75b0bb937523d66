from __future__ import annotations

import json
import random

import pytest
from hypothesis import given, strategies as st

from polycycles.algebra import LinComb
from polycycles.bar import bar_element
from polycycles.checks import random_tree
from polycycles.cycles import forest_cycling
from polycycles.iterint import i_coproduct, isym
from polycycles.polygons import Polygon, PolygonError, triangulations_psi
from polycycles.syntax import (
    ParseError,
    dumps,
    from_json,
    parse_bar,
    parse_bar_word,
    parse_cycle,
    parse_forest,
    parse_isymbol,
    parse_monomial,
    parse_polygon,
    parse_tree,
    render_latex,
    render_text,
    to_json,
)
from polycycles.trees import forest_element, tree_differential

from conftest import trees

polygons = st.integers(2, 6).flatmap(
    lambda n: st.lists(st.sampled_from(["x1", "x2", "x3", "_"]), min_size=n, max_size=n)
).map(lambda ds: ["x1"] + ds[1:-1] + ["x3"]).map(lambda ds: Polygon.of(*ds))


@pytest.mark.parametrize("parser, text", [
    (parse_tree, "(a"), (parse_tree, "(a b c)"), (parse_tree, "(a ())"), (parse_tree, "(a (b))"),
    (parse_polygon, "[a]"), (parse_polygon, "[_,a,b]"), (parse_polygon, "[a,b,_]"), (parse_polygon, "[a,~s0]"),
    (parse_cycle, "[1-1/t"), (parse_cycle, "[1-t^x]"), (parse_cycle, "[1-1/0]"),
    (parse_isymbol, "I(0; a)"), (parse_isymbol, "J(0; a; b)"),
    (parse_bar_word, "[[a,b]|]"), (parse_bar_word, "[a,b]"),
])
def test_malformed_literals_raise(parser, text):
    with pytest.raises((ParseError, PolygonError)):
        parser(text)


def test_parse_error_is_a_value_error():
    assert issubclass(ParseError, ValueError)


def test_forest_unit():
    assert parse_forest("1").trees == ()


def test_enhanced_markers():
    t = parse_tree("(s3 ~(~(~s0 a1) a2))")
    assert t.enhanced
    assert parse_polygon("[~s0,x1,x2]").enhanced


def test_monomial_arithmetic():
    m = parse_monomial("2*x^2/y")
    assert m.exp("x") == 2 and m.exp("y") == -1 and m.coeff == 2


def test_bar_strict_and_signed_parsers():
    with pytest.raises(ParseError):
        parse_bar_word("[[2,3] ^ [1,3]]")
    assert parse_bar("[[2,3] ^ [1,3]]") == -parse_bar("[[1,3] ^ [2,3]]")


def test_text_rendering():
    assert render_text(LinComb()) == "0"
    x = LinComb({parse_tree("(a b)"): 2, parse_tree("(a c)"): -1})
    assert render_text(x) == "2*(a b) - (a c)"


def test_latex_rendering():
    assert r"\star" in render_latex(tree_differential(parse_tree("(1 (x1 x2))")))
    assert r"\le" in render_latex(parse_cycle("[1-s1/x1]{0<=s1<=1}"))
    assert r"\wedge" in render_latex(parse_bar("[[1,4]|[2,4] ^ [3,4]]"))
    assert r"\tfrac{1}{2}" in render_latex(LinComb.single(parse_tree("(a b)"), "1/2"))


@given(trees(max_edges=7))
def test_tree_round_trips(t):
    assert parse_tree(t.key()) == t
    assert from_json(dumps(t)) == t
    d = tree_differential(t)
    assert from_json(dumps(d)) == d


@given(polygons)
def test_polygon_round_trips(p):
    assert parse_polygon(p.key()) == p
    assert from_json(to_json(p)) == p


@given(polygons)
def test_bar_round_trips(p):
    b = bar_element(p)
    assert from_json(json.loads(dumps(b))) == b
    for w, _ in b:
        assert parse_bar_word(w.key()) == w


@given(st.integers(0, 10**6), st.integers(1, 6))
def test_cycle_round_trips(seed, edges):
    c = forest_cycling(random_tree(random.Random(seed), edges))
    assert from_json(dumps(c)) == c
    for x, coeff in c:
        assert parse_cycle(x.key()) == LinComb.single(x)


def test_enhanced_round_trips():
    t = parse_tree("(s3 ~(~(~s0 a1) (a2 (a3 a4))))")
    c = forest_cycling(t)
    assert from_json(dumps(c)) == c
    assert parse_cycle(c.basis()[0].key()) == c
    b = bar_element(parse_polygon("[~s0,x1,x2,x3]"))
    assert from_json(dumps(b)) == b


def test_isymbol_round_trips():
    s = isym("0", ["a", "b"], "1")
    assert parse_isymbol(s.key()) == s
    cop = i_coproduct(s)
    assert from_json(dumps(cop)) == cop


def test_psi_round_trips():
    x = triangulations_psi(Polygon.of(*"12345"))
    assert from_json(dumps(x)) == x
    assert forest_element(*parse_forest("(a b) * (c d)").trees) == -forest_element(*parse_forest("(c d) * (a b)").trees)


def test_unknown_json_kind():
    with pytest.raises(ParseError):
        from_json({"kind": "nothing", "data": {}})
