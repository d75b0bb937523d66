from __future__ import annotations

import pytest
from hypothesis import given, strategies as st

from polycycles.algebra import LinComb, Wedge, lc_sum
from polycycles.checks import count_dissections_geometric, mirror_orientation_sign, psi_of_differential
from polycycles.polygons import (
    Arrow,
    Dissection,
    Polygon,
    PolygonError,
    all_dissections,
    arrows,
    catalan_tree_count,
    dissect_one,
    dual_tree,
    enumerate_dissections,
    polygon_differential,
    region_polygons,
    sign_dissection,
    tree_sum,
    triangulations_psi,
    weight,
)
from polycycles.syntax import parse_polygon, parse_tree
from polycycles.trees import forest_element, mirror, tree_differential

HEXAGON = Polygon.of(*"123456")
OCTAGON = Dissection(Polygon.of(*"12345678"), (Arrow(2, 1), Arrow(2, 8), Arrow(3, 5), Arrow(7, 5)))

polygons = st.integers(2, 6).flatmap(
    lambda n: st.lists(st.sampled_from(["x1", "x2", "x3", "x4"]), min_size=n, max_size=n)
).map(lambda ds: Polygon.of(*ds))


def wedge(*texts):
    w, s = Wedge.build([parse_polygon(t) for t in texts])
    return LinComb.single(w, s)


def test_weights():
    assert weight(HEXAGON) == 5
    assert weight(parse_polygon("[a,b]")) == 1
    assert weight(parse_polygon("[~s0,x1,x2,x3]")) == 2


def test_polygon_validation():
    with pytest.raises(PolygonError):
        parse_polygon("[a]")
    with pytest.raises(PolygonError):
        parse_polygon("[_,a,b]")
    with pytest.raises(PolygonError):
        parse_polygon("[a,~s0,b]")


@pytest.mark.parametrize("n", [3, 4, 5, 6])
def test_arrow_count(n):
    assert len(arrows(Polygon.of(*range(1, n + 1)))) == n * (n - 2)


def test_two_gon_has_no_arrows():
    assert arrows(parse_polygon("[a,b]")) == []
    assert polygon_differential(parse_polygon("[a,b]")) == LinComb()


def test_hexagon_dissection_parts():
    root, cut, _ = dissect_one(HEXAGON, Arrow(2, 5))
    assert (root.key(), cut.key()) == ("[1,2,5,6]", "[3,4,5]")


def test_triangle_backward_arrow_reverses_cut():
    root, cut, cut_bar = dissect_one(parse_polygon("[1,2,3]"), Arrow(2, 1))
    assert (root.key(), cut.key()) == ("[1,3]", "[2,1]")
    assert cut_bar == cut  # a 2-gon looks the same either way


def test_forward_arrow_keeps_orientation():
    _, cut, cut_bar = dissect_one(HEXAGON, Arrow(1, 4))
    assert cut == cut_bar


def test_triangle_differential():
    expected = wedge("[1,3]", "[2,3]") + wedge("[2,3]", "[1,2]") - wedge("[1,3]", "[2,1]")
    assert polygon_differential(parse_polygon("[1,2,3]")) == expected


def test_dissection_counts():
    tri = parse_polygon("[1,2,3]")
    assert enumerate_dissections(tri, 1) == [Dissection(tri)]
    assert len(enumerate_dissections(tri, 2)) == 3


@pytest.mark.parametrize("n", [3, 4, 5, 6])
def test_dissection_count_matches_geometry(n):
    assert len(all_dissections(Polygon.of(*range(1, n + 1)))) == count_dissections_geometric(n)


def test_octagon_regions_and_sign():
    regions = {p.key() for p in region_polygons(OCTAGON)}
    assert regions == {"[3,5,8]", "[7,6,5]", "[1,8]", "[2,1]", "[4,5]"}
    assert sign_dissection(OCTAGON) == -1


def test_octagon_dual_tree():
    parents = [p for p, _ in dual_tree(OCTAGON)]
    assert parents.count(None) == 1 and len(parents) == 5
    assert OCTAGON in enumerate_dissections(OCTAGON.polygon, 5)


def test_trivial_dissection():
    assert region_polygons(Dissection(HEXAGON)) == [HEXAGON]
    assert len(dual_tree(Dissection(HEXAGON))) == 1
    assert sign_dissection(Dissection(HEXAGON)) == 1


def test_tree_sums():
    assert tree_sum(["x1", "x2", "1"]) == forest_element(parse_tree("(1 (x1 x2))"))
    four = forest_element(parse_tree("(x4 ((x1 x2) x3))")) + forest_element(parse_tree("(x4 (x1 (x2 x3)))"))
    assert tree_sum(["x1", "x2", "x3", "x4"]) == four
    assert len(tree_sum(["x1", "x2", "x3", "x4", "x5"])) == 5
    assert len(triangulations_psi(HEXAGON)) == 14
    assert triangulations_psi(parse_polygon("[a,b]")) == forest_element(parse_tree("(b a)"))


@pytest.mark.parametrize("m", range(2, 8))
def test_catalan(m):
    decos = [f"x{i}" for i in range(1, m + 2)]
    assert len(tree_sum(decos)) == catalan_tree_count(m)


def test_tree_sum_needs_distinct_decorations():
    with pytest.raises(PolygonError):
        tree_sum(["x", "x", "y"])


def test_mirror_orientation_sign():
    assert mirror_orientation_sign(parse_tree("(a b)")) == 1
    assert mirror_orientation_sign(parse_tree("(a (b c))")) == -1
    assert mirror_orientation_sign(parse_tree("(a (b c d))")) == -1


@given(polygons)
def test_differential_squares_to_zero(p):
    assert polygon_differential(polygon_differential(p)) == LinComb()
    assert polygon_differential(polygon_differential(p, "bar"), "bar") == LinComb()


@given(polygons)
def test_psi_is_a_chain_map(p):
    psi = triangulations_psi(p)
    assert tree_differential(psi) == triangulations_psi(polygon_differential(p, "bar"))
    assert tree_differential(psi) == psi_of_differential(p, "standard")


@pytest.mark.parametrize("n", range(3, 8))
def test_reversal_is_mirror_up_to_sign(n):
    p = Polygon.of(*range(1, n + 1))
    back = lc_sum(forest_element(mirror(f.trees[0])) * (c * mirror_orientation_sign(f.trees[0]))
                  for f, c in triangulations_psi(p.reversed()))
    assert back == triangulations_psi(p) * (-1) ** n
