from __future__ import annotations

import pytest
from hypothesis import given

from polycycles.algebra import LinComb
from polycycles.checks import decomposable_term
from polycycles.cycles import (
    Degenerate,
    concat,
    cycle_differential,
    face,
    forest_cycling,
    is_admissible,
    iterated_faces,
    totaro_cycle,
)
from polycycles.polygons import tree_sum
from polycycles.syntax import parse_cycle, parse_tree
from polycycles.trees import Forest, bigrading, tree_differential

from conftest import trees


def only(x: LinComb):
    assert len(x) == 1
    return x.basis()[0]


Z2 = "[1-1/t, 1-t/x1, 1-t/x2]"


def test_swap_flips_sign():
    assert parse_cycle("[1-1/x1, 1-1/x2]") == -parse_cycle("[1-1/x2, 1-1/x1]")


def test_coordinate_equal_to_one_gives_zero():
    assert parse_cycle("[1, 1-1/x1]") == LinComb()


def test_parameters_renamed_canonically():
    assert parse_cycle("[1-1/u, 1-u/x1, 1-u/x2]") == parse_cycle(Z2)


def test_reordered_double_log_cycle():
    # a cyclic shift of three coordinates is even, a transposition is odd
    assert parse_cycle("[1-t/x2, 1-1/t, 1-t/x1]") == parse_cycle(Z2)
    assert parse_cycle("[1-t/x1, 1-1/t, 1-t/x2]") == -parse_cycle(Z2)


def test_concat_of_constant_cycles():
    assert concat(parse_cycle("[1-1/x1]"), parse_cycle("[1-1/x2]")) == parse_cycle("[1-1/x1, 1-1/x2]")


def test_concat_with_unit():
    unit = parse_cycle("[]")
    z = parse_cycle(Z2)
    assert concat(unit, z) == z == concat(z, unit)


def test_concat_graded_commutativity():
    a, b = parse_cycle(Z2), parse_cycle("[1-1/x3, 1-1/x4]")
    assert concat(a, b) == concat(b, a) * (-1) ** (3 * 2)
    c = parse_cycle("[1-1/x3]")
    assert concat(a, c) == -concat(c, a)


def test_faces_of_double_log_cycle():
    z = only(parse_cycle(Z2))
    index = {coord.text(): i for i, coord in enumerate(z.coords)}
    assert face(z, index["1-t/x1"], "0") == parse_cycle("[1-1/x1, 1-x1/x2]")
    for i in range(3):
        assert face(z, i, "inf") == LinComb()


def test_boundary_of_double_log_cycle():
    expected = parse_cycle("[1-1/x1, 1-1/x2]") - parse_cycle("[1-1/x1, 1-x1/x2]") + parse_cycle("[1-1/x2, 1-x2/x1]")
    assert cycle_differential(parse_cycle(Z2)) == expected


def test_totaro_cycle_boundary():
    assert cycle_differential(totaro_cycle("a")) == parse_cycle("[a, 1-a]")


def test_constant_face_is_empty():
    c = only(parse_cycle("[1-a/b]"))
    assert face(c, 0, "0") == LinComb()
    assert cycle_differential(parse_cycle("[1-a/b, 1-1/c]")) == LinComb()


def test_identically_vanishing_coordinate_is_degenerate():
    c = only(parse_cycle("[1-t/t, 1-t/x1]"))
    with pytest.raises(Degenerate):
        face(c, 0, "0")


def test_admissibility():
    assert is_admissible(parse_cycle("[1-a/b]"))
    assert is_admissible(forest_cycling(parse_tree("(1 (x1 x2))")))
    assert not is_admissible(forest_cycling(parse_tree("(x1 (x1 x2))")))
    # two equal sibling leaves give two equal coordinates, which cancel
    assert forest_cycling(parse_tree("(1 (x1 x1))")) == LinComb()


def test_two_leaf_tree_cycle():
    assert forest_cycling(tree_sum(["x1", "x2", "1"])) == parse_cycle("[1-1/u, 1-u/x1, 1-u/x2]")


def test_triple_log_cycle():
    expected = parse_cycle("[1-1/t, 1-t/x1, 1-t/u, 1-u/x2, 1-u/x3]") + \
        parse_cycle("[1-1/t, 1-t/u, 1-u/x1, 1-u/x2, 1-t/x3]")
    assert forest_cycling(tree_sum(["x1", "x2", "x3", "1"])) == expected


def test_enhanced_tree_chain():
    t = parse_tree("(s3 ~(~(~s0 a1) (a2 (a3 a4))))")
    expected = parse_cycle("[1-s1/a1, 1-s2/t1, 1-t1/a2, 1-t1/t2, 1-t2/a3, 1-t2/a4]{s0<=s1<=s2<=s3}")
    assert forest_cycling(t) == expected


def test_single_edge_is_point_of_the_zero_cube():
    assert forest_cycling(Forest()) == parse_cycle("[]")


def test_undecorated_leaf_gives_plain_coordinate():
    assert forest_cycling(parse_tree("(1 (x1 _))")) == parse_cycle("[1-1/t, 1-t/x1, t]")


@given(trees(max_edges=5))
def test_chain_map(t):
    assert forest_cycling(tree_differential(t)) == cycle_differential(forest_cycling(t))


@given(trees(max_edges=6))
def test_images_are_admissible_with_empty_infinity_faces(t):
    for c in forest_cycling(t).basis():
        assert is_admissible(c)
        for x in iterated_faces(c):
            for i in range(len(x.coords)):
                assert face(x, i, "inf") == LinComb()


@given(trees(max_edges=7))
def test_bigrading_transport(t):
    g = bigrading(t)
    for c in forest_cycling(t).basis():
        assert len(c.coords) == g.n
        assert len(c.params) == g.n - g.p


@given(trees(max_edges=6))
def test_pivot_choice_does_not_matter(t):
    x = forest_cycling(t)
    assert cycle_differential(x, "least") == cycle_differential(x, "greatest")


@given(trees(max_edges=6))
def test_exponents_stay_small(t):
    for c in forest_cycling(t).basis():
        for x in iterated_faces(c):
            for coord in x.coords:
                assert all(abs(coord.mono.exp(a)) <= 1 for a in coord.mono.atoms())


@pytest.mark.parametrize("m", [2, 3, 4])
def test_decomposable_boundary(m):
    decos = [f"x{i}" for i in range(1, m + 1)] + ["1"]
    for c in cycle_differential(forest_cycling(tree_sum(decos))).basis():
        assert decomposable_term(c)


@given(trees(max_edges=6))
def test_text_round_trip(t):
    for c, _ in forest_cycling(t):
        assert parse_cycle(c.key()) == LinComb.single(c)
