from __future__ import annotations

from hypothesis import given

from polycycles.syntax import parse_forest, parse_tree
from polycycles.trees import (
    Forest,
    bigrading,
    contract_edge,
    contract_parts,
    forest_element,
    forest_product,
    is_generic,
    mirror,
    tree_differential,
    tree_shapes,
)
from polycycles.algebra import LinComb, lc_sum

from conftest import trees


def forests(*terms):
    return lc_sum(forest_element(*parse_forest(text).trees) * c for c, text in terms)


SAMPLE_TREE = "(x4 ((x1 x2) x3))"


def test_sample_tree_edge_order_and_grading():
    t = parse_tree(SAMPLE_TREE)
    # five edges, three leaves besides the root
    assert bigrading(t).n == 5
    assert bigrading(t).p == 3
    assert [v.deco for v in t.vertices()] == [None, None, "x1", "x2", "x3"]


def test_sample_tree_is_generic():
    assert is_generic(parse_tree(SAMPLE_TREE))


def test_generic_needs_distinct_decorations():
    assert not is_generic(parse_tree("(1 (x x))"))
    assert not is_generic(parse_tree("(x1 (x1 x2))"))


def test_mirror_reverses_siblings():
    assert mirror(parse_tree(SAMPLE_TREE)).key() == "(x4 (x3 (x2 x1)))"


def test_empty_forest_grading():
    assert bigrading(Forest()) == bigrading(Forest(()))
    assert (bigrading(Forest()).n, bigrading(Forest()).p) == (0, 0)


def test_contract_leaf_splits_at_vertex():
    _, parts = contract_parts(parse_tree("(p (q r s))"), 2)
    assert sorted(t.key() for t in parts) == ["(p r)", "(r q)", "(r s)"]


def test_contract_root_edge_plants_subtrees():
    _, parts = contract_parts(parse_tree("(p (q r s))"), 0)
    assert sorted(t.key() for t in parts) == ["(p q)", "(p r)", "(p s)"]


def test_single_edge_contracts_to_unit():
    assert contract_edge(parse_tree("(a b)"), 0) == LinComb.single(Forest())


def test_single_edge_differential_is_zero():
    assert tree_differential(parse_tree("(a b)")) == LinComb()


def test_two_leaf_tree_differential():
    expected = forests((1, "(1 x1) * (1 x2)"), (-1, "(1 x1) * (x1 x2)"), (1, "(1 x2) * (x2 x1)"))
    assert tree_differential(parse_tree("(1 (x1 x2))")) == expected


def test_two_leaf_differential_terms_bigrading():
    for f, _ in tree_differential(parse_tree("(1 (x1 x2))")):
        assert (bigrading(f).n, bigrading(f).p) == (2, 2)


def test_shape_counts():
    # planted plane trees without bivalent vertices
    assert [sum(1 for _ in tree_shapes(n)) for n in (1, 2, 3, 4)] == [1, 0, 1, 1]


def test_forest_element_sign_from_odd_trees():
    a, b = parse_tree("(a b)"), parse_tree("(c d)")
    assert forest_element(a, b) == -forest_element(b, a)
    assert forest_element(a, a) == LinComb()


@given(trees(max_edges=8))
def test_d_squared_vanishes(t):
    assert tree_differential(tree_differential(t)) == LinComb()


@given(trees(max_edges=7))
def test_d_lowers_edges_and_keeps_leaves(t):
    g = bigrading(t)
    for f, _ in tree_differential(t):
        assert bigrading(f) == type(g)(g.n - 1, g.p)


@given(trees(max_edges=5), trees(max_edges=5))
def test_graded_leibniz(s, t):
    a, b = forest_element(s), forest_element(t)
    lhs = tree_differential(forest_product(a, b))
    sign = -1 if s.edge_count() % 2 else 1
    rhs = forest_product(tree_differential(a), b) + forest_product(a, tree_differential(b)) * sign
    assert lhs == rhs


@given(trees(max_edges=7))
def test_text_round_trip(t):
    assert parse_tree(t.key()) == t
