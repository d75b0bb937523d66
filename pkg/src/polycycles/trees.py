"""Decorated planted plane trees, forests and the edge-contraction differential.

A tree is a root decoration plus the vertex reached by the root edge.  Each
non-root vertex owns the edge to its parent, so edges are listed by a preorder
walk of the vertices, root edge first.  A forest is a tuple of trees; its
orientation is a sign carried in the coefficient of a ``LinComb``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator

from .algebra import LinComb, lc_sum, permutation_sign, wedge_normalize

UNDECORATED = "_"


@dataclass(frozen=True)
class Node:
    """A non-root vertex.  Leaves carry ``deco``; internal vertices have children."""

    deco: str | None = None
    children: tuple[Node, ...] = ()
    second: bool = False

    @property
    def is_leaf(self) -> bool:
        return not self.children

    def key(self) -> str:
        mark = "~" if self.second else ""
        if self.is_leaf:
            return mark + str(self.deco)
        return mark + "(" + " ".join(c.key() for c in self.children) + ")"


def leaf(deco: str, second: bool = False) -> Node:
    return Node(deco, (), second)


def node(*children: Node, second: bool = False) -> Node:
    return Node(None, tuple(children), second)


@dataclass(frozen=True)
class Tree:
    """Planted plane tree with decorated external vertices."""

    root: str
    child: Node

    def key(self) -> str:
        return f"({self.root} {self.child.key()})"

    def __str__(self) -> str:
        return self.key()

    @property
    def enhanced(self) -> bool:
        return any(v.second for v in self.vertices())

    def vertices(self) -> list[Node]:
        """Non-root vertices in preorder; vertex i owns edge i."""
        out: list[Node] = []

        def walk(n: Node) -> None:
            out.append(n)
            for c in n.children:
                walk(c)

        walk(self.child)
        return out

    def edge_count(self) -> int:
        return len(self.vertices())

    def leaf_count(self) -> int:
        return sum(1 for v in self.vertices() if v.is_leaf)

    def decorations(self) -> list[str]:
        """External decorations: root first, then the leaves in order."""
        return [self.root] + [v.deco for v in self.vertices() if v.is_leaf]


@dataclass(frozen=True)
class Forest:
    """Product of trees in the order given; the empty forest is the unit."""

    trees: tuple[Tree, ...] = field(default=())

    def key(self) -> str:
        if not self.trees:
            return "1"
        return " * ".join(t.key() for t in self.trees)

    def __str__(self) -> str:
        return self.key()

    def edge_count(self) -> int:
        return sum(t.edge_count() for t in self.trees)


@dataclass(frozen=True)
class ForestBigrading:
    n: int
    p: int


def canonical_edge_order(t: Tree) -> list[Node]:
    """Edges in depth-first order, root edge first (edge = its lower vertex)."""
    return t.vertices()


def bigrading(f: Forest | Tree) -> ForestBigrading:
    trees = f.trees if isinstance(f, Forest) else (f,)
    return ForestBigrading(sum(t.edge_count() for t in trees), sum(t.leaf_count() for t in trees))


def is_generic(t: Tree) -> bool:
    decos = t.decorations()
    return len(set(decos)) == len(decos)


def mirror(t: Tree) -> Tree:
    def flip(n: Node) -> Node:
        if n.is_leaf:
            return n
        return Node(None, tuple(flip(c) for c in reversed(n.children)), n.second)

    return Tree(t.root, flip(t.child))


def enhance(t: Tree) -> Tree:
    """Mark the path from the first leaf to the root as second type."""

    def walk(n: Node, first: bool) -> Node:
        if n.is_leaf:
            return Node(n.deco, (), first)
        kids = tuple(walk(c, first and i == 0) for i, c in enumerate(n.children))
        return Node(None, kids, first)

    return Tree(t.root, walk(t.child, True))


def forest_element(*trees: Tree) -> LinComb:
    """Canonical element of the forest ``trees[0] * trees[1] * ...``."""
    return _canonical(list(trees), 1)


def _canonical(trees: list[Tree], sign: int) -> LinComb:
    srt, s = wedge_normalize([(t, t.edge_count()) for t in trees])
    if not s:
        return LinComb()
    return LinComb.single(Forest(tuple(t for t, _ in srt)), sign * s)


# Contraction works on vertices labelled by their preorder index, which is
# also the index of the edge they own.

@dataclass(frozen=True)
class _L:
    ident: int
    deco: str | None
    second: bool
    children: tuple[_L, ...]


def _label(t: Tree) -> _L:
    counter = iter(range(10**9))

    def walk(n: Node) -> _L:
        i = next(counter)
        return _L(i, n.deco, n.second, tuple(walk(c) for c in n.children))

    return walk(t.child)


def _strip(n: _L, ids: list[int]) -> Node:
    ids.append(n.ident)
    return Node(n.deco, tuple(_strip(c, ids) for c in n.children), n.second)


def _replace(n: _L, target: int, new: _L) -> _L:
    if n.ident == target:
        return new
    return _L(n.ident, n.deco, n.second, tuple(_replace(c, target, new) for c in n.children))


def _find(n: _L, target: int, parent: _L | None = None) -> tuple[_L, _L | None]:
    if n.ident == target:
        return n, parent
    for c in n.children:
        hit = _find(c, target, n) if _contains(c, target) else None
        if hit is not None:
            return hit
    raise KeyError(target)


def _contains(n: _L, target: int) -> bool:
    if n.ident == target:
        return True
    return any(_contains(c, target) for c in n.children)


def contract_parts(t: Tree, e: int) -> tuple[int, list[Tree]]:
    """Contract edge ``e`` (preorder index).

    Returns:
        ``(sign, trees)``: the resulting trees in the order produced, and the
        sign of ``i_e omega`` relative to their concatenated canonical orders.
    """
    top = _label(t)
    n, p = _find(top, e)
    if n.children == () and p is None:
        return 1, []
    parts: list[tuple[str, _L]] = []
    if p is None:
        # root edge: split at the root vertex
        parts = [(t.root, c) for c in n.children]
    elif n.children:
        merged = _L(p.ident, p.deco, p.second, tuple(
            g for c in p.children for g in (c.children if c.ident == e else (c,))))
        parts = [(t.root, _replace(top, p.ident, merged))]
    else:
        w_second = p.second or n.second
        w = _L(p.ident, n.deco, w_second, ())
        parts = [(t.root, _replace(top, p.ident, w))]
        parts += [(n.deco, c) for c in p.children if c.ident != e]
    ids: list[int] = []
    trees = [Tree(r, _strip(c, ids)) for r, c in parts]
    sign = (-1) ** e * permutation_sign(ids)
    return sign, trees


def contract_edge(t: Tree, e: int) -> LinComb:
    """Contraction of one edge as a canonical forest element."""
    sign, trees = contract_parts(t, e)
    return _canonical(trees, sign)


def _forest_diff(f: Forest) -> LinComb:
    parts = []
    offset = 0
    for i, t in enumerate(f.trees):
        m = t.edge_count()
        # a single edge would contract to the unit, which has no leaves
        for e in range(m if m > 1 else 0):
            sign, pieces = contract_parts(t, e)
            trees = list(f.trees[:i]) + pieces + list(f.trees[i + 1:])
            parts.append(_canonical(trees, sign * (-1) ** offset))
        offset += m
    return lc_sum(parts)


def tree_differential(x: LinComb | Tree | Forest) -> LinComb:
    """Edge-contraction differential on a linear combination of forests."""
    if isinstance(x, Tree):
        x = forest_element(x)
    elif isinstance(x, Forest):
        x = forest_element(*x.trees)
    return x.map(_forest_diff)


def forest_product(a: LinComb, b: LinComb) -> LinComb:
    from .algebra import bilinear

    return bilinear(a, b, lambda f, g: _canonical(list(f.trees) + list(g.trees), 1))


def tree_shapes(edges: int) -> Iterator[Node]:
    """Undecorated shapes (leaf deco ``None``) of planted trees with ``edges`` edges.

    Internal vertices have at least two children.
    """
    for n in _subtrees(edges):
        yield n


def _subtrees(edges: int) -> list[Node]:
    # a subtree hanging from an edge; ``edges`` counts that edge too
    if edges == 1:
        return [Node("?")]
    out = []
    for comp in _compositions(edges - 1, 2):
        for kids in _product_of([_subtrees(c) for c in comp]):
            out.append(Node(None, tuple(kids)))
    return out


def _compositions(total: int, min_parts: int) -> Iterator[list[int]]:
    def rec(rem: int) -> Iterator[list[int]]:
        if rem == 0:
            yield []
            return
        for first in range(1, rem + 1):
            for rest in rec(rem - first):
                yield [first] + rest

    for c in rec(total):
        if len(c) >= min_parts:
            yield c


def _product_of(lists: list[list[Node]]) -> Iterator[list[Node]]:
    if not lists:
        yield []
        return
    for x in lists[0]:
        for rest in _product_of(lists[1:]):
            yield [x] + rest


def decorate(shape: Node, root: str, leaves: list[str]) -> Tree:
    """Fill the leaves of ``shape`` with ``leaves`` in order."""
    it = iter(leaves)

    def walk(n: Node) -> Node:
        if n.is_leaf:
            return Node(next(it), (), n.second)
        return Node(None, tuple(walk(c) for c in n.children), n.second)

    return Tree(root, walk(shape))


def count_leaves(n: Node) -> int:
    return 1 if n.is_leaf else sum(count_leaves(c) for c in n.children)
