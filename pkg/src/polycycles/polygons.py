"""Decorated polygons, arrows, dissections and the duality with trivalent trees.

Sides are numbered ``1..N`` in the polygon's linear order, side ``N`` being
the root.  Vertex ``k`` (``0 <= k < N``) joins side ``k`` and side ``k + 1``,
where side ``0`` means side ``N``; vertex 0 is the first vertex.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from math import comb
from typing import Iterator

from .algebra import LinComb, Wedge, lc_sum
from .trees import Node, Tree, forest_element, forest_product

DECORATED, UNDECORATED, SECOND = "d", "u", "s"


@dataclass(frozen=True)
class Side:
    kind: str
    atom: str | None = None

    def key(self) -> str:
        if self.kind == UNDECORATED:
            return "_"
        if self.kind == SECOND:
            return "~" + str(self.atom)
        return str(self.atom)


def side(text: str) -> Side:
    if text == "_":
        return Side(UNDECORATED)
    if text.startswith("~"):
        return Side(SECOND, text[1:])
    return Side(DECORATED, text)


class PolygonError(ValueError):
    pass


@dataclass(frozen=True)
class Polygon:
    """Oriented polygon; the last side is the root side."""

    sides: tuple[Side, ...]

    def __post_init__(self) -> None:
        s = self.sides
        if len(s) < 2:
            raise PolygonError("a polygon needs at least two sides")
        if any(x.kind == SECOND for x in s[1:]):
            raise PolygonError("a second-type side may only come first")

    @classmethod
    def of(cls, *decos: str) -> Polygon:
        return cls(tuple(side(str(d)) for d in decos))

    def key(self) -> str:
        return "[" + ",".join(x.key() for x in self.sides) + "]"

    def __str__(self) -> str:
        return self.key()

    @property
    def n(self) -> int:
        return len(self.sides)

    @property
    def enhanced(self) -> bool:
        return self.sides[0].kind == SECOND

    def side_at(self, j: int) -> Side:
        return self.sides[j - 1]

    def reversed(self) -> Polygon:
        """Opposite orientation: the non-root sides in reverse order."""
        return Polygon(tuple(reversed(self.sides[:-1])) + (self.sides[-1],))


def validate_polygon(p: Polygon) -> Polygon:
    """Reject polygons whose first or last side is undecorated."""
    if p.sides[0].kind == UNDECORATED or p.sides[-1].kind != DECORATED:
        raise PolygonError("first and last sides must be decorated")
    return p


def weight(p: Polygon) -> int:
    return p.n - 1 - (1 if p.enhanced else 0)


@dataclass(frozen=True, order=True)
class Arrow:
    vertex: int
    side: int

    @property
    def backward(self) -> bool:
        return self.side < self.vertex

    def key(self) -> str:
        return f"v{self.vertex}->{self.side}"


def arrows(p: Polygon) -> list[Arrow]:
    """All nontrivial arrows, with the enhanced restrictions when they apply."""
    n = p.n
    out = []
    for k in range(n):
        incident = {k if k else n, k + 1}
        for j in range(1, n + 1):
            if j in incident:
                continue
            if p.enhanced and (k == 0 or j == 1):
                continue
            out.append(Arrow(k, j))
    return out


def _check_arrow(p: Polygon, a: Arrow) -> None:
    if a not in arrows(p):
        raise PolygonError(f"arrow {a.key()} is not allowed in {p.key()}")


def dissect_one(p: Polygon, a: Arrow) -> tuple[Polygon, Polygon, Polygon]:
    """Cut ``p`` along ``a``.

    Returns:
        ``(root_part, cut_part, cut_part_bar)``.  The cut part has the side
        where ``a`` ends as its root; its orientation is reversed for a
        backward arrow, while ``cut_part_bar`` always keeps the inherited one.
    """
    _check_arrow(p, a)
    s, k, j = p.sides, a.vertex, a.side
    if a.backward:
        root = s[:j] + s[k:]
        inherited = s[j:k] + (s[j - 1],)
        cut = Polygon(tuple(reversed(inherited[:-1])) + (inherited[-1],))
    else:
        root = s[:k] + s[j - 1:]
        inherited = s[k:j]
        cut = Polygon(inherited)
    return Polygon(root), cut, Polygon(inherited)


def polygon_differential(x: LinComb | Polygon | Wedge, variant: str = "standard") -> LinComb:
    """Differential on wedge words of polygons, extended by the Leibniz rule.

    Args:
        x: a polygon, a wedge word or a linear combination of wedge words.
        variant: ``"standard"`` uses cut parts with sign ``(-1)^weight`` on
            backward arrows; ``"bar"`` keeps inherited orientations with sign -1.
    """
    if isinstance(x, Polygon):
        x = LinComb.single(Wedge((x,)))
    elif isinstance(x, Wedge):
        x = LinComb.single(x)
    return x.map(lambda w: _wedge_diff(w, variant))


def polygon_diff_terms(p: Polygon, variant: str = "standard") -> list[tuple[int, Polygon, Polygon]]:
    """``(sign, root_part, cut_part)`` for every arrow of ``p``."""
    out = []
    for a in arrows(p):
        root, cut, cut_bar = dissect_one(p, a)
        if variant == "bar":
            out.append((-1 if a.backward else 1, root, cut_bar))
        else:
            out.append(((-1) ** weight(cut) if a.backward else 1, root, cut))
    return out


def _wedge_diff(w: Wedge, variant: str) -> LinComb:
    parts = []
    f = w.factors
    for i, p in enumerate(f):
        for sign, root, cut in polygon_diff_terms(p, variant):
            word, s = Wedge.build(f[:i] + (root, cut) + f[i + 1:])
            if s:
                parts.append(LinComb.single(word, (-1) ** i * sign * s))
    return lc_sum(parts)


# --- dissections -------------------------------------------------------------

def _pos_vertex(k: int) -> int:
    return 2 * k


def _pos_side(j: int) -> int:
    return 2 * j - 1


def crosses(a: Arrow, b: Arrow) -> bool:
    """Whether two arrows of the same polygon meet outside a shared start."""
    if a == b or a.vertex == b.vertex or a.side == b.side:
        return False
    x, y = sorted((_pos_vertex(a.vertex), _pos_side(a.side)))
    inside = [x < q < y for q in (_pos_vertex(b.vertex), _pos_side(b.side))]
    return inside[0] != inside[1]


@dataclass(frozen=True)
class Dissection:
    polygon: Polygon
    arrows: tuple[Arrow, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "arrows", tuple(sorted(set(self.arrows))))

    def key(self) -> str:
        return self.polygon.key() + "{" + ",".join(a.key() for a in self.arrows) + "}"

    @property
    def parts(self) -> int:
        return len(self.arrows) + 1


def is_dissection(p: Polygon, arrs: tuple[Arrow, ...]) -> bool:
    allowed = set(arrows(p))
    if any(a not in allowed for a in arrs):
        return False
    return not any(crosses(a, b) for a, b in combinations(arrs, 2))


def enumerate_dissections(p: Polygon, n: int) -> list[Dissection]:
    """All dissections of ``p`` into ``n`` regions."""
    if n < 1:
        raise ValueError("n must be positive")
    return [d for d in all_dissections(p) if d.parts == n]


def all_dissections(p: Polygon) -> list[Dissection]:
    return list(_all_dissections(p))


@lru_cache(maxsize=256)
def _all_dissections(p: Polygon) -> tuple[Dissection, ...]:
    arrs = arrows(p)
    out: list[Dissection] = []

    def rec(start: int, chosen: list[Arrow]) -> None:
        out.append(Dissection(p, tuple(chosen)))
        for i in range(start, len(arrs)):
            a = arrs[i]
            if all(not crosses(a, b) for b in chosen):
                chosen.append(a)
                rec(i + 1, chosen)
                chosen.pop()

    rec(0, [])
    return tuple(out)


@dataclass(frozen=True)
class Region:
    """One region of a dissection.

    ``points`` is the cyclic boundary in the polygon's orientation; ``parent``
    and ``root_arrow`` are ``None`` for the root region.
    """

    index: int
    points: tuple[int, ...]
    parent: int | None
    root_arrow: Arrow | None
    children: tuple[int, ...]
    polygon: Polygon


@dataclass(frozen=True)
class DissectionData:
    dissection: Dissection
    regions: tuple[Region, ...]

    @property
    def root(self) -> Region:
        return self.regions[0]

    def below(self, a: Arrow) -> Region:
        """The region cut off by ``a``."""
        for r in self.regions:
            if r.root_arrow == a:
                return r
        raise KeyError(a)


def _boundary_points(p: Polygon, arrs: tuple[Arrow, ...]) -> tuple[list[tuple], list[int]]:
    """Points around the boundary and the side label of the arc after each."""
    n = p.n
    pts: list[tuple] = []
    labels: list[int] = []
    for j in range(1, n + 1):
        pts.append(("V", j - 1))
        labels.append(j)
        ends = [a for a in arrs if a.side == j]
        # endpoints nearer to vertex j belong to arrows starting nearer to it
        ends.sort(key=lambda a: -((a.vertex - j) % n))
        for a in ends:
            pts.append(("E", a))
            labels.append(j)
    return pts, labels


@lru_cache(maxsize=4096)
def dissection_data(d: Dissection) -> DissectionData:
    """Regions, dual tree and region polygons of a dissection."""
    p = d.polygon
    pts, labels = _boundary_points(p, d.arrows)
    m = len(pts)
    index = {q: i for i, q in enumerate(pts)}
    chords = {a: (index[("V", a.vertex)], index[("E", a)]) for a in d.arrows}
    regions: list[list[int]] = [list(range(m))]
    for a in d.arrows:
        v, e = chords[a]
        r = next(r for r in regions if e in r)
        i, j = sorted((r.index(v), r.index(e)))
        regions.remove(r)
        regions.append(r[i:j + 1])
        regions.append(r[j:] + r[:i + 1])
    chord_of = {frozenset(c): a for a, c in chords.items()}

    def arcs(r: list[int]) -> list[tuple[int, int]]:
        return [(r[i], r[(i + 1) % len(r)]) for i in range(len(r))]

    def is_arc(x: int, y: int) -> bool:
        return y == (x + 1) % m

    root_idx = next(i for i, r in enumerate(regions) if (m - 1, 0) in arcs(r))
    order = [root_idx]
    parent: dict[int, int | None] = {root_idx: None}
    via: dict[int, Arrow | None] = {root_idx: None}
    kids: dict[int, list[int]] = {}
    queue = [root_idx]
    while queue:
        ri = queue.pop(0)
        r = regions[ri]
        root_arc = _root_arc(r, via[ri], chords, m)
        seq = arcs(r)
        start = seq.index(root_arc)
        kids[ri] = []
        for x, y in seq[start + 1:] + seq[:start]:
            if is_arc(x, y):
                continue
            a = chord_of[frozenset((x, y))]
            if a == via[ri]:
                continue
            e = chords[a][1]
            child = next(i for i, rr in enumerate(regions) if i not in parent and e in rr and i != ri)
            parent[child] = ri
            via[child] = a
            kids[ri].append(child)
            order.append(child)
            queue.append(child)
    renum = {ri: k for k, ri in enumerate(order)}
    out = []
    for ri in order:
        r = regions[ri]
        root_arc = _root_arc(r, via[ri], chords, m)
        seq = arcs(r)
        start = seq.index(root_arc)
        labs = [labels[x] for x, y in seq[start + 1:] + seq[:start] if is_arc(x, y)]
        if via[ri] is not None and via[ri].backward:
            labs.reverse()
        labs.append(labels[root_arc[0]])
        poly = Polygon(tuple(p.side_at(j) for j in labs))
        out.append(Region(
            renum[ri], tuple(r), None if parent[ri] is None else renum[parent[ri]],
            via[ri], tuple(renum[c] for c in kids[ri]), poly))
    return DissectionData(d, tuple(out))


def _root_arc(r: list[int], a: Arrow | None, chords: dict, m: int) -> tuple[int, int]:
    seq = [(r[i], r[(i + 1) % len(r)]) for i in range(len(r))]
    if a is None:
        return (m - 1, 0)
    e = chords[a][1]
    for x, y in seq:
        if y == (x + 1) % m and e in (x, y):
            return (x, y)
    raise AssertionError("region without a root side")


def region_polygons(d: Dissection) -> list[Polygon]:
    return [r.polygon for r in dissection_data(d).regions]


def dual_tree(d: Dissection) -> list[tuple[int | None, tuple[int, ...]]]:
    """``(parent, children)`` per region; region 0 is the root."""
    return [(r.parent, r.children) for r in dissection_data(d).regions]


def sign_dissection(d: Dissection) -> int:
    data = dissection_data(d)
    sign = 1
    for r in data.regions[1:]:
        if r.root_arrow.backward and weight(r.polygon) % 2:
            sign = -sign
    return sign


def linear_extensions(parents: list[int | None]) -> Iterator[tuple[int, ...]]:
    """Orderings of the regions where each region follows its parent."""
    n = len(parents)
    children: dict[int, list[int]] = {i: [] for i in range(n)}
    for i, p in enumerate(parents):
        if p is not None:
            children[p].append(i)

    def rec(avail: list[int], acc: list[int]) -> Iterator[tuple[int, ...]]:
        if len(acc) == n:
            yield tuple(acc)
            return
        for i, x in enumerate(avail):
            nxt = avail[:i] + avail[i + 1:] + children[x]
            acc.append(x)
            yield from rec(nxt, acc)
            acc.pop()

    roots = [i for i, p in enumerate(parents) if p is None]
    yield from rec(roots, [])


# --- triangulations and trees ---------------------------------------------------

def _binary_trees(leaves: tuple[Node, ...]) -> list[Node]:
    if len(leaves) == 1:
        return [leaves[0]]
    out = []
    for i in range(1, len(leaves)):
        for a in _binary_trees(leaves[:i]):
            for b in _binary_trees(leaves[i:]):
                out.append(Node(None, (a, b)))
    return out


def _mark_second(n: Node) -> Node:
    """Mark the leftmost path of ``n`` as second type."""
    if n.is_leaf:
        return Node(n.deco, (), True)
    return Node(None, (_mark_second(n.children[0]),) + n.children[1:], True)


def _too_many_undecorated(n: Node) -> bool:
    if n.is_leaf:
        return False
    bare = sum(1 for c in n.children if c.is_leaf and c.deco == "_")
    return bare > 1 or any(_too_many_undecorated(c) for c in n.children)


def triangulations_psi(x: Polygon | Wedge | LinComb) -> LinComb:
    """Sum of dual trivalent trees, each with its canonical orientation.

    Wedge words map to products of forests.  Triangulations with a triangle
    carrying more than one undecorated side are dropped.
    """
    if isinstance(x, Polygon):
        return _psi_polygon(x)
    if isinstance(x, Wedge):
        out = forest_element()
        for p in x.factors:
            out = forest_product(out, _psi_polygon(p))
        return out
    return x.map(triangulations_psi)


@lru_cache(maxsize=1024)
def _psi_polygon(p: Polygon) -> LinComb:
    leaves = tuple(Node(s.key().lstrip("~"), ()) for s in p.sides[:-1])
    root = p.sides[-1].atom
    parts = []
    for t in _binary_trees(leaves):
        if _too_many_undecorated(t):
            continue
        if p.enhanced:
            t = _mark_second(t)
        parts.append(forest_element(Tree(root, t)))
    return lc_sum(parts)


def tree_sum(decorations: list[str]) -> LinComb:
    """Sum of all trivalent trees with leaves ``x1..xm`` in order and root ``x_{m+1}``."""
    if len(set(decorations)) != len(decorations):
        raise PolygonError("tree_sum needs pairwise distinct decorations")
    return triangulations_psi(Polygon.of(*decorations))


def catalan_tree_count(m: int) -> int:
    """Number of trivalent plane trees with ``m`` leaves."""
    return comb(2 * (m - 1), m - 1) // m
