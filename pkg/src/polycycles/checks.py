"""Invariant suites shared by ``polycycles verify`` and the test-suite.

Every check walks its cases from small to large and stops at the first
failure, so the reported counterexample is a smallest one in that order.
Random cases come from a ``random.Random`` seeded by the caller.
"""

from __future__ import annotations

import math
import random
import time
from dataclasses import dataclass
from itertools import product
from typing import Callable, Iterator

from .algebra import LinComb, Wedge, lc_sum, permutation_sign, shuffle, shuffle_lc, wedge_normalize
from .bar import (
    BarWord,
    EnhancedLetter,
    bar_differential,
    bar_element,
    coassociativity_sides,
    coproduct_admissible,
    coproduct_deconcat,
)
from .cycles import concat, cycle_differential, decompose, face, forest_cycling, is_admissible, iterated_faces
from .iterint import (
    ISymbol,
    cobracket_from_coproduct,
    cobracket_wedge,
    compare_coproducts,
    i_cobracket,
    i_normalize,
    imul,
    polygon_to_i,
    transported_polygon_differential,
)
from .polygons import (
    Arrow,
    Dissection,
    Polygon,
    all_dissections,
    arrows,
    catalan_tree_count,
    dissection_data,
    polygon_diff_terms,
    polygon_differential,
    sign_dissection,
    tree_sum,
    triangulations_psi,
    weight,
)
from .realization import NumericConfig, iterint_numeric, li_one, li_series, realize_bar_entry
from .trees import Forest, Node, Tree, decorate, forest_element, forest_product, mirror, tree_differential, tree_shapes

ATOMS = ("x1", "x2", "x3", "x4", "x5", "x6")


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    cases: int
    seconds: float
    counterexample: str = ""

    def line(self, timing: bool = False) -> str:
        status = "PASS" if self.passed else "FAIL"
        out = f"{status} {self.name}: {self.cases} cases"
        if timing:
            out += f" in {self.seconds:.2f}s"
        if self.counterexample:
            out += f"\n    counterexample: {self.counterexample}"
        return out


Case = tuple[str, Callable[[], bool]]


def run_cases(name: str, cases: Iterator[Case]) -> CheckResult:
    """Evaluate cases in order; the first failing one is the counterexample."""
    start = time.perf_counter()
    n = 0
    for label, test in cases:
        n += 1
        try:
            ok = test()
        except Exception as exc:  # a crash is a failure of the invariant
            ok = False
            label = f"{label} raised {type(exc).__name__}: {exc}"
        if not ok:
            return CheckResult(name, False, n, time.perf_counter() - start, label)
    return CheckResult(name, True, n, time.perf_counter() - start)


# --- enumeration helpers ----------------------------------------------------------

def growth_strings(n: int, max_blocks: int = len(ATOMS)) -> Iterator[tuple[int, ...]]:
    """Set partitions of ``n`` positions as restricted growth strings."""

    def rec(prefix: list[int], top: int) -> Iterator[tuple[int, ...]]:
        if len(prefix) == n:
            yield tuple(prefix)
            return
        for b in range(min(top + 2, max_blocks)):
            prefix.append(b)
            yield from rec(prefix, max(top, b))
            prefix.pop()

    if n == 0:
        yield ()
        return
    yield from rec([0], 0)


def decoration_patterns(n: int) -> Iterator[list[str]]:
    for g in growth_strings(n):
        yield [ATOMS[i] for i in g]


def polygons_up_to(max_sides: int, patterns: bool = True) -> Iterator[Polygon]:
    for n in range(2, max_sides + 1):
        if patterns:
            for decos in decoration_patterns(n):
                yield Polygon.of(*decos)
        else:
            yield Polygon.of(*ATOMS[:n])


def trees_up_to(max_edges: int, patterns: bool = True) -> Iterator[Tree]:
    for m in range(1, max_edges + 1):
        for shape in tree_shapes(m):
            k = _leaves(shape)
            decos = decoration_patterns(k + 1) if patterns else [list(ATOMS[:k + 1])]
            for d in decos:
                yield decorate(shape, d[-1], d[:-1])


def _leaves(n: Node) -> int:
    return 1 if n.is_leaf else sum(_leaves(c) for c in n.children)


def random_shape(rng: random.Random, edges: int) -> Node:
    # no planted tree has exactly two edges
    shapes = list(tree_shapes(edges if edges != 2 else 3))
    return rng.choice(shapes)


def random_tree(rng: random.Random, edges: int, generic: bool = True) -> Tree:
    shape = random_shape(rng, edges)
    k = _leaves(shape)
    pool = [f"y{i}" for i in range(k + 1)]
    if generic:
        rng.shuffle(pool)
        decos = pool
    else:
        decos = [rng.choice(pool[:3]) for _ in range(k + 1)]
    return decorate(shape, decos[-1], decos[:-1])


# --- algebra ------------------------------------------------------------------------

def check_algebra(max_len: int = 6, rng: random.Random | None = None) -> list[CheckResult]:
    words = [w for n in range(max_len // 3 + 1) for w in product("ab", repeat=n)]

    def shuffle_cases() -> Iterator[Case]:
        for u in words:
            for v in words:
                yield f"{u} {v} commute", lambda u=u, v=v: shuffle(u, v) == shuffle(v, u)
                for w in words:
                    if len(u) + len(v) + len(w) > max_len:
                        continue

                    def assoc(u=u, v=v, w=w) -> bool:
                        one = shuffle_lc(shuffle(u, v), LinComb.single(w))
                        two = shuffle_lc(LinComb.single(u), shuffle(v, w))
                        return one == two

                    yield f"{u} {v} {w} associate", assoc

    def wedge_cases() -> Iterator[Case]:
        for n in range(1, 5):
            for degs in product((1, 2), repeat=n):
                raw = [(f"g{i}", d) for i, d in enumerate(degs)][::-1]
                srt, s = wedge_normalize(raw)

                def idem(srt=srt, s=s) -> bool:
                    again, s2 = wedge_normalize(list(srt))
                    return s != 0 and again == srt and s2 == 1

                yield f"degrees {degs}", idem

    return [run_cases("algebra: shuffle associative and commutative", shuffle_cases()),
            run_cases("algebra: wedge normalization idempotent", wedge_cases())]


# --- trees --------------------------------------------------------------------------

def check_trees(max_edges: int = 6, rng: random.Random | None = None, random_forests: int = 200) -> list[CheckResult]:
    rng = rng or random.Random(0)

    def d2(x: LinComb) -> bool:
        return not tree_differential(tree_differential(x))

    def exhaustive() -> Iterator[Case]:
        for t in trees_up_to(max_edges):
            yield t.key(), lambda t=t: d2(forest_element(t))

    def random_cases() -> Iterator[Case]:
        for _ in range(random_forests):
            a = random_tree(rng, rng.randint(2, 5), generic=False)
            b = random_tree(rng, rng.randint(2, 5), generic=False)
            x = forest_element(a, b)
            yield f"{a.key()} * {b.key()}", lambda x=x: d2(x)

    def grading() -> Iterator[Case]:
        for t in trees_up_to(min(max_edges, 5), patterns=False):
            n, p = t.edge_count(), t.leaf_count()

            def ok(t=t, n=n, p=p) -> bool:
                return all(f.edge_count() == n - 1 and sum(s.leaf_count() for s in f.trees) == p
                           for f in tree_differential(t).basis())

            yield t.key(), ok

    def leibniz() -> Iterator[Case]:
        for _ in range(random_forests // 2):
            a = forest_element(random_tree(rng, rng.randint(2, 4), generic=False))
            b = forest_element(random_tree(rng, rng.randint(2, 4), generic=False))
            ea = next(iter(a.basis())).edge_count()

            def ok(a=a, b=b, ea=ea) -> bool:
                lhs = tree_differential(forest_product(a, b))
                rhs = forest_product(tree_differential(a), b) + forest_product(a, tree_differential(b)).scale((-1) ** ea)
                return lhs == rhs

            yield f"{a} * {b}", ok

    return [run_cases(f"trees: d^2 = 0, all trees <= {max_edges} edges, all decoration patterns", exhaustive()),
            run_cases(f"trees: d^2 = 0 on {random_forests} random two-tree forests", random_cases()),
            run_cases("trees: d lowers edges by one and keeps leaves", grading()),
            run_cases("trees: graded Leibniz rule on random pairs", leibniz())]


# --- polygons -------------------------------------------------------------------------

def check_polygons(max_sides: int = 6, rng: random.Random | None = None) -> list[CheckResult]:
    def squares() -> Iterator[Case]:
        for p in polygons_up_to(max_sides):
            for v in ("standard", "bar"):
                yield f"{p.key()} {v}", lambda p=p, v=v: not polygon_differential(polygon_differential(p, v), v)

    def counts() -> Iterator[Case]:
        for n in range(2, max_sides + 1):
            p = Polygon.of(*ATOMS[:n])
            yield p.key(), lambda p=p: len(all_dissections(p)) == count_dissections_geometric(p.n)

    return [run_cases(f"polygons: both differentials square to zero, <= {max_sides} sides", squares()),
            run_cases("polygons: dissection count matches a geometric enumeration", counts()),
            run_cases("polygons: reversing an N-gon changes the dual tree orientation by (-1)^N",
                      _reversal_cases(max_sides + 1))]


def _arrow_segment(n: int, a: Arrow) -> tuple[complex, complex]:
    def vertex(k: int) -> complex:
        return complex(math.cos(2 * math.pi * k / n), math.sin(2 * math.pi * k / n))

    start, end = vertex(a.side - 1), vertex(a.side % n)
    # endpoints on one side are ordered by the distance of their source vertex
    lam = 1 - ((a.vertex - a.side) % n) / n
    return vertex(a.vertex), start + lam * (end - start)


def _segments_cross(s: tuple[complex, complex], t: tuple[complex, complex]) -> bool:
    def orient(p: complex, q: complex, r: complex) -> float:
        return ((q - p).conjugate() * (r - p)).imag

    (p1, p2), (q1, q2) = s, t
    if abs(p1 - q1) < 1e-12:
        return False
    d1, d2 = orient(q1, q2, p1), orient(q1, q2, p2)
    d3, d4 = orient(p1, p2, q1), orient(p1, p2, q2)
    return d1 * d2 < 0 and d3 * d4 < 0


def count_dissections_geometric(n: int) -> int:
    """Non-crossing arrow sets counted with straight segments in a regular polygon."""
    arrs = [Arrow(k, j) for k in range(n) for j in range(1, n + 1) if j not in {k if k else n, k + 1}]
    segs = [_arrow_segment(n, a) for a in arrs]
    total = 0

    def rec(start: int, chosen: list[int]) -> None:
        nonlocal total
        total += 1
        for i in range(start, len(arrs)):
            if all(not _segments_cross(segs[i], segs[c]) for c in chosen):
                chosen.append(i)
                rec(i + 1, chosen)
                chosen.pop()

    rec(0, [])
    return total


def _reversal_cases(max_sides: int) -> Iterator[Case]:
    for n in range(3, max_sides + 1):
        p = Polygon.of(*ATOMS[:n - 1], "r") if n <= len(ATOMS) + 1 else None
        if p is None:
            continue
        for f in triangulations_psi(p).basis():
            t = f.trees[0]

            def ok(t=t, n=n) -> bool:
                return mirror_orientation_sign(t) == (-1) ** n

            yield t.key(), ok


def mirror_orientation_sign(t: Tree) -> int:
    """Sign comparing the preorder of ``t`` with the preorder of its mirror image."""
    ids: list[int] = []
    counter = iter(range(10**6))

    def label(n: Node) -> tuple:
        i = next(counter)
        return (i, tuple(label(c) for c in n.children))

    def mirrored_preorder(n: tuple) -> None:
        ids.append(n[0])
        for c in reversed(n[1]):
            mirrored_preorder(c)

    mirrored_preorder(label(t.child))
    return permutation_sign(ids)


# --- triangulation duality -----------------------------------------------------------------

def psi_of_differential(p: Polygon, variant: str) -> LinComb:
    """Image of ``p``'s differential under triangulation duality.

    For ``"standard"`` a reversed cut part is read in the embedding of the
    original polygon: its trees are mirrored and carry the orientation sign
    measured by ``mirror_orientation_sign``.
    """
    parts = []
    # the terms come in the order of arrows(p)
    for a, (sign, root, cut) in zip(arrows(p), polygon_diff_terms(p, variant)):
        psi_root = triangulations_psi(root)
        psi_cut = triangulations_psi(cut)
        if variant == "standard" and a.backward:
            psi_cut = psi_cut.map(lambda f: _mirror_forest(f))
        parts.append(forest_product(psi_root, psi_cut).scale(sign))
    return lc_sum(parts)


def _mirror_forest(f: Forest) -> LinComb:
    (t,) = f.trees
    return forest_element(mirror(t)).scale(mirror_orientation_sign(t))


def check_psi(max_sides: int = 6, rng: random.Random | None = None) -> list[CheckResult]:
    def cases(variant: str) -> Iterator[Case]:
        for p in polygons_up_to(max_sides):
            if p.n < 3:
                continue

            def ok(p=p) -> bool:
                return tree_differential(triangulations_psi(p)) == psi_of_differential(p, variant)

            yield p.key(), ok

    return [run_cases(f"psi: d psi = psi d for {v}, <= {max_sides} sides", cases(v)) for v in ("standard", "bar")]


# --- cycles ---------------------------------------------------------------------------------

def check_cycles(max_edges: int = 5, rng: random.Random | None = None, random_trees: int = 100) -> list[CheckResult]:
    rng = rng or random.Random(0)
    generic = list(trees_up_to(max_edges, patterns=False))
    larger = [random_tree(rng, rng.randint(max_edges + 1, max_edges + 2)) for _ in range(random_trees)]

    def chain_map(trees: list[Tree]) -> Iterator[Case]:
        for t in trees:
            def ok(t=t) -> bool:
                return forest_cycling(tree_differential(t)) == cycle_differential(forest_cycling(t))

            yield t.key(), ok

    def admissible() -> Iterator[Case]:
        for t in generic:
            yield t.key(), lambda t=t: is_admissible(forest_cycling(t))

    def infinity_faces() -> Iterator[Case]:
        for t in generic:
            def ok(t=t) -> bool:
                for c in forest_cycling(t).basis():
                    for x in iterated_faces(c):
                        if any(face(x, i, "inf") for i in range(len(x.coords))):
                            return False
                return True

            yield t.key(), ok

    def bigrading() -> Iterator[Case]:
        for t in generic:
            def ok(t=t) -> bool:
                n, p = t.edge_count(), t.leaf_count()
                return all(len(c.coords) == n and len(c.params) == n - p for c in forest_cycling(t).basis())

            yield t.key(), ok

    def exponents() -> Iterator[Case]:
        for t in generic:
            def ok(t=t) -> bool:
                return all(abs(e) <= 1 for c in forest_cycling(t).basis() for x in iterated_faces(c)
                           for y in x.coords for _, e in y.mono.exps)

            yield t.key(), ok

    def pivots() -> Iterator[Case]:
        for t in generic + larger[:20]:
            def ok(t=t) -> bool:
                x = forest_cycling(t)
                return cycle_differential(x, "least") == cycle_differential(x, "greatest")

            yield t.key(), ok

    return [run_cases(f"cycles: chain map on generic trees <= {max_edges} edges", chain_map(generic)),
            run_cases(f"cycles: chain map on {random_trees} random larger trees", chain_map(larger)),
            run_cases("cycles: images are admissible", admissible()),
            run_cases("cycles: every infinity face of every iterated face is empty", infinity_faces()),
            run_cases("cycles: n coordinates and n - p parameters", bigrading()),
            run_cases("cycles: exponents stay in {-1, 0, 1}", exponents()),
            run_cases("cycles: boundary independent of the pivot choice", pivots())]


def check_decomposable(max_leaves: int = 5, rng: random.Random | None = None) -> list[CheckResult]:
    def tree_level() -> Iterator[Case]:
        for m in range(2, max_leaves + 1):
            x = tree_sum(list(ATOMS[:m + 1]))
            yield f"m={m}", lambda x=x: all(len(f.trees) >= 2 for f in tree_differential(x).basis())

    def cycle_level() -> Iterator[Case]:
        for m in range(2, max_leaves + 1):
            x = forest_cycling(tree_sum(list(ATOMS[:m + 1])))
            for c, coeff in cycle_differential(x):
                yield f"m={m} {c.key()}", lambda c=c: decomposable_term(c)

    return [run_cases(f"tree sums: boundary has no single-tree terms, m <= {max_leaves}", tree_level()),
            run_cases(f"tree sums: cycle boundary terms split into admissible factors, m <= {max_leaves}",
                      cycle_level())]


def decomposable_term(c) -> bool:
    split = decompose(c)
    if split is None:
        return False
    a, b = split
    if len(a) != 1 or len(b) != 1:
        return False
    if not (is_admissible(a) and is_admissible(b)):
        return False
    total = len(c.coords)
    if not all(0 < len(x.coords) < total for x in a.basis() + b.basis()):
        return False
    prod = concat(a, b)
    return prod.basis() == [c]


def check_catalan(max_leaves: int = 7, rng: random.Random | None = None) -> list[CheckResult]:
    def cases() -> Iterator[Case]:
        for m in range(1, max_leaves + 1):
            decos = [f"z{i}" for i in range(m + 1)]
            yield f"m={m}", lambda m=m, decos=decos: len(tree_sum(decos)) == catalan_tree_count(m) == _catalan(m)

    return [run_cases(f"tree sums: Catalan many trees, m <= {max_leaves}", cases())]


def _catalan(m: int) -> int:
    # recursive count of binary bracketings of m leaves
    c = [1] + [0] * m
    for k in range(1, m):
        c[k] = sum(c[i] * c[k - 1 - i] for i in range(k))
    return c[m - 1]


# --- bar -----------------------------------------------------------------------------------

def enhanced_polygons(max_sides: int) -> Iterator[Polygon]:
    for n in range(3, max_sides + 1):
        yield Polygon.of("~s0", *ATOMS[:n - 1])


def check_bar(max_sides: int = 5, rng: random.Random | None = None, cocycle_sides: int | None = None,
              random_words: int = 100) -> list[CheckResult]:
    rng = rng or random.Random(0)
    cocycle_sides = cocycle_sides or max_sides + 1

    def cocycle() -> Iterator[Case]:
        for p in list(polygons_up_to(cocycle_sides, patterns=False)) + list(enhanced_polygons(cocycle_sides)):
            for conv in ("alternating", "koszul"):
                yield f"{p.key()} {conv}", lambda p=p, conv=conv: not bar_differential(bar_element(p), conv)

    def mt() -> Iterator[Case]:
        for p in list(polygons_up_to(max_sides)) + list(enhanced_polygons(max_sides)):
            yield p.key(), lambda p=p: coproduct_deconcat(bar_element(p)) == coproduct_admissible(p)

    def coassoc() -> Iterator[Case]:
        for p in polygons_up_to(max_sides, patterns=False):
            def ok(p=p) -> bool:
                lhs, rhs = coassociativity_sides(p)
                return lhs == rhs and lhs == _deconcat_triple_of(bar_element(p))

            yield p.key(), ok

    def counit() -> Iterator[Case]:
        for p in polygons_up_to(max_sides, patterns=False):
            def ok(p=p) -> bool:
                b = bar_element(p)
                delta = coproduct_admissible(p)
                edge = LinComb(((x, y), c) for (x, y), c in delta if not x.letters or not y.letters)
                full = lc_sum([LinComb(((BarWord(), w), c) for w, c in b), LinComb(((w, BarWord()), c) for w, c in b)])
                return edge == full

            yield p.key(), ok

    def square() -> Iterator[Case]:
        pool = [Polygon.of(*ATOMS[:n]) for n in (2, 3, 4)] + [Polygon.of("x2", "x1", "x3")]
        for _ in range(random_words):
            k = rng.randint(1, 3)
            letters = []
            for _ in range(k):
                w, s = Wedge.build(rng.sample(pool, rng.randint(1, 2)))
                letters.append(w)
            if rng.random() < 0.3:
                letters[0] = EnhancedLetter(Polygon.of("~s0", "x1", "x2"), letters[0])
            word = BarWord(tuple(letters))
            yield word.key(), lambda word=word: not bar_differential(bar_differential(word, "koszul"), "koszul")

    return [run_cases(f"bar: B(p) is a cocycle, <= {cocycle_sides} sides incl. enhanced", cocycle()),
            run_cases(f"bar: deconcatenation equals the admissible-dissection formula, <= {max_sides} sides", mt()),
            run_cases(f"bar: coassociativity, <= {max_sides} sides", coassoc()),
            run_cases(f"bar: counit terms, <= {max_sides} sides", counit()),
            run_cases(f"bar: D^2 = 0 on {random_words} random words", square())]


def _deconcat_triple_of(b: LinComb) -> LinComb:
    from .bar import deconcat_triple

    return deconcat_triple(b)


# --- dissection signs ------------------------------------------------------------------------

def induced_dissections(outer: Dissection, inner: Dissection) -> list[tuple[Polygon, Dissection]]:
    """For ``inner`` contained in ``outer``, the dissection ``outer`` induces on each region of ``inner``.

    Built directly on the boundary points of ``outer``: regions of ``inner``
    are traced along them, their sides are the runs between points of
    ``inner``, and each extra arrow is mapped to a vertex run and a side.
    """
    p = outer.polygon
    n = p.n
    extra = [a for a in outer.arrows if a not in inner.arrows]
    pts = []
    for j in range(1, n + 1):
        pts.append(("V", j - 1))
        ends = sorted((a for a in outer.arrows if a.side == j), key=lambda a: -((a.vertex - j) % n))
        pts += [("E", a) for a in ends]
    m = len(pts)
    pos = {q: i for i, q in enumerate(pts)}
    inner_pts = {i for i, q in enumerate(pts) if q[0] == "V" or q[1] in inner.arrows}
    chords = {frozenset((pos[("V", a.vertex)], pos[("E", a)])): a for a in inner.arrows}
    regions = [list(range(m))]
    for a in inner.arrows:
        v, e = pos[("V", a.vertex)], pos[("E", a)]
        r = next(r for r in regions if v in r and e in r)
        i, j = sorted((r.index(v), r.index(e)))
        regions.remove(r)
        regions += [r[i:j + 1], r[j:] + r[:i + 1]]
    data = dissection_data(inner)
    out = []
    for reg in data.regions:
        cyc = _region_for(reg, regions, inner_pts)
        sides, runs = _walk(cyc, inner_pts, chords, m, reg.root_arrow, pos)
        k = len(sides)
        if k != reg.polygon.n:
            raise AssertionError("region traced with the wrong number of sides")
        reverse = reg.root_arrow is not None and reg.root_arrow.backward
        vertex_of_run = {}
        for i, run in enumerate(runs):
            vertex_of_run[i] = (k - 1 - i) if reverse else i
        side_of = {}
        for i, s in enumerate(sides):
            if i == 0:
                label = k
            else:
                label = (k - i) if reverse else i
            for q in s[1:-1]:
                side_of[q] = label
        arrs = []
        for a in extra:
            e = pos[("E", a)]
            if e not in side_of:
                continue
            v = pos[("V", a.vertex)]
            run = next(i for i, r in enumerate(runs) if v in r)
            arrs.append(Arrow(vertex_of_run[run], side_of[e]))
        out.append((reg.polygon, Dissection(reg.polygon, tuple(arrs))))
    return out


def _region_for(reg, regions: list[list[int]], inner_pts: set[int]) -> list[int]:
    # the inner dissection's own points are a subsequence of the outer ones
    order = sorted(inner_pts)
    target = {order[i] for i in reg.points}
    return next(r for r in regions if set(r) & inner_pts == target)


def _walk(cyc: list[int], inner_pts: set, chords: dict, m: int, root_arrow, pos: dict):
    """Sides (point runs along the boundary) and vertex runs of a region, root side first."""
    steps = [(cyc[i], cyc[(i + 1) % len(cyc)]) for i in range(len(cyc))]
    is_boundary = [y == (x + 1) % m for x, y in steps]
    # rotate to start at the beginning of a side that follows a vertex run
    first = next(i for i in range(len(steps)) if is_boundary[i] and cyc[i] in inner_pts)
    steps = steps[first:] + steps[:first]
    is_boundary = is_boundary[first:] + is_boundary[:first]
    sides: list[list[int]] = []
    runs: list[set[int]] = []
    cur: list[int] | None = None
    run: set[int] = set()
    for (x, y), b in zip(steps, is_boundary):
        if b:
            if cur is None:
                cur = [x]
                run.add(x)
                runs.append(run)
                run = set()
            cur.append(y)
            if y in inner_pts:
                sides.append(cur)
                cur = None
        else:
            run.update((x, y))
    if run:
        runs[0] |= run
    # runs[i] precedes sides[i]; make the root side first
    if root_arrow is None:
        root = next(i for i, s in enumerate(sides) if s[-1] == 0)
    else:
        e = pos[("E", root_arrow)]
        root = next(i for i, s in enumerate(sides) if e in (s[0], s[-1]))
    sides = sides[root:] + sides[:root]
    runs = runs[root:] + runs[:root]
    # vertex run i sits between side i and side i+1: shift so runs follow sides
    runs = runs[1:] + runs[:1]
    return sides, runs


def check_signs(samples: int = 500, rng: random.Random | None = None, max_sides: int = 8) -> list[CheckResult]:
    rng = rng or random.Random(0)

    def pairs() -> Iterator[tuple[Dissection, Dissection]]:
        for _ in range(samples):
            n = rng.randint(3, max_sides)
            p = Polygon.of(*(f"y{i}" for i in range(n)))
            outer = _random_dissection(rng, p)
            inner = Dissection(p, tuple(a for a in outer.arrows if rng.random() < 0.5))
            yield inner, outer

    def rty1() -> Iterator[Case]:
        for inner, outer in pairs():
            def ok(inner=inner, outer=outer) -> bool:
                prod = sign_dissection(inner)
                for _, d in induced_dissections(outer, inner):
                    prod *= sign_dissection(d)
                return prod == sign_dissection(outer)

            yield f"{inner.key()} inside {outer.key()}", ok

    def rty2() -> Iterator[Case]:
        for _, d in pairs():
            data = dissection_data(d)
            for r in data.regions[1:]:
                beta = r.root_arrow
                alpha = data.regions[r.parent].root_arrow
                eps_a = -1 if alpha is not None and alpha.backward else 1
                eps_b = -1 if beta.backward else 1
                smaller = Dissection(d.polygon, tuple(a for a in d.arrows if a != beta))

                def ok(d=d, smaller=smaller, e=eps_a * eps_b, chi=weight(r.polygon)) -> bool:
                    return sign_dissection(smaller) == sign_dissection(d) * e ** chi

                yield f"{d.key()} without {beta.key()}", ok

    return [run_cases(f"signs: multiplicativity over {samples} random nested dissections", rty1()),
            run_cases(f"signs: removing an arrow, {samples} random dissections", rty2())]


def _random_dissection(rng: random.Random, p: Polygon) -> Dissection:
    from .polygons import crosses

    pool = arrows(p)
    rng.shuffle(pool)
    chosen: list[Arrow] = []
    for a in pool:
        if rng.random() < 0.6 and all(not crosses(a, b) for b in chosen):
            chosen.append(a)
    return Dissection(p, tuple(chosen))


# --- iterated integrals --------------------------------------------------------------------

def check_iterint(max_sides: int = 5, rng: random.Random | None = None, samples: int = 200) -> list[CheckResult]:
    rng = rng or random.Random(0)

    def sequences() -> Iterator[Polygon]:
        for n in range(2, max_sides + 1):
            for decos in decoration_patterns(n):
                yield Polygon.of(*decos)

    def hihiks() -> Iterator[Case]:
        for p in sequences():
            def ok(p=p) -> bool:
                s = polygon_to_i(p)
                return i_cobracket(s) == transported_polygon_differential(p) == cobracket_from_coproduct(s)

            yield p.key(), ok

    def comparison() -> Iterator[Case]:
        for p in sequences():
            yield p.key(), lambda p=p: compare_coproducts(p)

    def jacobi() -> Iterator[Case]:
        for p in sequences():
            if p.n > 5:
                continue
            s = polygon_to_i(p)
            yield s.key(), lambda s=s: not cobracket_wedge(i_cobracket(s))

    def confluence() -> Iterator[Case]:
        names = ["0", "1", "a", "b"]
        for _ in range(samples):
            n = rng.randint(1, 4)
            s = ISymbol(rng.choice(names[1:]), tuple(rng.choice(names) for _ in range(n)), rng.choice(names))
            yield s.key(), lambda s=s: i_normalize(s) == normalize_by_inversion(s)

    return [run_cases(f"iterint: cobracket equals the transported polygon differential, <= {max_sides} sides",
                      hihiks()),
            run_cases(f"iterint: polygon coproduct matches the symbol coproduct, <= {max_sides} sides", comparison()),
            run_cases("iterint: co-Jacobi (cobracket squares to zero), degree <= 4", jacobi()),
            run_cases(f"iterint: normalization agrees with the inversion-first route, {samples} symbols",
                      confluence())]


def normalize_by_inversion(s: ISymbol) -> LinComb:
    """Normalization applying inversion first, then path composition at 0."""
    n = s.degree
    if n == 0 or s.a0 == "0":
        return i_normalize(s)
    if s.end == s.a0:
        # a loop: composition through 0 directly
        return i_normalize(s)
    inv = ISymbol(s.end, tuple(reversed(s.middle)), s.a0)
    parts = []
    for k in range(n + 1):
        # I(b; w; a) = sum_k I(b; w_1..w_k; 0) I(0; w_k+1..w_n; a), with I(b; u; 0) = (-1)^|u| I(0; rev u; b)
        left = i_normalize(ISymbol("0", tuple(reversed(inv.middle[:k])), inv.a0)).scale((-1) ** k)
        right = i_normalize(ISymbol("0", inv.middle[k:], inv.end))
        parts.append(imul(left, right))
    return lc_sum(parts).scale((-1) ** n)


# --- numerics -----------------------------------------------------------------------------

def check_numeric(rng: random.Random | None = None, points: int = 5) -> list[CheckResult]:
    rng = rng or random.Random(0)
    cfg = NumericConfig()

    def series_vs_integral() -> Iterator[Case]:
        for m in (1, 2, 3):
            for _ in range(points):
                zs = [rng.uniform(-0.5, 0.5) for _ in range(m)]
                if any(abs(z) < 1e-3 for z in zs):
                    continue

                def ok(zs=zs, m=m) -> bool:
                    xs = [1 / math.prod(zs[i:]) for i in range(m)]
                    a = li_series([1] * m, zs, cfg).value
                    b = (-1) ** m * iterint_numeric(0.0, xs, 1.0, cfg).value
                    return abs(a - b) < 1e-6

                yield f"Li_{'1' * m}{tuple(round(z, 4) for z in zs)}", ok

    def self_consistent() -> Iterator[Case]:
        for _ in range(points):
            xs = [rng.uniform(1.5, 6.0) * rng.choice((1, -1)) for _ in range(2)]

            def ok(xs=xs) -> bool:
                a = iterint_numeric(0.0, xs, 1.0, NumericConfig(tolerance=1e-10))
                b = iterint_numeric(0.0, xs, 1.0, NumericConfig(tolerance=5e-11))
                return abs(a.value - b.value) <= a.error + 1e-10

            yield str(xs), ok

    def realized() -> Iterator[Case]:
        from .syntax import parse_cycle

        x1, x2 = 5.0, 2.5
        singles = [("[1-s1/x1] {0<=s1<=1}", li_one(x1)), ("[1-s1/x2] {0<=s1<=1}", li_one(x2))]
        for text, closed in singles:
            (c,) = parse_cycle(text).basis()
            yield text, lambda c=c, closed=closed: abs(realize_bar_entry(c, {"x1": x1, "x2": x2}) - closed) < 1e-8
        (c,) = parse_cycle("[1-s1/x1, 1-s2/x2] {0<=s1<=s2<=1}").basis()
        ref = iterint_numeric(0.0, [x1, x2], 1.0).value
        yield c.key(), lambda: abs(realize_bar_entry(c, {"x1": x1, "x2": x2}) - ref) < 1e-8
        (c,) = parse_cycle("[1-s1/t, 1-t/x1, 1-t/x2] {0<=s1<=1}").basis()
        yield c.key(), lambda: realize_bar_entry(c, {"x1": x1, "x2": x2}) == 0.0

    return [run_cases("numeric: series equal signed iterated integrals, m <= 3", series_vs_integral()),
            run_cases("numeric: quadrature changes stay within the error bound", self_consistent()),
            run_cases("numeric: realized chains match logarithms", realized())]


# --- registry --------------------------------------------------------------------------------

SUITES = ("algebra", "trees", "polygons", "psi", "cycles", "decomposable", "catalan",
          "bar", "signs", "iterint", "numeric")


def run_suite(name: str, max_sides: int | None = None, seed: int = 0) -> list[CheckResult]:
    """Run one named suite.  ``max_sides`` bounds polygon sides and tree edges."""
    rng = random.Random(seed)
    if name == "algebra":
        return check_algebra(rng=rng)
    if name == "trees":
        return check_trees(max_sides or 6, rng)
    if name == "polygons":
        return check_polygons(max_sides or 6, rng)
    if name == "psi":
        return check_psi(max_sides or 6, rng)
    if name == "cycles":
        return check_cycles(max_sides or 5, rng)
    if name == "decomposable":
        return check_decomposable(max_sides or 5, rng)
    if name == "catalan":
        return check_catalan(max(7, max_sides or 7), rng)
    if name == "bar":
        return check_bar(max_sides or 5, rng, cocycle_sides=max_sides or 6)
    if name == "signs":
        return check_signs(500, rng)
    if name == "iterint":
        return check_iterint(max_sides or 5, rng)
    if name == "numeric":
        return check_numeric(rng)
    raise KeyError(f"unknown suite {name!r}; choose from {', '.join(SUITES)} or all")


def run_all(max_sides: int | None = None, seed: int = 0) -> list[CheckResult]:
    out = []
    for name in SUITES:
        out += run_suite(name, max_sides, seed)
    return out
