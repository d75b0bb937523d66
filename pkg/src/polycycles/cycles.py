"""Symbolic cubical cycles, their faces and the forest cycling map.

A cycle is a list of coordinates, each ``1 - q`` or ``q`` for a monomial ``q``
in constants and parameters.  Values are kept modulo signed permutations of
the coordinates and renaming of parameters.  Distinct constant atoms are
treated as algebraically independent.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import permutations, product
from typing import Iterable, Mapping

from .algebra import LinComb, lc_sum
from .trees import Forest, Node, Tree, UNDECORATED

ONE_MINUS, PLAIN = "one_minus", "plain"
_PARAM_BASE = ("t", "u", "v", "w")


def param_name(i: int) -> str:
    """Canonical name of the ``i``-th parameter: t, u, v, w, t5, t6, ..."""
    return _PARAM_BASE[i] if i < len(_PARAM_BASE) else f"t{i + 1}"


class Degenerate(ArithmeticError):
    """A face meets the cycle improperly."""


class UnsupportedExponent(ArithmeticError):
    """A face equation cannot be solved with exponents of size one."""


@dataclass(frozen=True)
class Monomial:
    """``coeff * prod(atom ** exp)`` with exponents sorted by atom name."""

    coeff: Fraction = Fraction(1)
    exps: tuple[tuple[str, int], ...] = ()

    @classmethod
    def make(cls, coeff: Fraction | int = 1, exps: Mapping[str, int] | Iterable[tuple[str, int]] = ()) -> Monomial:
        acc: dict[str, int] = {}
        items = exps.items() if isinstance(exps, Mapping) else exps
        for a, e in items:
            acc[a] = acc.get(a, 0) + e
        return cls(Fraction(coeff), tuple(sorted((a, e) for a, e in acc.items() if e)))

    @classmethod
    def atom(cls, name: str, exp: int = 1) -> Monomial:
        return cls.make(1, {name: exp})

    def exp(self, a: str) -> int:
        for b, e in self.exps:
            if b == a:
                return e
        return 0

    def atoms(self) -> set[str]:
        return {a for a, _ in self.exps}

    def __mul__(self, other: Monomial) -> Monomial:
        return Monomial.make(self.coeff * other.coeff, list(self.exps) + list(other.exps))

    def __pow__(self, k: int) -> Monomial:
        return Monomial.make(self.coeff ** k, [(a, e * k) for a, e in self.exps])

    def inverse(self) -> Monomial:
        return self ** -1

    def is_one(self) -> bool:
        return self.coeff == 1 and not self.exps

    def rename(self, table: Mapping[str, str]) -> Monomial:
        return Monomial.make(self.coeff, [(table.get(a, a), e) for a, e in self.exps])

    def substitute(self, a: str, value: Monomial) -> Monomial:
        k = self.exp(a)
        if not k:
            return self
        rest = Monomial(self.coeff, tuple((b, e) for b, e in self.exps if b != a))
        return rest * value ** k

    def text(self) -> str:
        num = [_atom_text(a, e) for a, e in self.exps if e > 0]
        den = [_atom_text(a, -e) for a, e in self.exps if e < 0]
        c = self.coeff
        sign = "-" if c < 0 else ""
        c = abs(c)
        if c.numerator != 1 or not num:
            num.insert(0, str(c.numerator))
        if c.denominator != 1:
            den.insert(0, str(c.denominator))
        return sign + "*".join(num) + "".join("/" + d for d in den)


def _atom_text(a: str, e: int) -> str:
    return a if e == 1 else f"{a}^{e}"


def deco_monomial(d: str) -> Monomial:
    """Monomial of a decoration: a rational number or an atom."""
    try:
        value = Fraction(d)
    except ValueError:
        return Monomial.atom(d)
    if not value:
        raise ValueError("the decoration 0 has no coordinate")
    return Monomial(value)


@dataclass(frozen=True)
class Coordinate:
    form: str
    mono: Monomial

    def text(self) -> str:
        if self.form == PLAIN:
            return self.mono.text()
        if self.mono.coeff < 0:
            return "1+" + Monomial(-self.mono.coeff, self.mono.exps).text()
        return "1-" + self.mono.text()

    def rename(self, table: Mapping[str, str]) -> Coordinate:
        return Coordinate(self.form, self.mono.rename(table))

    def substitute(self, a: str, value: Monomial) -> Coordinate:
        return Coordinate(self.form, self.mono.substitute(a, value))

    def is_one(self) -> bool:
        """Identically equal to 1 (only possible for the plain form)."""
        return self.form == PLAIN and self.mono.is_one()

    def is_zero(self) -> bool:
        return self.form == ONE_MINUS and self.mono.is_one()


def one_minus(m: Monomial) -> Coordinate:
    return Coordinate(ONE_MINUS, m)


def plain(m: Monomial) -> Coordinate:
    return Coordinate(PLAIN, m)


@dataclass(frozen=True)
class Cycle:
    """Canonical cycle: sorted coordinates, canonical parameter names.

    ``chain`` lists topological endpoints and variables ``s0 <= s1 <= ...``
    for cycles coming from enhanced trees; it is empty otherwise.
    """

    coords: tuple[Coordinate, ...] = ()
    params: tuple[str, ...] = ()
    chain: tuple[str, ...] = ()

    def key(self) -> str:
        body = "[" + ", ".join(c.text() for c in self.coords) + "]"
        if self.chain:
            body += " {" + "<=".join(self.chain) + "}"
        return body

    def __str__(self) -> str:
        return self.key()

    @property
    def codimension(self) -> int:
        return len(self.coords) - len(self.params)

    def topological(self) -> tuple[str, ...]:
        return self.chain[1:-1]


def cycle_normalize(coords: Iterable[Coordinate], params: Iterable[str] = (), sign: int = 1,
                    chain: Iterable[str] = ()) -> LinComb:
    """Canonical element for raw coordinates.

    Coordinates are sorted with the permutation sign, and parameters renamed
    to ``t, u, v, ...`` choosing the renaming with the least serialization.
    The element is zero when a coordinate is identically 1 or when some odd
    symmetry fixes the cycle.
    """
    coords = tuple(coords)
    if any(c.is_one() for c in coords):
        return LinComb()
    present = set().union(*(c.mono.atoms() for c in coords)) if coords else set()
    params = tuple(sorted(set(params) & present)) + tuple(sorted(set(params) - present))
    key, s, renamed = _canonical(coords, params)
    if not s:
        return LinComb()
    cyc = Cycle(key, tuple(sorted(renamed.values(), key=_param_index)), tuple(chain))
    return LinComb.single(cyc, sign * s)


def _param_index(name: str) -> int:
    if name in _PARAM_BASE:
        return _PARAM_BASE.index(name)
    return int(name[1:]) - 1


def _sorted_with_sign(items: list[Coordinate]) -> tuple[tuple[Coordinate, ...], int]:
    keyed = [(c.text(), i) for i, c in enumerate(items)]
    keyed.sort()
    texts = [k for k, _ in keyed]
    if len(set(texts)) != len(texts):
        return (), 0
    perm = [i for _, i in keyed]
    sign = 1
    for i in range(len(perm)):
        for j in range(i + 1, len(perm)):
            if perm[i] > perm[j]:
                sign = -sign
    return tuple(items[i] for i in perm), sign


def _canonical(coords: tuple[Coordinate, ...], params: tuple[str, ...]):
    """Search parameter renamings, refined by a renaming-invariant signature."""
    groups = _param_groups(coords, params)
    best = None
    signs: set[int] = set()
    best_table = None
    for choice in product(*(permutations(g) for g in groups)):
        order = [p for g in choice for p in g]
        table = {p: param_name(i) for i, p in enumerate(order)}
        srt, s = _sorted_with_sign([c.rename(table) for c in coords])
        if not s:
            return (), 0, {}
        k = tuple(c.text() for c in srt)
        if best is None or k < best[0]:
            best, signs, best_table = (k, srt), {s}, table
        elif k == best[0]:
            signs.add(s)
    if len(signs) > 1:
        return (), 0, {}
    return best[1], signs.pop(), best_table


def _param_groups(coords: tuple[Coordinate, ...], params: tuple[str, ...]) -> list[list[str]]:
    hidden = {p: "?" for p in params}

    def signature(p: str) -> tuple[str, ...]:
        table = dict(hidden)
        table[p] = "!"
        return tuple(sorted(c.rename(table).text() for c in coords if p in c.mono.atoms()))

    sig = {p: signature(p) for p in params}
    out: dict[tuple, list[str]] = {}
    for p in params:
        out.setdefault(sig[p], []).append(p)
    return [out[k] for k in sorted(out)]


def concat(a: LinComb, b: LinComb) -> LinComb:
    """Concatenate coordinates, keeping parameter names apart."""
    from .algebra import bilinear

    return bilinear(a, b, _concat_pair)


def _concat_pair(x: Cycle, y: Cycle) -> LinComb:
    tx = {p: f"@a{p}" for p in x.params}
    ty = {p: f"@b{p}" for p in y.params}
    coords = [c.rename(tx) for c in x.coords] + [c.rename(ty) for c in y.coords]
    if x.chain and y.chain:
        raise ValueError("cannot concatenate two enhanced chains")
    return cycle_normalize(coords, list(tx.values()) + list(ty.values()), 1, x.chain or y.chain)


def cycle_element(coords: Iterable[Coordinate], params: Iterable[str] = (), chain: Iterable[str] = ()) -> LinComb:
    return cycle_normalize(coords, params, 1, chain)


# --- faces -----------------------------------------------------------------------

def face(c: Cycle, i: int, eps: str, pivot: str = "least") -> LinComb:
    """Intersection with ``z_i = eps`` for ``eps`` in ``{"0", "inf"}``.

    Returns the face as an element (zero when empty).

    Raises:
        Degenerate: the intersection is not proper.
        UnsupportedExponent: no parameter can be solved for.
    """
    coord = c.coords[i]
    rest = c.coords[:i] + c.coords[i + 1:]
    q = coord.mono
    qparams = [p for p in c.params if q.exp(p)]
    if eps == "0" and coord.form == ONE_MINUS:
        if not qparams:
            if q.is_one():
                raise Degenerate(f"coordinate {coord.text()} vanishes identically")
            return LinComb()
        solvable = sorted(p for p in qparams if abs(q.exp(p)) == 1)
        if not solvable:
            raise UnsupportedExponent(coord.text())
        p = solvable[0] if pivot == "least" else solvable[-1]
        e = q.exp(p)
        others = Monomial(q.coeff, tuple((a, k) for a, k in q.exps if a != p))
        value = others ** (-e)
        new = [x.substitute(p, value) for x in rest]
        return cycle_normalize(new, [x for x in c.params if x != p], 1, c.chain)
    # the coordinate must tend to 0 (plain form) or infinity: a parameter limit
    target_zero = eps == "0"
    if not qparams:
        return LinComb()
    out = []
    for p in qparams:
        e = q.exp(p)
        to_zero = (e > 0) == target_zero
        out.append(_limit_face(rest, c, p, to_zero))
    return lc_sum(out)


def _limit_face(rest: tuple[Coordinate, ...], c: Cycle, p: str, to_zero: bool) -> LinComb:
    limits = []
    for x in rest:
        k = x.mono.exp(p)
        if not k:
            limits.append(None)
            continue
        mono_to_zero = (k > 0) == to_zero
        if x.form == ONE_MINUS:
            limits.append("one" if mono_to_zero else "inf")
        else:
            limits.append("zero" if mono_to_zero else "inf")
    if "one" in limits:
        return LinComb()
    if any(v is not None for v in limits):
        raise Degenerate(f"limit of parameter {p} lands in a deeper face")
    return cycle_normalize(rest, [x for x in c.params if x != p], 1, c.chain)


def cycle_differential(x: LinComb | Cycle, pivot: str = "least") -> LinComb:
    """Alternating sum of the faces ``z_i = 0`` minus ``z_i = inf``."""
    if isinstance(x, Cycle):
        x = LinComb.single(x)

    def diff(c: Cycle) -> LinComb:
        parts = []
        for i in range(len(c.coords)):
            sign = (-1) ** i
            parts.append(face(c, i, "0", pivot).scale(sign))
            parts.append(face(c, i, "inf", pivot).scale(-sign))
        return lc_sum(parts)

    return x.map(diff)


def is_admissible(x: LinComb | Cycle) -> bool:
    """Every iterated face exists and is proper."""
    if isinstance(x, Cycle):
        x = LinComb.single(x)
    return all(_admissible(c) for c in x.basis())


@lru_cache(maxsize=65536)
def _admissible(c: Cycle) -> bool:
    for i in range(len(c.coords)):
        for eps in ("0", "inf"):
            try:
                f = face(c, i, eps)
            except (Degenerate, UnsupportedExponent):
                return False
            if not all(_admissible(d) for d in f.basis()):
                return False
    return True


def iterated_faces(c: Cycle) -> Iterable[Cycle]:
    """All cycles reachable by taking faces; raises on improper faces."""
    seen: dict[str, Cycle] = {}
    stack = [c]
    while stack:
        x = stack.pop()
        if x.key() in seen:
            continue
        seen[x.key()] = x
        for i in range(len(x.coords)):
            for eps in ("0", "inf"):
                stack.extend(face(x, i, eps).basis())
    return list(seen.values())


def totaro_cycle(a: str) -> LinComb:
    """The cycle ``[t, 1-t, 1-a/t]``."""
    t = Monomial.atom("t")
    return cycle_element([plain(t), one_minus(t), one_minus(deco_monomial(a) * t.inverse())], ["t"])


# --- cycling map -----------------------------------------------------------------

def forest_cycling(x: LinComb | Forest | Tree) -> LinComb:
    """Cycle of each forest, one coordinate per edge in orientation order."""
    if isinstance(x, Tree):
        x = LinComb.single(Forest((x,)))
    elif isinstance(x, Forest):
        x = LinComb.single(x)
    return x.map(_cycle_of_forest)


def _cycle_of_forest(f: Forest) -> LinComb:
    coords: list[Coordinate] = []
    params: list[str] = []
    chain: tuple[str, ...] = ()
    for i, t in enumerate(f.trees):
        c, p, ch = _tree_coordinates(t, f"@{i}.")
        coords += c
        params += p
        if ch:
            if chain:
                raise ValueError("a forest may contain only one enhanced tree")
            chain = ch
    return cycle_normalize(coords, params, 1, chain)


def _tree_coordinates(t: Tree, prefix: str):
    coords: list[Coordinate] = []
    params: list[str] = []
    topo: dict[int, str] = {}
    chain: tuple[str, ...] = ()
    if t.enhanced:
        path = _second_path(t.child)
        # path runs from the vertex below the root down to the first leaf
        internal = path[:-1]
        for k, v in enumerate(reversed(internal)):
            topo[id(v)] = f"s{k + 1}"
        chain = (path[-1].deco,) + tuple(topo[id(v)] for v in reversed(internal)) + (t.root,)
    names: dict[int, str] = {}

    def value(n: Node) -> Monomial:
        if n.is_leaf:
            return deco_monomial(n.deco)
        if id(n) in topo:
            return Monomial.atom(topo[id(n)])
        return Monomial.atom(names[id(n)])

    counter = iter(range(10**6))

    def walk(parent_val: Monomial, parent_second: bool, n: Node) -> None:
        if not n.is_leaf and id(n) not in topo:
            names[id(n)] = f"{prefix}{next(counter)}"
            params.append(names[id(n)])
        if parent_second and n.second:
            pass  # edge inside the topological chain: an inequality, not a coordinate
        elif n.is_leaf and n.deco == UNDECORATED:
            coords.append(plain(parent_val))
        else:
            coords.append(one_minus(parent_val * value(n).inverse()))
        for ch in n.children:
            walk(value(n), n.second, ch)

    walk(deco_monomial(t.root) if not t.enhanced else _root_value(t.root), True if t.enhanced else False, t.child)
    return coords, params, chain


def _root_value(d: str) -> Monomial:
    return deco_monomial(d)


def _second_path(n: Node) -> list[Node]:
    path = [n]
    while not path[-1].is_leaf:
        nxt = [c for c in path[-1].children if c.second]
        if len(nxt) != 1:
            raise ValueError("second-type vertices must form a single path")
        path.append(nxt[0])
    return path


def parameter_components(c: Cycle) -> list[list[int]]:
    """Coordinate indices grouped by shared parameters."""
    parent = list(range(len(c.coords)))

    def find(i: int) -> int:
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    owner: dict[str, int] = {}
    for i, x in enumerate(c.coords):
        for a in x.mono.atoms():
            if a in c.params:
                if a in owner:
                    parent[find(i)] = find(owner[a])
                else:
                    owner[a] = i
    groups: dict[int, list[int]] = {}
    for i in range(len(c.coords)):
        groups.setdefault(find(i), []).append(i)
    return sorted(groups.values())


def decompose(c: Cycle) -> tuple[LinComb, LinComb] | None:
    """Split ``c`` as a concatenation of two cycles with disjoint parameters.

    Returns ``None`` when the coordinates do not separate.
    """
    comps = parameter_components(c)
    if len(comps) < 2:
        return None
    first = comps[0]
    rest = [i for g in comps[1:] for i in g]

    def part(idx: list[int]) -> LinComb:
        coords = [c.coords[i] for i in idx]
        atoms = set().union(*(x.mono.atoms() for x in coords))
        return cycle_normalize(coords, [p for p in c.params if p in atoms])

    return part(first), part(rest)
