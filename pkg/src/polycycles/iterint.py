"""Formal iterated integrals: rewriting to a basis, coproduct and cobracket.

The basis generators are ``I(0; b1..bk; b_{k+1})``.  Any symbol is rewritten
through path composition at 0 and inversion.  Elements are linear
combinations of commutative monomials in basis generators.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .algebra import LinComb, Wedge, bilinear, lc_sum, tensor
from .polygons import DECORATED, Polygon, PolygonError, polygon_differential

ZERO = "0"


@dataclass(frozen=True)
class ISymbol:
    a0: str
    middle: tuple[str, ...]
    end: str

    @property
    def degree(self) -> int:
        return len(self.middle)

    def key(self) -> str:
        return f"I({self.a0}; {', '.join(self.middle)}; {self.end})"

    def __str__(self) -> str:
        return self.key()


def isym(a0: str, middle, end: str) -> ISymbol:
    return ISymbol(str(a0), tuple(str(x) for x in middle), str(end))


@dataclass(frozen=True)
class IMonomial:
    """Commutative product of basis symbols, factors sorted."""

    factors: tuple[ISymbol, ...] = ()

    @classmethod
    def of(cls, *factors: ISymbol) -> IMonomial:
        return cls(tuple(sorted(factors, key=lambda s: s.key())))

    def key(self) -> str:
        if not self.factors:
            return "1"
        return " * ".join(f.key() for f in self.factors)

    def __mul__(self, other: IMonomial) -> IMonomial:
        return IMonomial.of(*(self.factors + other.factors))

    @property
    def degree(self) -> int:
        return sum(f.degree for f in self.factors)


ONE = IMonomial()


def imul(a: LinComb, b: LinComb) -> LinComb:
    return bilinear(a, b, lambda x, y: LinComb.single(x * y))


def _basis(middle: tuple[str, ...], end: str, zero_rule: bool) -> LinComb:
    if not middle:
        return LinComb.single(ONE)
    if zero_rule and end == ZERO:
        return LinComb()
    return LinComb.single(IMonomial.of(ISymbol(ZERO, middle, end)))


def i_normalize(s: ISymbol, zero_rule: bool = True) -> LinComb:
    """Rewrite ``s`` as a polynomial in basis generators.

    With ``a0 != 0`` path composition at 0 and inversion give
    ``sum_k (-1)^k I(0; a_k..a_1; a0) I(0; a_{k+1}..a_n; a_end)``.
    """
    n = s.degree
    if n == 0:
        return LinComb.single(ONE)
    if s.a0 == ZERO:
        return _basis(s.middle, s.end, zero_rule)
    parts = []
    for k in range(n + 1):
        left = _basis(tuple(reversed(s.middle[:k])), s.a0, zero_rule)
        right = _basis(s.middle[k:], s.end, zero_rule)
        parts.append(imul(left, right).scale((-1) ** k))
    return lc_sum(parts)


def i_normalize_lc(x: LinComb, zero_rule: bool = True) -> LinComb:
    """Normalize a combination of monomials whose factors may be non-basis symbols."""

    def f(m: IMonomial) -> LinComb:
        out = LinComb.single(ONE)
        for s in m.factors:
            out = imul(out, i_normalize(s, zero_rule))
        return out

    return x.map(f)


def i_coproduct(s: ISymbol, zero_rule: bool = True) -> LinComb:
    """Sum over subsequences: main symbol tensor the product of gap symbols."""
    pts = (s.a0,) + s.middle + (s.end,)
    n = s.degree
    parts = []
    for r in range(n + 1):
        for idx in combinations(range(1, n + 1), r):
            left = i_normalize(ISymbol(s.a0, tuple(pts[i] for i in idx), s.end), zero_rule)
            right = LinComb.single(ONE)
            cuts = (0,) + idx + (n + 1,)
            for a, b in zip(cuts, cuts[1:]):
                right = imul(right, i_normalize(ISymbol(pts[a], pts[a + 1:b], pts[b]), zero_rule))
            parts.append(tensor(left, right))
    return lc_sum(parts)


def _wedge_term(a: ISymbol | None, b: ISymbol | None, c: int) -> LinComb:
    if a is None or b is None or not c:
        return LinComb()
    w, s = Wedge.build((a, b))
    return LinComb.single(w, c * s) if s else LinComb()


def _reduced(middle: tuple[str, ...], end: str, zero_rule: bool) -> ISymbol | None:
    """Basis symbol, or ``None`` when it vanishes modulo products and constants."""
    if not middle:
        return None
    if zero_rule and end == ZERO:
        return None
    return ISymbol(ZERO, middle, end)


def i_cobracket(s: ISymbol, zero_rule: bool = True) -> LinComb:
    """Cobracket of a basis symbol as wedge pairs of basis symbols."""
    if s.a0 != ZERO:
        raise ValueError("the cobracket is defined on basis symbols")
    a = (s.a0,) + s.middle + (s.end,)
    n = s.degree
    parts = []
    for k in range(n + 1):
        for l in range(k + 1, n + 2):
            main = _reduced(a[1:k + 1] + a[l:n + 1], a[n + 1], zero_rule)
            if main is None:
                continue
            fwd = _reduced(a[k + 1:l], a[l], zero_rule)
            parts.append(_wedge_term(main, fwd, 1))
            if k > 0:
                back = _reduced(tuple(reversed(a[k + 1:l])), a[k], zero_rule)
                parts.append(_wedge_term(main, back, (-1) ** (l - k - 1)))
    return lc_sum(parts)


def cobracket_from_coproduct(s: ISymbol, zero_rule: bool = True) -> LinComb:
    """Project the coproduct to indecomposables and antisymmetrize."""
    parts = []
    for (left, right), c in i_coproduct(s, zero_rule):
        if len(left.factors) == 1 and len(right.factors) == 1:
            parts.append(_wedge_term(left.factors[0], right.factors[0], c))
    return lc_sum(parts)


def cobracket_wedge(x: LinComb, zero_rule: bool = True) -> LinComb:
    """Extension of the cobracket to wedge words as a derivation."""

    def f(w: Wedge) -> LinComb:
        parts = []
        for i, s in enumerate(w.factors):
            for pair, c in i_cobracket(s, zero_rule):
                word, sign = Wedge.build(w.factors[:i] + pair.factors + w.factors[i + 1:])
                if sign:
                    parts.append(LinComb.single(word, (-1) ** i * c * sign))
        return lc_sum(parts)

    return x.map(f)


def polygon_to_i(p: Polygon) -> ISymbol:
    if any(x.kind != DECORATED for x in p.sides):
        raise PolygonError("only fully decorated polygons correspond to symbols")
    atoms = [x.atom for x in p.sides]
    return ISymbol(ZERO, tuple(atoms[:-1]), atoms[-1])


def transported_polygon_differential(p: Polygon) -> LinComb:
    """Polygon differential with every polygon replaced by its symbol."""
    parts = []
    for w, c in polygon_differential(p):
        a, b = (polygon_to_i(q) for q in w.factors)
        parts.append(_wedge_term(a, b, c))
    return lc_sum(parts)


def polygon_coproduct_image(p: Polygon, zero_rule: bool = True) -> LinComb:
    """Admissible-dissection coproduct read through symbols and products."""
    from .bar import admissible_dissections
    from .polygons import sign_dissection

    def sym(q: Polygon) -> LinComb:
        return i_normalize(polygon_to_i(q), zero_rule)

    parts = [tensor(LinComb.single(ONE), sym(p))]
    for d, data in admissible_dissections(p):
        right = LinComb.single(ONE)
        for r in data.regions[1:]:
            right = imul(right, sym(r.polygon))
        parts.append(tensor(sym(data.regions[0].polygon), right).scale(sign_dissection(d)))
    return lc_sum(parts)


def compare_coproducts(p: Polygon, zero_rule: bool = True) -> bool:
    return polygon_coproduct_image(p, zero_rule) == i_coproduct(polygon_to_i(p), zero_rule)
