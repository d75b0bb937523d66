"""Bar construction on the polygon algebra.

A bar word is a tuple of letters.  A letter is a ``Wedge`` of polygons or,
in first position only, an ``EnhancedLetter`` pairing an enhanced polygon with
a wedge of ordinary polygons.

Two sign conventions are provided for the bar differential:

* ``"alternating"`` (default): every letter counts as odd after the degree shift, so
  ``D1`` merges slots ``j, j+1`` with sign ``(-1)^j`` and ``D2`` acts on slot
  ``j`` with sign ``(-1)^(j-1)``; ``D = D1 + D2``.
* ``"koszul"``: the shift of a letter is its wedge length minus one,
  ``D1`` carries ``(-1)^(e_1+...+e_j)``, ``D2`` carries ``(-1)^(e_1+...+e_(j-1))``
  and ``D = D1 - D2``.  This one squares to zero on arbitrary words.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Union

from .algebra import LinComb, Wedge, basis_key, bilinear, lc_sum, shuffle, tensor
from .polygons import (
    Polygon,
    dissection_data,
    all_dissections,
    linear_extensions,
    polygon_diff_terms,
    polygon_differential,
    sign_dissection,
    weight,
)

CONVENTIONS = ("alternating", "koszul")


@dataclass(frozen=True)
class EnhancedLetter:
    head: Polygon
    tail: Wedge = Wedge()

    @property
    def degree(self) -> int:
        return 1 + self.tail.degree

    def key(self) -> str:
        return " ^ ".join([self.head.key()] + [f.key() for f in self.tail.factors])


Letter = Union[Wedge, EnhancedLetter]


@dataclass(frozen=True)
class BarWord:
    letters: tuple = ()

    def key(self) -> str:
        if not self.letters:
            return "1"
        return "[" + "|".join(basis_key(x) for x in self.letters) + "]"

    def __str__(self) -> str:
        return self.key()

    def __len__(self) -> int:
        return len(self.letters)

    @property
    def pure(self) -> bool:
        return all(isinstance(x, Wedge) and x.degree == 1 for x in self.letters)


def letter(p: Polygon) -> Letter:
    return EnhancedLetter(p) if p.enhanced else Wedge((p,))


def word(*polys: Polygon) -> BarWord:
    return BarWord(tuple(letter(p) for p in polys))


def _letter_degree(x: Letter) -> int:
    return x.degree


def _merge(a: Letter, b: Letter) -> tuple[Letter | None, int]:
    if isinstance(b, EnhancedLetter):
        raise ValueError("an enhanced letter can only stand first")
    if isinstance(a, EnhancedLetter):
        w, s = Wedge.build(a.tail.factors + b.factors)
        return (EnhancedLetter(a.head, w) if s else None), s
    w, s = Wedge.build(a.factors + b.factors)
    return (w if s else None), s


def letter_differential(x: Letter) -> LinComb:
    """Polygon differential of one letter."""
    if isinstance(x, Wedge):
        return polygon_differential(x)
    parts = []
    for sign, root, cut in polygon_diff_terms(x.head):
        w, s = Wedge.build((cut,) + x.tail.factors)
        if s:
            parts.append(LinComb.single(EnhancedLetter(root, w), sign * s))
    for w, c in polygon_differential(x.tail):
        parts.append(LinComb.single(EnhancedLetter(x.head, w), -c))
    return lc_sum(parts)


def _shift_prefix(letters: tuple, upto: int, convention: str) -> int:
    """Sum of shifted degrees of ``letters[:upto]`` under ``convention``."""
    if convention == "alternating":
        return upto
    return sum(_letter_degree(x) - 1 for x in letters[:upto])


def bar_D1(w: BarWord, convention: str = "alternating") -> LinComb:
    parts = []
    ls = w.letters
    for j in range(len(ls) - 1):
        merged, s = _merge(ls[j], ls[j + 1])
        if not s:
            continue
        sign = (-1) ** _shift_prefix(ls, j + 1, convention)
        parts.append(LinComb.single(BarWord(ls[:j] + (merged,) + ls[j + 2:]), sign * s))
    return lc_sum(parts)


def bar_D2(w: BarWord, convention: str = "alternating") -> LinComb:
    parts = []
    ls = w.letters
    for j, x in enumerate(ls):
        sign = (-1) ** _shift_prefix(ls, j, convention)
        for y, c in letter_differential(x):
            parts.append(LinComb.single(BarWord(ls[:j] + (y,) + ls[j + 1:]), sign * c))
    return lc_sum(parts)


def bar_differential(x: LinComb | BarWord, convention: str = "alternating") -> LinComb:
    if convention not in CONVENTIONS:
        raise ValueError(f"unknown convention {convention!r}")
    if isinstance(x, BarWord):
        x = LinComb.single(x)
    d2_sign = 1 if convention == "alternating" else -1
    return x.map(lambda w: bar_D1(w, convention) + bar_D2(w, convention).scale(d2_sign))


def bar_element(p: Polygon) -> LinComb:
    """Sum over dissections and linear extensions of their dual trees."""
    parts = []
    for d in all_dissections(p):
        data = dissection_data(d)
        sign = sign_dissection(d)
        polys = [r.polygon for r in data.regions]
        parents = [r.parent for r in data.regions]
        for order in linear_extensions(parents):
            parts.append(LinComb.single(word(*(polys[i] for i in order)), sign))
    return lc_sum(parts)


def is_zero_cocycle(b: LinComb, convention: str = "alternating") -> bool:
    return not bar_differential(b, convention)


# --- Hopf structure ------------------------------------------------------------

EMPTY = BarWord()


def coproduct_deconcat(b: LinComb) -> LinComb:
    """Deconcatenation; basis elements of the result are ``(left, right)`` pairs.

    Words opening with an enhanced letter get the comodule coaction, in which
    the left part is never empty.
    """

    def split(w: BarWord) -> LinComb:
        if any(isinstance(x, Wedge) and x.degree != 1 for x in w.letters):
            raise ValueError("deconcatenation is defined on words without wedge letters")
        n = len(w.letters)
        # an enhanced first letter must stay on the left
        start = 1 if w.letters and isinstance(w.letters[0], EnhancedLetter) else 0
        return LinComb(((BarWord(w.letters[:k]), BarWord(w.letters[k:])), 1) for k in range(start, n + 1))

    return b.map(split)


def shuffle_bar(a: LinComb, b: LinComb) -> LinComb:
    """Letterwise shuffle of bar elements (all signs +, Adams grading even)."""
    return bilinear(a, b, lambda x, y: _wrap(shuffle(x.letters, y.letters)))


def _wrap(lc: LinComb) -> LinComb:
    return LinComb((BarWord(t), c) for t, c in lc)


def shuffle_pairs(a: LinComb, b: LinComb) -> LinComb:
    """Shuffle on tensor pairs, factor by factor."""

    def f(x: tuple, y: tuple) -> LinComb:
        return tensor(_wrap(shuffle(x[0].letters, y[0].letters)),
                      _wrap(shuffle(x[1].letters, y[1].letters)))

    return bilinear(a, b, f)


def admissible_dissections(p: Polygon):
    """Dissections whose arrows all bound the root region."""
    for d in all_dissections(p):
        data = dissection_data(d)
        if all(r.parent == 0 for r in data.regions[1:]):
            yield d, data


def coproduct_admissible(p: Polygon) -> LinComb:
    """Admissible-dissection coproduct of ``B(p)`` as explicit word pairs."""
    parts = []
    if not p.enhanced:
        parts.append(tensor(LinComb.single(EMPTY), bar_element(p)))
    for d, data in admissible_dissections(p):
        right = LinComb.single(EMPTY)
        for r in data.regions[1:]:
            right = shuffle_bar(right, bar_element(r.polygon))
        left = bar_element(data.regions[0].polygon)
        parts.append(tensor(left, right).scale(sign_dissection(d)))
    return lc_sum(parts)


def coassociativity_sides(p: Polygon) -> tuple[LinComb, LinComb]:
    """Both iterated coproducts of ``B(p)`` built from the admissible formula.

    The left side applies the formula again to every root polygon; the right
    side applies it to every cut-off polygon and multiplies with shuffles.
    """
    lhs, rhs = [], []
    if not p.enhanced:
        lhs.append(_triple(LinComb.single((EMPTY, EMPTY)), bar_element(p)))
        rhs.append(_triple(LinComb.single(EMPTY), coproduct_admissible(p), split_first=False))
    for d, data in admissible_dissections(p):
        sign = sign_dissection(d)
        right = LinComb.single(EMPTY)
        right_split = LinComb.single((EMPTY, EMPTY))
        for r in data.regions[1:]:
            right = shuffle_bar(right, bar_element(r.polygon))
            right_split = shuffle_pairs(right_split, coproduct_admissible(r.polygon))
        root = data.regions[0].polygon
        lhs.append(_triple(coproduct_admissible(root), right).scale(sign))
        rhs.append(_triple(bar_element(root), right_split, split_first=False).scale(sign))
    return lc_sum(lhs), lc_sum(rhs)


def _triple(a: LinComb, b: LinComb, split_first: bool = True) -> LinComb:
    if split_first:
        return bilinear(a, b, lambda x, y: LinComb.single((x[0], x[1], y)))
    return bilinear(a, b, lambda x, y: LinComb.single((x, y[0], y[1])))


def deconcat_triple(b: LinComb) -> LinComb:
    """Iterated deconcatenation into three parts."""

    def split(w: BarWord) -> LinComb:
        n = len(w.letters)
        return LinComb(((BarWord(w.letters[:i]), BarWord(w.letters[i:j]), BarWord(w.letters[j:])), 1)
                       for i in range(n + 1) for j in range(i, n + 1))

    return b.map(split)


def adams_grading(w: BarWord) -> int:
    total = 0
    for x in w.letters:
        polys = (x.head,) + x.tail.factors if isinstance(x, EnhancedLetter) else x.factors
        total += sum(2 * weight(q) for q in polys)
    return total


def words_of(polys: Iterable[Polygon]) -> LinComb:
    return LinComb.single(word(*polys))
