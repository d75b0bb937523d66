"""Exact linear combinations, graded wedge words and the shuffle product.

Every basis object used by the package exposes ``key()``, a canonical text
serialization.  Term order, sorting signs and equality all derive from it.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Callable, Iterable, Iterator, Mapping, Sequence

Scalar = Fraction


def basis_key(b: Any) -> str:
    """Canonical serialization used to order basis elements."""
    if hasattr(b, "key"):
        return b.key()
    if isinstance(b, tuple):
        return "(" + ",".join(basis_key(x) for x in b) + ")"
    return str(b)


def permutation_sign(seq: Sequence[int]) -> int:
    """Sign of the permutation that sorts ``seq`` (entries distinct)."""
    sign = 1
    seen = list(seq)
    for i in range(len(seen)):
        for j in range(i + 1, len(seen)):
            if seen[i] > seen[j]:
                sign = -sign
    return sign


class LinComb:
    """Finite formal sum with exact rational coefficients.

    Zero coefficients are never stored.  Values are treated as immutable;
    every operation returns a new object.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Any, Any] | Iterable[tuple[Any, Any]] = ()):
        acc: dict[Any, Fraction] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for b, c in items:
            c = Fraction(c)
            if c:
                acc[b] = acc.get(b, Fraction(0)) + c
        self._terms = {b: c for b, c in acc.items() if c}
        self._hash: int | None = None

    @classmethod
    def single(cls, b: Any, c: Any = 1) -> LinComb:
        return cls(((b, c),))

    @classmethod
    def zero(cls) -> LinComb:
        return cls()

    def items(self) -> list[tuple[Any, Fraction]]:
        """Terms in canonical basis order."""
        return sorted(self._terms.items(), key=lambda bc: basis_key(bc[0]))

    def __iter__(self) -> Iterator[tuple[Any, Fraction]]:
        return iter(self.items())

    def basis(self) -> list[Any]:
        return [b for b, _ in self.items()]

    def coeff(self, b: Any) -> Fraction:
        return self._terms.get(b, Fraction(0))

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int) and other == 0:
            return not self._terms
        if not isinstance(other, LinComb):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __add__(self, other: LinComb) -> LinComb:
        return lincomb_combine(self, other, 1)

    def __sub__(self, other: LinComb) -> LinComb:
        return lincomb_combine(self, other, -1)

    def __neg__(self) -> LinComb:
        return self.scale(-1)

    def scale(self, c: Any) -> LinComb:
        c = Fraction(c)
        if not c:
            return LinComb()
        return LinComb((b, c * v) for b, v in self._terms.items())

    def __mul__(self, c: Any) -> LinComb:
        return self.scale(c)

    __rmul__ = __mul__

    def map(self, f: Callable[[Any], LinComb]) -> LinComb:
        """Linear extension of ``f`` from basis elements."""
        out: dict[Any, Fraction] = {}
        for b, c in self._terms.items():
            for b2, c2 in f(b)._terms.items():
                out[b2] = out.get(b2, Fraction(0)) + c * c2
        return LinComb(out)

    def __repr__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for b, c in self.items():
            parts.append(f"{c}*{basis_key(b)}")
        return " + ".join(parts)


def lincomb_combine(a: LinComb, b: LinComb, c: Any) -> LinComb:
    """Return ``a + c*b``."""
    c = Fraction(c)
    out = dict(a._terms)
    for k, v in b._terms.items():
        out[k] = out.get(k, Fraction(0)) + c * v
    return LinComb(out)


def lc_sum(parts: Iterable[LinComb]) -> LinComb:
    out: dict[Any, Fraction] = {}
    for p in parts:
        for k, v in p._terms.items():
            out[k] = out.get(k, Fraction(0)) + v
    return LinComb(out)


def bilinear(a: LinComb, b: LinComb, f: Callable[[Any, Any], LinComb]) -> LinComb:
    """Extend ``f`` on basis pairs to a bilinear map."""
    out: dict[Any, Fraction] = {}
    for x, cx in a._terms.items():
        for y, cy in b._terms.items():
            for z, cz in f(x, y)._terms.items():
                out[z] = out.get(z, Fraction(0)) + cx * cy * cz
    return LinComb(out)


def tensor(a: LinComb, b: LinComb) -> LinComb:
    """Tensor product with basis pairs ``(x, y)``."""
    return bilinear(a, b, lambda x, y: LinComb.single((x, y)))


def wedge_normalize(factors: Sequence[tuple[Any, int]]) -> tuple[tuple[tuple[Any, int], ...], int]:
    """Sort graded factors into canonical order.

    Args:
        factors: ``(basis, degree)`` pairs in their given order.

    Returns:
        The sorted factor tuple and the Koszul sign; the sign is 0 when an
        odd-degree factor occurs twice.
    """
    items = list(factors)
    keys = [basis_key(b) for b, _ in items]
    sign = 1
    # insertion sort, tracking the graded sign of each adjacent swap
    for i in range(1, len(items)):
        j = i
        while j > 0 and keys[j - 1] > keys[j]:
            if items[j - 1][1] % 2 and items[j][1] % 2:
                sign = -sign
            items[j - 1], items[j] = items[j], items[j - 1]
            keys[j - 1], keys[j] = keys[j], keys[j - 1]
            j -= 1
    for i in range(1, len(items)):
        if keys[i] == keys[i - 1] and items[i][1] % 2:
            return (), 0
    return tuple(items), sign


@dataclass(frozen=True)
class Wedge:
    """Canonical exterior word of odd degree-one generators."""

    factors: tuple[Any, ...] = ()

    @classmethod
    def build(cls, factors: Iterable[Any], degree: Callable[[Any], int] = lambda _: 1) -> tuple[Wedge, int]:
        """Normalize raw factors; returns ``(word, sign)`` with sign 0 for a zero word."""
        srt, sign = wedge_normalize([(f, degree(f)) for f in factors])
        return cls(tuple(f for f, _ in srt)), sign

    @property
    def degree(self) -> int:
        return len(self.factors)

    def key(self) -> str:
        if not self.factors:
            return "1"
        return " ^ ".join(basis_key(f) for f in self.factors)


def wedge_product(a: Wedge, b: Wedge) -> LinComb:
    w, s = Wedge.build(a.factors + b.factors)
    return LinComb.single(w, s) if s else LinComb()


def shuffle(u: Sequence[Any], v: Sequence[Any]) -> LinComb:
    """Shuffle product of two tensor words, all coefficients +1."""
    u, v = tuple(u), tuple(v)
    out: dict[tuple, int] = {}
    for w in _interleavings(u, v):
        out[w] = out.get(w, 0) + 1
    return LinComb(out)


def _interleavings(u: tuple, v: tuple) -> Iterator[tuple]:
    if not u:
        yield v
        return
    if not v:
        yield u
        return
    for w in _interleavings(u[1:], v):
        yield (u[0],) + w
    for w in _interleavings(u, v[1:]):
        yield (v[0],) + w


def shuffle_lc(a: LinComb, b: LinComb) -> LinComb:
    return bilinear(a, b, shuffle)
