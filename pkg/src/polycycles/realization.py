"""Numeric checks: polylogarithm series and iterated integrals on the simplex.

Iterated integrals along the straight path ``x0 -> x_end`` are computed level
by level on composite Gauss-Legendre panels.  On each panel the integrand is
interpolated and integrated exactly, which yields the running integral at the
nodes needed by the next level.  Panels are doubled until two successive
results agree within the tolerance.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Mapping, Sequence

import numpy as np
from numpy.polynomial import legendre

from .cycles import Cycle, ONE_MINUS, deco_monomial

Number = complex | float


class NonConvergent(ArithmeticError):
    pass


class SingularPath(ArithmeticError):
    pass


class UnsupportedChain(ValueError):
    pass


@dataclass(frozen=True)
class NumericConfig:
    tolerance: float = 1e-12
    max_series_terms: int = 200_000
    quadrature_depth: int = 12
    nodes: int = 20

    def __post_init__(self) -> None:
        if not self.tolerance > 0:
            raise ValueError("tolerance must be positive")


@dataclass(frozen=True)
class Estimate:
    value: Number
    error: float
    terms: int = 0


# --- series ---------------------------------------------------------------------

def li_series(ns: Sequence[int], zs: Sequence[Number], cfg: NumericConfig = NumericConfig()) -> Estimate:
    """Multiple polylogarithm ``sum_{0<k1<...<km} prod z_i^k_i / k_i^n_i``.

    The sum over ``k_m <= K`` is accumulated with running prefix sums and
    stopped once a majorant of the tail is below the tolerance.
    """
    if len(ns) != len(zs) or not ns:
        raise ValueError("need matching, nonempty ns and zs")
    m = len(ns)
    r = [abs(z) for z in zs]
    if any(x > 1 for x in r) or (r[-1] == 1 and ns[-1] < 2):
        raise NonConvergent("series diverges")
    inner = []
    for x in r[:-1]:
        inner.append(None if x >= 1 else x / (1 - x))
    # prefix[i] = sum over 0<k_1<..<k_i<=k of the first i factors
    prefix = [1.0 + 0j] + [0j] * m
    K = 0
    while True:
        K += 1
        if K > cfg.max_series_terms:
            raise NonConvergent("tolerance not reached within max_series_terms")
        new = prefix[:]
        for i in range(m, 0, -1):
            new[i] = prefix[i] + zs[i - 1] ** K / K ** ns[i - 1] * prefix[i - 1]
        prefix = new
        bound = _tail_bound(K, r, ns, inner)
        if bound < cfg.tolerance:
            value = prefix[m]
            if all(isinstance(z, (int, float, Fraction)) for z in zs):
                value = value.real
            return Estimate(value, bound, K)


def _tail_bound(K: int, r: list[float], ns: Sequence[int], inner: list[float | None]) -> float:
    rm, nm = r[-1], ns[-1]
    if rm == 0:
        return 0.0
    log_factors = sum(1 for c in inner if c is None)
    const = math.prod(c for c in inner if c is not None)
    if rm < 1:
        # majorant g(k) = rm^k (1+ln k)^p / k^nm; its ratio after K stays below rho
        rho = rm * (1 + 1 / (K * (1 + math.log(K)))) ** log_factors
        if rho >= 1:
            return math.inf
        g = rm ** (K + 1) * (1 + math.log(K + 1)) ** log_factors / (K + 1) ** nm
        return const * g / (1 - rho)
    if log_factors:
        return math.inf
    return const / ((nm - 1) * K ** (nm - 1))


# --- iterated integrals ------------------------------------------------------------

@lru_cache(maxsize=8)
def _panel_rule(p: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Nodes, weights and cumulative-integration matrix on ``[-1, 1]``."""
    x, w = legendre.leggauss(p)
    vander = legendre.legvander(x, p - 1)
    inv = np.linalg.inv(vander)
    cum = np.zeros((p, p))
    for j in range(p):
        coef = np.zeros(p)
        coef[j] = 1.0
        integ = legendre.legint(coef, lbnd=-1)
        cum[:, j] = legendre.legval(x, integ)
    return x, w, cum @ inv


def _on_segment(x: complex, a: complex, b: complex) -> bool:
    d = b - a
    t = ((x - a) * d.conjugate()).real / abs(d) ** 2
    if t < -1e-15 or t > 1 + 1e-15:
        return False
    return abs(a + t * d - x) <= 1e-14 * max(1.0, abs(d))


def _check_path(x0: Number, xs: Sequence[Number], x_end: Number) -> None:
    for x in xs:
        if _on_segment(complex(x), complex(x0), complex(x_end)):
            raise SingularPath(f"pole {x} lies on the path from {x0} to {x_end}")


def _levels(x0: complex, xs: Sequence[complex], x_end: complex, panels: int, p: int) -> complex:
    nodes, weights, cum = _panel_rule(p)
    d = x_end - x0
    total = 1.0 + 0j
    edges = np.linspace(0.0, 1.0, panels + 1)
    # values of the running integral of each level at all nodes, panel by panel
    prev = [np.ones(p, dtype=complex) for _ in range(panels)]
    for x in xs:
        cur = []
        start = 0j
        for k in range(panels):
            a, b = edges[k], edges[k + 1]
            u = a + (nodes + 1) * (b - a) / 2
            h = d / (x0 + u * d - x) * prev[k]
            cur.append(start + (b - a) / 2 * (cum @ h))
            start = start + (b - a) / 2 * np.dot(weights, h)
        prev = cur
        total = start
    return total


def iterint_numeric(x0: Number, xs: Sequence[Number], x_end: Number,
                    cfg: NumericConfig = NumericConfig()) -> Estimate:
    """``I(x0; x1..xm; x_end)`` along the straight path.

    Raises:
        SingularPath: a pole lies on the path.
    """
    _check_path(x0, xs, x_end)
    if not xs:
        return Estimate(1.0, 0.0)
    real = all(isinstance(v, (int, float, Fraction)) for v in (x0, x_end, *xs))
    z0, z1 = complex(x0), complex(x_end)
    zs = [complex(x) for x in xs]
    panels = 2
    old = _levels(z0, zs, z1, panels, cfg.nodes)
    for _ in range(cfg.quadrature_depth):
        panels *= 2
        new = _levels(z0, zs, z1, panels, cfg.nodes)
        err = abs(new - old)
        if err < cfg.tolerance:
            return Estimate(float(new.real) if real else complex(new), float(err))
        old = new
    raise NonConvergent(f"quadrature did not settle (last change {err:.3g})")


def li_one(x: float) -> float:
    """``I(0; x; 1) = log(1 - 1/x)`` for real ``x`` outside ``[0, 1]``."""
    return math.log(1 - 1 / x)


def check_diff_li(x1: float, x2: float, h: float, cfg: NumericConfig = NumericConfig()) -> float:
    """Largest gap between finite differences of ``I(0; x1, x2; 1)`` and the three-term formula."""
    if not (x1 > 1 and x2 > 1) or x1 == x2:
        raise SingularPath("need x1, x2 > 1 and distinct")

    def f(a: float, b: float) -> float:
        return iterint_numeric(0.0, [a, b], 1.0, cfg).value

    d1 = (f(x1 + h, x2) - f(x1 - h, x2)) / (2 * h)
    d2 = (f(x1, x2 + h) - f(x1, x2 - h)) / (2 * h)

    def g(y: float) -> float:
        # derivative of log(1 - 1/y)
        return 1 / (y * (y - 1))

    l1, l2 = li_one(x1), li_one(x2)
    r1 = l1 * g(x2 / x1) * x2 / x1 ** 2 + l2 * g(x1 / x2) / x2
    r2 = l1 * g(x2) - l1 * g(x2 / x1) / x1 - l2 * g(x1 / x2) * x1 / x2 ** 2
    return max(abs(d1 - r1), abs(d2 - r2))


@dataclass(frozen=True)
class HodgeCheck:
    integral: float
    iterated: float
    series: float | None
    difference: float
    two_pi_i_power: int = field(default=-2)


def double_log_cycle_check(x1: float, x2: float, cfg: NumericConfig = NumericConfig()) -> HodgeCheck:
    """Integrate ``ds1/(s1-x1) ds2/(s2-x2)`` over ``0 <= s1 <= s2 <= 1``.

    The simplex integral uses a two-dimensional adaptive rule, independent of
    ``iterint_numeric``.  The common ``(2 pi i)^-2`` prefactor is left symbolic.
    """
    from scipy import integrate

    for x in (x1, x2):
        if 0 <= x <= 1:
            raise SingularPath(f"pole {x} lies on the simplex")
    val, _ = integrate.dblquad(lambda s1, s2: 1 / ((s1 - x1) * (s2 - x2)), 0, 1, 0, lambda s2: s2,
                               epsabs=1e-13, epsrel=1e-13)
    ref = iterint_numeric(0.0, [x1, x2], 1.0, cfg).value
    series = None
    z2, z1 = 1 / x2, x2 / x1
    if abs(z1) < 1 and abs(z2) < 1:
        series = li_series([1, 1], [z1, z2], cfg).value
    diffs = [abs(val - ref)] + ([abs(val - series)] if series is not None else [])
    return HodgeCheck(val, ref, series, max(diffs))


def realize_bar_entry(c: Cycle, assignment: Mapping[str, Number] | None = None,
                      cfg: NumericConfig = NumericConfig()) -> float:
    """Integral of ``prod ds_i/(s_i - x_i)`` for a chain ``[1-s1/x1, 1-s2/x2, ...]``.

    Chains carrying an algebraic parameter (a first-type internal vertex)
    realize to 0.

    Raises:
        UnsupportedChain: the coordinates are not one per topological variable.
    """
    assignment = dict(assignment or {})
    if c.params:
        return 0.0
    if not c.chain:
        raise UnsupportedChain("not a topological chain")
    svars = c.topological()
    targets: dict[str, Number] = {}
    for x in c.coords:
        if x.form != ONE_MINUS:
            raise UnsupportedChain(x.text())
        tops = [a for a in x.mono.atoms() if a in svars]
        if len(tops) != 1 or x.mono.exp(tops[0]) != 1 or tops[0] in targets:
            raise UnsupportedChain(x.text())
        rest = x.mono * deco_monomial(tops[0]).inverse()
        targets[tops[0]] = 1 / _evaluate(rest, assignment)
    if set(targets) != set(svars):
        raise UnsupportedChain("every topological variable needs one coordinate")
    lo = _evaluate(_endpoint(c.chain[0]), assignment)
    hi = _evaluate(_endpoint(c.chain[-1]), assignment)
    return iterint_numeric(lo, [targets[s] for s in svars], hi, cfg).value


def _endpoint(d: str):
    try:
        return Fraction(d)
    except ValueError:
        return deco_monomial(d)


def _evaluate(m, assignment: Mapping[str, Number]) -> float:
    if isinstance(m, Fraction):
        return float(m)
    value = float(m.coeff)
    for a, e in m.exps:
        if a not in assignment:
            raise UnsupportedChain(f"no value for {a}")
        value *= float(assignment[a]) ** e
    return value
