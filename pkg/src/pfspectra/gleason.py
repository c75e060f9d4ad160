"""Gleason polynomials of unicritical families and their exact certificates.

For f_c(z) = z^D + c the critical-orbit polynomials are

    G_0 = 0,    G_n(c) = G_{n-1}(c)^D + c,

so the roots of G_n are exactly the parameters whose critical point is
periodic with period dividing n.  Factoring out shared divisors gives the
period-m factors H_m with G_n = prod_{m | n} H_m; their roots are the
centers of exact period m.

Two integer certificates matter downstream and are produced here exactly:

* simple roots: G_n' = D G_{n-1}^{D-1} G_{n-1}' + 1 is congruent to 1
  coefficientwise mod D, hence resultant(G_n, G_n') is 1 mod D and in
  particular nonzero, so every root of G_n is simple;
* coprime periods: resultant(H_m, H_n) = +-1 for m < n, which makes the
  period factors pairwise coprime as algebraic-integer certificates.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .exactpoly import IntPoly, exact_div, resultant


def divisors(n: int) -> list[int]:
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d != n // d:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def proper_divisors(n: int) -> list[int]:
    return [d for d in divisors(n) if d < n]


@lru_cache(maxsize=None)
def mobius(n: int) -> int:
    if n < 1:
        raise ValueError("mobius undefined for n < 1")
    if n == 1:
        return 1
    result = 1
    d = 2
    while d * d <= n:
        if n % d == 0:
            n //= d
            if n % d == 0:
                return 0
            result = -result
        d += 1
    if n > 1:
        result = -result
    return result


def h_degree(D: int, m: int) -> int:
    """Degree of the exact-period-m factor: sum over d | m of mu(m/d) D^(d-1)."""
    return sum(mobius(m // d) * D ** (d - 1) for d in divisors(m))


@dataclass(frozen=True)
class GleasonTower:
    """Orbit polynomials G_1..G_max and period factors H_1..H_max for one degree."""

    degree: int
    max_period: int
    g: tuple  # g[n] = G_n, index 0..max_period (g[0] is the zero polynomial)
    h: tuple  # h[m] = H_m, index 1..max_period (h[0] unused, set to 1)

    def g_poly(self, n: int) -> IntPoly:
        if not 0 <= n <= self.max_period:
            raise IndexError(f"G_{n} not built (max period {self.max_period})")
        return self.g[n]

    def h_poly(self, m: int) -> IntPoly:
        if not 1 <= m <= self.max_period:
            raise IndexError(f"H_{m} not built (max period {self.max_period})")
        return self.h[m]


def build_tower(D: int, max_period: int) -> GleasonTower:
    if D < 2:
        raise ValueError("degree must be >= 2")
    if max_period < 1:
        raise ValueError("max_period must be >= 1")
    x = IntPoly.x()
    g = [IntPoly.zero()]
    for _ in range(max_period):
        g.append(g[-1] ** D + x)
    h = [IntPoly.one()] * (max_period + 1)
    for m in range(1, max_period + 1):
        hm = g[m]
        for d in proper_divisors(m):
            hm = exact_div(hm, h[d])
        h[m] = hm
    return GleasonTower(degree=D, max_period=max_period, g=tuple(g), h=tuple(h))


@dataclass(frozen=True)
class SimpleRootsCertificate:
    """Exact witness that G_n has simple roots."""

    degree: int
    period: int
    resultant_value: int
    resultant_is_unit_mod_d: bool
    derivative_one_mod_d: bool

    @property
    def passed(self) -> bool:
        return self.resultant_is_unit_mod_d and self.derivative_one_mod_d


def certify_simple_roots(tower: GleasonTower, n: int) -> SimpleRootsCertificate:
    """resultant(G_n, G_n') together with the mod-D congruence that forces it odd.

    G_n' - 1 has every coefficient divisible by D, so the resultant of G_n
    with G_n' reduces mod D to the resultant with the constant 1, which is 1.
    A unit mod D is nonzero, hence no repeated roots.
    """
    D = tower.degree
    gn = tower.g_poly(n)
    gnp = gn.derivative()
    res = resultant(gn, gnp)
    deriv_ok = all(c % D == 0 for c in (gnp - IntPoly.one()).coeffs)
    return SimpleRootsCertificate(
        degree=D,
        period=n,
        resultant_value=res,
        resultant_is_unit_mod_d=(res % D == 1 % D),
        derivative_one_mod_d=deriv_ok,
    )


@dataclass(frozen=True)
class PoonenCertificate:
    """Exact witness that two period factors are coprime with unit resultant."""

    degree: int
    period_small: int
    period_large: int
    resultant_value: int

    @property
    def passed(self) -> bool:
        return abs(self.resultant_value) == 1


def certify_poonen(tower: GleasonTower, m: int, n: int) -> PoonenCertificate:
    if m == n:
        raise ValueError("periods must differ")
    if m > n:
        m, n = n, m
    res = resultant(tower.h_poly(m), tower.h_poly(n))
    return PoonenCertificate(
        degree=tower.degree, period_small=m, period_large=n, resultant_value=res
    )


def degree_check(tower: GleasonTower) -> dict[int, int]:
    """Degrees of every H_m against the Mobius count; mismatch aborts.

    Also re-verifies the product structure G_n = prod_{m | n} H_m and the
    normalization H_m(0) = 1 for m >= 2.
    """
    D = tower.degree
    table = {}
    for m in range(1, tower.max_period + 1):
        hm = tower.h_poly(m)
        expected = h_degree(D, m)
        if hm.degree != expected:
            raise AssertionError(
                f"deg H_{m} = {hm.degree}, Mobius count gives {expected}"
            )
        if m >= 2 and hm.constant() != 1:
            raise AssertionError(f"H_{m}(0) = {hm.constant()}, expected 1")
        prod = IntPoly.one()
        for d in divisors(m):
            prod = prod * tower.h_poly(d)
        if prod != tower.g_poly(m):
            raise AssertionError(f"product of H_d over d | {m} fails to equal G_{m}")
        table[m] = hm.degree
    return table
