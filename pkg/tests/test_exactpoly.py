"""Exact polynomial layer: examples plus randomized ring/resultant properties.

The resultant oracle here is independent of the library path: a Sylvester
matrix determinant computed by fraction-free Bareiss elimination.
"""

import random

import pytest

from pfspectra.exactpoly import (
    BivarPoly,
    DegreeDrop,
    IntPoly,
    NonDivisible,
    NotAPower,
    ZeroInput,
    exact_div,
    gcd,
    power_series_root,
    resultant,
    resultant_bivar,
)


def bareiss_det(m):
    """Exact determinant of an integer matrix, fraction-free elimination."""
    n = len(m)
    m = [row[:] for row in m]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def sylvester_resultant(p, q):
    """Oracle: resultant as the determinant of the Sylvester matrix."""
    n, m = p.degree, q.degree
    if n < 0 or m < 0:
        raise ValueError("zero polynomial")
    if n == 0 and m == 0:
        return 1
    size = n + m
    rows = []
    pd = list(reversed(p.coeffs))  # descending
    qd = list(reversed(q.coeffs))
    for i in range(m):
        rows.append([0] * i + pd + [0] * (m - 1 - i))
    for i in range(n):
        rows.append([0] * i + qd + [0] * (n - 1 - i))
    assert all(len(r) == size for r in rows)
    return bareiss_det(rows)


def rand_poly(rng, max_deg=6, max_coeff=30, nonzero=False):
    while True:
        deg = rng.randint(0, max_deg)
        cs = [rng.randint(-max_coeff, max_coeff) for _ in range(deg + 1)]
        p = IntPoly(cs)
        if not nonzero or not p.is_zero():
            return p


# -- construction and basic ops ----------------------------------------


def test_canonical_form():
    assert IntPoly([1, 2, 0, 0]).coeffs == (1, 2)
    assert IntPoly([0, 0, 0]).coeffs == ()
    assert IntPoly.zero().degree == -1
    assert IntPoly.x().degree == 1
    assert IntPoly([3]).degree == 0


def test_add_mul_examples():
    x = IntPoly.x()
    p = x * x + x  # c^2 + c
    assert p.coeffs == (0, 1, 1)
    q = 2 * x + 1
    assert (p + q).coeffs == (1, 3, 1)
    assert (p * q).coeffs == (0, 1, 3, 2)
    assert (p - p).is_zero()


def test_evaluate():
    p = IntPoly([1, 2, 1])  # (1+c)^2
    assert p(3) == 16
    assert p(-1) == 0
    assert abs(p(1j) - (1j + 1) ** 2) < 1e-15


def test_derivative():
    p = IntPoly([5, 0, 3, 4])  # 4c^3 + 3c^2 + 5
    assert p.derivative().coeffs == (0, 6, 12)
    assert IntPoly([7]).derivative().is_zero()


def test_exact_div_example():
    # G_3 / H_1 for degree 2: (c^4 + 2c^3 + c^2 + c) / c
    g3 = IntPoly([0, 1, 1, 2, 1])
    h1 = IntPoly.x()
    assert exact_div(g3, h1).coeffs == (1, 1, 2, 1)


def test_exact_div_checked():
    p = IntPoly([0, 1, 1])  # c^2 + c
    with pytest.raises(NonDivisible):
        exact_div(p, IntPoly([1, 1, 1]))
    with pytest.raises(NonDivisible):
        exact_div(p, IntPoly([0, 2]))  # 2c does not divide over Z
    with pytest.raises(ZeroInput):
        exact_div(p, IntPoly.zero())


def test_pow():
    x = IntPoly.x()
    assert ((x + 1) ** 3).coeffs == (1, 3, 3, 1)
    assert (x ** 0).coeffs == (1,)


# -- resultant ----------------------------------------------------------


def test_resultant_examples():
    x = IntPoly.x()
    assert resultant(x, x + 1) == 1
    # common root -> 0
    assert resultant(x * x - 1, x - 1) == 0
    r = resultant(x * x + x, 2 * x + 1)
    assert r == sylvester_resultant(IntPoly([0, 1, 1]), IntPoly([1, 2]))
    assert r % 2 == 1  # odd


def test_resultant_zero_input():
    with pytest.raises(ZeroInput):
        resultant(IntPoly.zero(), IntPoly.one())


def test_resultant_matches_sylvester_randomized():
    rng = random.Random(421)
    for _ in range(400):
        p = rand_poly(rng, max_deg=7, max_coeff=20, nonzero=True)
        q = rand_poly(rng, max_deg=7, max_coeff=20, nonzero=True)
        assert resultant(p, q) == sylvester_resultant(p, q), (p, q)


def test_resultant_swap_sign():
    rng = random.Random(77)
    for _ in range(200):
        p = rand_poly(rng, max_deg=5, nonzero=True)
        q = rand_poly(rng, max_deg=5, nonzero=True)
        lhs = resultant(p, q)
        rhs = resultant(q, p)
        if (p.degree * q.degree) % 2 == 1:
            assert lhs == -rhs
        else:
            assert lhs == rhs


def test_resultant_zero_iff_common_factor():
    rng = random.Random(99)
    for _ in range(200):
        f = rand_poly(rng, max_deg=3, nonzero=True)
        g = rand_poly(rng, max_deg=3, nonzero=True)
        h = rand_poly(rng, max_deg=2, nonzero=True)
        if h.degree >= 1:
            assert resultant(f * h, g * h) == 0
    # and conversely a nonzero value certifies coprimality on examples
    assert resultant(IntPoly([1, 1]), IntPoly([2, 1])) != 0


def test_resultant_product_over_roots():
    # res(p, q) = lc(p)^deg q * prod q(alpha) over roots of p
    p = IntPoly([-1, 0, 1])  # (c-1)(c+1)
    q = IntPoly([3, 1])  # c + 3
    assert resultant(p, q) == (3 + 1) * (3 - 1)


# -- gcd -----------------------------------------------------------------


def test_gcd_examples():
    x = IntPoly.x()
    assert gcd(x * x - 1, x - 1) == x - 1
    assert gcd(x, x + 1) == IntPoly.one()
    assert gcd(2 * (x + 1), 4 * (x + 1)) == x + 1  # primitive output
    assert gcd(IntPoly.zero(), 3 * x) == x
    with pytest.raises(ZeroInput):
        gcd(IntPoly.zero(), IntPoly.zero())


def test_gcd_randomized():
    rng = random.Random(5150)
    for _ in range(300):
        a = rand_poly(rng, max_deg=4, max_coeff=9, nonzero=True)
        b = rand_poly(rng, max_deg=4, max_coeff=9, nonzero=True)
        h = rand_poly(rng, max_deg=3, max_coeff=9, nonzero=True)
        g = gcd(a * h, b * h)
        # the primitive part of h divides the reported gcd
        hp = h.primitive()
        try:
            exact_div(g, hp)
        except NonDivisible:
            pytest.fail(f"{hp} does not divide gcd {g} for a={a} b={b} h={h}")
        assert g.leading() > 0


def test_gcd_negative_leading():
    x = IntPoly.x()
    g = gcd(-2 * x - 2, -4 * x - 4)
    assert g == x + 1


# -- ring axioms (randomized) --------------------------------------------


def test_ring_axioms_randomized():
    rng = random.Random(31415)
    for _ in range(1000):
        p = rand_poly(rng, max_deg=5, max_coeff=50)
        q = rand_poly(rng, max_deg=5, max_coeff=50)
        r = rand_poly(rng, max_deg=5, max_coeff=50)
        assert (p + q) * r == p * r + q * r
        assert p * q == q * p
        assert (p * q) * r == p * (q * r)
        assert p + q == q + p


def test_div_mul_roundtrip_randomized():
    rng = random.Random(2718)
    for _ in range(1000):
        p = rand_poly(rng, max_deg=6, max_coeff=40)
        q = rand_poly(rng, max_deg=4, max_coeff=40, nonzero=True)
        assert exact_div(p * q, q) == p


# -- power_series_root ----------------------------------------------------


def test_power_series_root_examples():
    x = IntPoly.x()
    u = IntPoly([1, 3, 2, 1])  # constant term 1
    assert power_series_root(u * u, 2) == u
    assert power_series_root(u ** 3, 3) == u
    assert power_series_root(u, 1) == u
    with pytest.raises(NotAPower):
        power_series_root(u * u + 1, 2)
    with pytest.raises(NotAPower):
        power_series_root(IntPoly([2, 1]), 2)  # constant term not a unit
    # odd root of a -1 constant-term polynomial
    v = IntPoly([-1, 2, -5])
    assert power_series_root(v ** 3, 3) == v


def test_power_series_root_degree_mismatch():
    with pytest.raises(NotAPower):
        power_series_root(IntPoly([1, 1, 1]), 2)  # degree 2 not a square shape


def test_power_series_root_randomized():
    rng = random.Random(8080)
    for _ in range(300):
        k = rng.choice([2, 3, 4])
        deg = rng.randint(0, 5)
        cs = [rng.randint(-6, 6) for _ in range(deg + 1)]
        cs[0] = -1 if (k % 2 == 1 and rng.random() < 0.3) else 1
        u = IntPoly(cs)
        assert power_series_root(u ** k, k) == u


# -- bivariate resultant ---------------------------------------------------


def test_bivar_constant_in_c():
    # r independent of c: the elimination returns resultant(p, const)^... i.e.
    # the specialization r(nu)^deg p as a polynomial in nu
    p = IntPoly([1, 1, 1])  # degree 2
    r = BivarPoly([IntPoly([3]), IntPoly([2])])  # 3 + 2 nu
    s = resultant_bivar(p, r)
    expect = (IntPoly([3, 2])) ** 2
    assert s == expect


def test_bivar_matches_univariate_nodes():
    rng = random.Random(606)
    for _ in range(40):
        p = rand_poly(rng, max_deg=4, max_coeff=8, nonzero=True)
        while p.degree < 1:
            p = rand_poly(rng, max_deg=4, max_coeff=8, nonzero=True)
        ncoeffs = []
        for _ in range(rng.randint(1, 3)):
            ncoeffs.append(rand_poly(rng, max_deg=3, max_coeff=8))
        r = BivarPoly(ncoeffs)
        if r.is_zero():
            continue
        s = resultant_bivar(p, r)
        lead = r.lead_c_in_nu()
        for nu0 in (3, -4, 7):
            if lead(nu0) == 0 or r.eval_nu(nu0).is_zero():
                continue
            assert s(nu0) == resultant(p, r.eval_nu(nu0))


def test_bivar_degree_drop_skipped():
    # leading c-coefficient vanishes at nu = 1 yet the resultant interpolates
    p = IntPoly([0, 1, 1])  # c^2 + c
    # r = (1 - nu) c^2 + c + nu : generic c-degree 2, drops at nu = 1
    r = BivarPoly([IntPoly([0, 1, 1]), IntPoly([1, 0, -1])])
    s = resultant_bivar(p, r)
    lead = r.lead_c_in_nu()
    for nu0 in (0, 2, -1, 3):
        assert lead(nu0) != 0
        assert s(nu0) == resultant(p, r.eval_nu(nu0))


def test_bivar_zero_input():
    with pytest.raises(ZeroInput):
        resultant_bivar(IntPoly.zero(), BivarPoly([IntPoly.one()]))
    with pytest.raises(ZeroInput):
        resultant_bivar(IntPoly.one(), BivarPoly([]))


# -- serialization --------------------------------------------------------


def test_decimal_roundtrip():
    p = IntPoly([10 ** 40, -3, 0, 7])
    s = p.to_decimal_strings()
    assert s[0] == str(10 ** 40)
    assert IntPoly.from_decimal_strings(s) == p


def test_immutability():
    p = IntPoly([1, 2])
    with pytest.raises(AttributeError):
        p.coeffs = (5,)
