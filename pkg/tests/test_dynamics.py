"""Tests for the center search and cycle enumeration.

Small-period center sets are checked against an independent oracle: the
roots of the exact-period factor computed by numpy's companion-matrix
solver from the exact integer coefficients.
"""

import dataclasses
import math

import mpmath
import numpy as np
import pytest

from pfspectra.dynamics import (
    DEFAULT_CONFIG,
    SearchConfig,
    eval_gm,
    escape_bound_check,
    find_centers,
    find_cycles,
    storage_precision,
)
from pfspectra.gleason import build_tower, h_degree, mobius, divisors

AIRPLANE = -1.7548776662466927


@pytest.fixture(scope="module")
def survey2():
    return {m: find_centers(2, m) for m in range(1, 7)}


@pytest.fixture(scope="module")
def survey3():
    return {m: find_centers(3, m) for m in range(1, 5)}


def oracle_roots(D, m):
    """Exact-period-m centers via the companion matrix of the integer factor."""
    tower = build_tower(D, m)
    h = tower.h_poly(m)
    coeffs = [float(a) for a in reversed(h.coeffs)]
    return np.sort_complex(np.roots(coeffs))


def test_eval_gm_examples():
    g, gp = eval_gm(2, 1, 0.25 + 0.5j)
    assert g == 0.25 + 0.5j and gp == 1
    g, gp = eval_gm(2, 2, -1.0 + 0j)
    assert abs(g) == 0 and gp == -1
    g, gp = eval_gm(2, 3, -1.0 + 0j)
    assert g == -1 and gp == 1


def test_eval_gm_matches_polynomial():
    tower = build_tower(3, 4)
    c = 0.31 - 0.22j
    g, gp = eval_gm(3, 4, c)
    poly = tower.g_poly(4)
    dpoly = poly.derivative()
    assert abs(g - poly(c)) < 1e-12
    assert abs(gp - dpoly(c)) < 1e-12


def test_eval_gm_escape():
    with pytest.raises(OverflowError):
        eval_gm(2, 6, 3.0 + 0j)
    with pytest.raises(OverflowError):
        eval_gm(3, 8, 1.4 + 1.4j)


def test_center_counts(survey2, survey3):
    for m, recs in survey2.items():
        assert len(recs) == h_degree(2, m)
    for m, recs in survey3.items():
        assert len(recs) == h_degree(3, m)


def test_known_small_centers(survey2):
    assert survey2[1][0].center_complex() == 0
    assert abs(survey2[2][0].center_complex() - (-1)) < 1e-14
    period3 = [r.center_complex() for r in survey2[3]]
    assert abs(period3[0] - AIRPLANE) < 1e-12
    assert abs(period3[1] - period3[2].conjugate()) < 1e-12
    assert abs(period3[1].real - -0.12256116687665) < 1e-10
    assert abs(abs(period3[1].imag) - 0.74486176661974) < 1e-10


def test_centers_match_oracle(survey2, survey3):
    # location match is limited by the oracle: the companion-matrix roots
    # lose ~1e-7 on the ill-conditioned near-tip clusters
    for D, survey, periods in ((2, survey2, (4, 5, 6)), (3, survey3, (3, 4))):
        for m in periods:
            got = np.array([r.center_complex() for r in survey[m]])
            want = oracle_roots(D, m)
            got = got[np.lexsort((got.imag, got.real))]
            want = want[np.lexsort((want.imag, want.real))]
            assert np.max(np.abs(got - want)) < 3e-7


def test_centers_satisfy_exact_factor(survey2, survey3):
    # Newton residual bound against the exact integer coefficients: each
    # reported center is within ~1e-9 of a true root of the exact-period
    # factor, independently of how the search found it
    for D, survey, periods in ((2, survey2, (4, 5, 6)), (3, survey3, (3, 4))):
        for m in periods:
            h = build_tower(D, m).h_poly(m)
            coeffs = [float(a) for a in h.coeffs]
            dcoeffs = [float(a) for a in h.derivative().coeffs]
            for rec in survey[m]:
                c = rec.center_complex()
                val = 0j
                mag = 0.0
                for a in reversed(coeffs):
                    val = val * c + a
                    mag = mag * abs(c) + abs(a)
                dval = 0j
                for a in reversed(dcoeffs):
                    dval = dval * c + a
                # fp Horner noise floor plus a Newton-step radius of 1e-10
                noise = 8 * len(coeffs) * 2.0 ** -52 * mag
                assert abs(val) <= noise + 1e-10 * max(1.0, abs(dval))


def test_residuals(survey2, survey3):
    for survey in (survey2, survey3):
        for recs in survey.values():
            for r in recs:
                assert r.residual <= 1e-13


def test_exact_period(survey2):
    for m in (4, 6):
        for rec in survey2[m]:
            c = rec.center_complex()
            for d in divisors(m):
                if d == m:
                    continue
                g, _ = eval_gm(2, d, c)
                assert abs(g) > 1e-6


def test_sorted_order(survey2):
    for recs in survey2.values():
        keyed = [(r.center_complex().real, r.center_complex().imag) for r in recs]
        assert keyed == sorted(keyed)


def test_deterministic():
    a = [r.center_complex() for r in find_centers(2, 5)]
    b = [r.center_complex() for r in find_centers(2, 5)]
    assert a == b


def test_escape_bound(survey2, survey3):
    for survey in (survey2, survey3):
        for recs in survey.values():
            for r in recs:
                assert escape_bound_check(r)
    rec = survey2[2][0]
    doctored = dataclasses.replace(rec, orbit=(0j, 3.0 + 0j))
    assert not escape_bound_check(doctored)


def test_orbit_and_delta_identities(survey2, survey3):
    for D, survey, m in ((2, survey2, 5), (3, survey3, 4)):
        for rec in survey[m]:
            c = rec.center_complex()
            orbit = rec.orbit_complex()
            assert orbit[0] == 0
            for k in range(1, m):
                assert abs(orbit[k] - (orbit[k - 1] ** D + c)) < 1e-12
            # orbit closes up
            assert abs(orbit[-1] ** D + c) < 1e-10
            deltas = [complex(d) for d in rec.deltas]
            for n, d in enumerate(deltas, start=1):
                assert abs(d - D * orbit[n] ** (D - 1)) < 1e-10
                assert abs(d) <= 2 * D + 1e-6
            big = [complex(x) for x in rec.big_deltas]
            neg = [complex(x) for x in rec.big_deltas_neg]
            total = big[-1]
            assert abs(neg[-1] - total) < 1e-8 * max(1.0, abs(total))
            for j in range(1, m - 1):
                lhs = big[j - 1] * neg[m - 2 - j]
                assert abs(lhs - total) <= 1e-10 * max(1.0, abs(total))


def test_storage_precision_scaling():
    assert storage_precision(2, 3, 53) >= 106
    assert storage_precision(2, 14, 53) >= 60 + 14 * 2 + 40
    assert storage_precision(2, 3, 300) >= 300


def test_extended_precision_records():
    cfg = dataclasses.replace(DEFAULT_CONFIG, precision=120)
    recs = find_centers(2, 3, cfg)
    rec = recs[0]
    assert isinstance(rec.orbit[0], mpmath.mpc)
    with mpmath.workprec(storage_precision(2, 3, 120)):
        g = mpmath.mpc(0)
        for _ in range(3):
            g = g ** 2 + rec.center
        assert abs(g) < mpmath.mpf(2) ** (-100)


def test_cycles_squared_map():
    recs = find_cycles(2, 0j, 3)
    by_period = {}
    for r in recs:
        by_period.setdefault(r.period, []).append(r)
    assert sorted(by_period) == [1, 2, 3]
    # point counts per exact period
    for n, group in by_period.items():
        expect = sum(mobius(n // d) * 2 ** d for d in divisors(n))
        assert sum(len(r.points) for r in group) == expect
    fixed = by_period[1]
    posts = [r for r in fixed if r.postcritical]
    assert len(posts) == 1 and posts[0].eigenvalues == ()
    assert abs(posts[0].points[0]) < 1e-9
    other = [r for r in fixed if not r.postcritical][0]
    assert abs(other.multiplier - 2) < 1e-9
    assert abs(by_period[2][0].multiplier - 4) < 1e-9
    for r in by_period[3]:
        assert abs(r.multiplier - 8) < 1e-8
    # eigenvalues invert the multiplier and sit on |lambda| = 1/2
    for r in recs:
        if r.postcritical:
            continue
        for lam in r.eigenvalues:
            assert abs(lam ** r.period * r.multiplier - 1) < 1e-8
            assert abs(abs(lam) - 0.5) < 1e-9


def test_cycles_basilica():
    recs = find_cycles(2, -1 + 0j, 2)
    two = [r for r in recs if r.period == 2]
    assert len(two) == 1 and two[0].postcritical
    pts = sorted(two[0].points, key=lambda z: z.real)
    assert abs(pts[0] - (-1)) < 1e-9 and abs(pts[1]) < 1e-9
    fixed = [r for r in recs if r.period == 1]
    mults = sorted(abs(r.multiplier) for r in fixed)
    assert abs(mults[0] - (math.sqrt(5) - 1)) < 1e-9
    assert abs(mults[1] - (math.sqrt(5) + 1)) < 1e-9


def test_cycle_eigenvalue_band(survey2):
    # at a postcritically finite parameter every non-critical cycle is
    # repelling and its eigenvalues fall in 1/(2D) <= |lambda| < 1
    rng = np.random.default_rng(11)
    recs = survey2[4]
    picks = rng.choice(len(recs), size=3, replace=False)
    for i in picks:
        c = recs[i].center_complex()
        for cyc in find_cycles(2, c, 4):
            if cyc.postcritical:
                continue
            for lam in cyc.eigenvalues:
                assert 1 / 4 - 1e-6 <= abs(lam) < 1 - 1e-9


def test_incomplete_enumeration_message():
    from pfspectra.dynamics import IncompleteEnumeration

    err = IncompleteEnumeration(3, 6, "degree-2 period-4 centers")
    assert "3" in str(err) and "6" in str(err)
