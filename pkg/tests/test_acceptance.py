"""End-to-end acceptance gate.

Each check prints one visible PASS/FAIL line with its headline numbers
(shown even under output capture) and then asserts at its pinned
tolerance.  The two full center surveys are session fixtures shared by
most checks; their build time is itself one of the budgets.
"""

import time

import numpy as np
import pytest

from pfspectra.cli import _survey_one, main, survey_csv
from pfspectra.dynamics import find_cycles
from pfspectra.equidist import ANCHOR_MINUS_TWO, run_experiment
from pfspectra.exactpoly import IntPoly
from pfspectra.gleason import build_tower, certify_poonen, h_degree
from pfspectra.spectrum import (
    build_matrix_explicit,
    build_matrix_residues,
    derivative_identity_check,
)
from pfspectra.units import certify, crosscheck_numeric, upsilon3_closed_form

SURVEY_PERIODS = {2: range(1, 15), 3: range(1, 10)}
UNIT_PAIRS = [(2, 3), (2, 4), (2, 5), (2, 6), (2, 7), (3, 3), (3, 4), (3, 5)]

_timings = {}


def _report(capsys, name, ok, detail=""):
    tag = "PASS" if ok else "FAIL"
    line = f"[acceptance] {name}: {tag}"
    if detail:
        line += f"  ({detail})"
    with capsys.disabled():
        print(line, flush=True)
    assert ok, f"{name}: {detail}"


def _match_max(a, b) -> float:
    """Greedy multiset matching distance between equal-length value lists."""
    dm = np.abs(np.subtract.outer(np.asarray(a), np.asarray(b)))
    worst = 0.0
    for _ in range(dm.shape[0]):
        i, j = np.unravel_index(np.argmin(dm), dm.shape)
        worst = max(worst, float(dm[i, j]))
        dm[i, :] = np.inf
        dm[:, j] = np.inf
    return worst


@pytest.fixture(scope="session")
def surveys():
    data = {}
    for D, periods in SURVEY_PERIODS.items():
        t0 = time.perf_counter()
        data[D] = [_survey_one(D, m, 53) for m in periods]
        _timings[D] = time.perf_counter() - t0
    return data


@pytest.fixture(scope="session")
def unit_certs():
    t0 = time.perf_counter()
    towers = {2: build_tower(2, 7), 3: build_tower(3, 5)}
    certs = {(D, m): certify(towers[D], m) for D, m in UNIT_PAIRS}
    _timings["units"] = time.perf_counter() - t0
    return certs


def test_01_orbit_polynomial_exactness(capsys):
    t0 = time.perf_counter()
    tower = build_tower(2, 4)
    g3 = tower.g_poly(3)
    h4 = tower.h_poly(4)
    elapsed = time.perf_counter() - t0
    ok = (
        g3 == IntPoly([0, 1, 1, 2, 1])
        and h4 == IntPoly([1, 0, 2, 3, 3, 3, 1])
        and elapsed < 1.0
    )
    _report(capsys, "orbit-polynomial-exactness", ok, f"{elapsed:.3f}s")


def test_02_coprimality_certificates(capsys):
    t0 = time.perf_counter()
    pairs = 0
    exact = True
    for D, top in ((2, 7), (3, 5)):
        tower = build_tower(D, top)
        for small in range(1, top + 1):
            for large in range(small + 1, top + 1):
                cert = certify_poonen(tower, small, large)
                exact &= abs(cert.resultant_value) == 1
                pairs += 1
    elapsed = time.perf_counter() - t0
    ok = exact and elapsed < 300.0
    _report(
        capsys,
        "coprimality-certificates",
        ok,
        f"{pairs} pairs, all unit resultants, {elapsed:.2f}s",
    )


def test_03_center_enumeration(capsys, surveys):
    total = 0
    counts_ok = True
    worst_residual = 0.0
    for D, outputs in surveys.items():
        for m, records, _ in outputs:
            total += len(records)
            counts_ok &= len(records) == h_degree(D, m)
            worst_residual = max(
                worst_residual, max(float(r.residual) for r in records)
            )
    build = _timings[2] + _timings[3]
    ok = counts_ok and worst_residual <= 1e-13 and build < 600.0
    _report(
        capsys,
        "center-enumeration",
        ok,
        f"{total} centers, worst residual {worst_residual:.2e}, build {build:.0f}s",
    )


def test_04_spectral_gap(capsys, surveys):
    ok = True
    parts = []
    for D, lo, hi in ((2, 0.125 + 1e-10, 1.0 - 1e-10), (3, 1.0 / 12.0, 1.0)):
        mags = []
        for _, _, results in surveys[D]:
            if results is None:
                continue
            for res in results:
                mags.extend(abs(lam) for lam in res.eigenvalues)
        ok &= min(mags) > lo and max(mags) < hi
        parts.append(f"D={D}: {len(mags)} in [{min(mags):.6f}, {max(mags):.6f}]")
    _report(capsys, "spectral-gap", ok, "; ".join(parts))


def test_05_derivative_identity(capsys, surveys):
    worst = 0.0
    count = 0
    for D, outputs in surveys.items():
        for _, records, results in outputs:
            if results is None:
                continue
            for rec, res in zip(records, results):
                worst = max(worst, derivative_identity_check(rec, res).rel_err)
                count += 1
    ok = worst <= 1e-8
    _report(
        capsys,
        "derivative-identity",
        ok,
        f"{count} centers, worst relative error {worst:.2e}",
    )


def test_06_unit_certificates(capsys, unit_certs):
    ok = _timings["units"] < 900.0
    for (D, m), cert in unit_certs.items():
        refold = IntPoly([1, -1]) ** h_degree(D, m) * cert.upsilon ** (D - 1)
        ok &= cert.constant_coeff == 1
        ok &= abs(cert.leading_coeff) == 1
        ok &= refold == cert.s_poly
        if m == 3:
            ok &= cert.upsilon == upsilon3_closed_form(D)
    _report(
        capsys,
        "unit-certificates",
        ok,
        f"{len(unit_certs)} pairs, exact factorization, {_timings['units']:.1f}s",
    )


def test_07_exact_numeric_crosscheck(capsys, surveys, unit_certs):
    worst = 0.0
    for (D, m), cert in unit_certs.items():
        period, _, results = surveys[D][m - 1]
        assert period == m
        worst = max(worst, crosscheck_numeric(cert, results))
    ok = worst <= 1e-6
    _report(
        capsys,
        "exact-numeric-crosscheck",
        ok,
        f"{len(unit_certs)} pairs, worst matching distance {worst:.2e}",
    )


def test_08_pushforward_matrix_oracle(capsys, surveys):
    rng = np.random.default_rng(20260819)
    pool = []
    for D in (2, 3):
        for _, records, results in surveys[D]:
            if results is None:
                continue
            pool.extend((D, rec, res) for rec, res in zip(records, results))
    worst_entry = 0.0
    worst_root = 0.0
    for i in rng.choice(len(pool), size=20, replace=False):
        D, rec, res = pool[i]
        explicit = build_matrix_explicit(rec)
        contour = build_matrix_residues(
            D, complex(rec.center), rec.orbit_complex()
        )
        worst_entry = max(
            worst_entry, float(np.max(np.abs(explicit.entries - contour.entries)))
        )
        roots = np.linalg.eigvals(contour.entries)
        expected = np.array([0.0, 1.0 / D] + list(res.eigenvalues))
        worst_root = max(worst_root, _match_max(roots, expected))
    ok = worst_entry <= 1e-8 and worst_root <= 1e-8
    _report(
        capsys,
        "pushforward-matrix-oracle",
        ok,
        f"20 centers, worst entry diff {worst_entry:.2e}, "
        f"worst root diff {worst_root:.2e}",
    )


def test_09_cycle_eigenvalue_bound(capsys, surveys):
    rng = np.random.default_rng(826243871)
    pool = []
    for D in (2, 3):
        for _, records, _ in surveys[D]:
            pool.extend((D, rec) for rec in records)
    ok = True
    count = 0
    lo_seen, hi_seen = 9.0, 0.0
    for i in rng.choice(len(pool), size=30, replace=False):
        D, rec = pool[i]
        cycles = find_cycles(D, complex(rec.center), 8)
        mags = [abs(lam) for cyc in cycles for lam in cyc.eigenvalues]
        count += len(mags)
        lo_seen = min(lo_seen, min(mags))
        hi_seen = max(hi_seen, max(mags))
        ok &= min(mags) >= 1.0 / (2 * D) - 1e-12 and max(mags) < 1.0
    _report(
        capsys,
        "cycle-eigenvalue-bound",
        ok,
        f"{count} eigenvalues over 30 parameters, range "
        f"[{lo_seen:.6f}, {hi_seen:.6f}]",
    )


def test_10_equidistribution_trend(capsys):
    t0 = time.perf_counter()
    _, _, report = run_experiment(ANCHOR_MINUS_TWO, [12, 16, 20, 24])
    elapsed = time.perf_counter() - t0
    ok = (
        report.passed
        and report.moment_slope < 0
        and report.radial_slope < 0
        and elapsed < 600.0
    )
    _report(
        capsys,
        "equidistribution-trend",
        ok,
        f"moment slope {report.moment_slope:.3e}, radial slope "
        f"{report.radial_slope:.3e}, {elapsed:.1f}s",
    )


def test_11_deterministic_csv(capsys, surveys, tmp_path):
    ok = True
    sizes = []
    for D, periods in SURVEY_PERIODS.items():
        first = survey_csv(surveys[D])[0].encode()
        out = tmp_path / f"survey{D}.csv"
        code = main(
            [
                "survey",
                "--degree",
                str(D),
                "--periods",
                ",".join(str(m) for m in periods),
                "--out",
                str(out),
            ]
        )
        ok &= code == 0 and out.read_bytes() == first
        sizes.append(len(first))
    _report(
        capsys,
        "deterministic-survey-csv",
        ok,
        f"independent reruns byte-identical, sizes {sizes}",
    )
