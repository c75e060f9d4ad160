"""Pushforward spectra of periodic unicritical polynomials.

For f(z) = z^D + c with critical orbit 0, zeta_1, ..., zeta_{m-1} periodic
of period m, the pushforward operator on meromorphic quadratic
differentials with poles along the orbit acts, in the natural basis, by an
m x m matrix whose characteristic polynomial is

    lambda * chi2(lambda),    chi2(lambda) = lambda^{m-1} + sum_k lambda^{m-1-k} / Delta_k,

where Delta_k are forward products of the orbit derivatives
delta_j = D zeta_j^{D-1}.  The factor chi(lambda) = chi2(lambda)/(lambda - 1/D)
has degree m-2 and carries the actual spectrum.  Everything here is
assembled in the normalized form 1 + Delta_{-1} lambda + ... whose
coefficients stay bounded by (2D)^k, avoiding the underflow that the raw
1/Delta_k coefficients invite.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, replace

import numpy as np

from .dynamics import CenterRecord, eval_gm


class DimensionTooSmall(Exception):
    """The differential space is empty: period < 3 has no eigenvalues."""


class NonConvergence(Exception):
    """A root failed to polish below tolerance; partial results attached."""

    def __init__(self, message: str, partial=None):
        super().__init__(message)
        self.partial = partial


class ContourTooClose(Exception):
    """Contour integration cannot separate two contributing points."""


@dataclass(frozen=True)
class SpectrumResult:
    """Characteristic data of the pushforward at one center.

    Coefficient sequences are ascending (constant term first).  chi2 is the
    monic degree m-1 factor with root 1/D; chi is the monic degree m-2
    quotient whose roots are the eigenvalues.  normalized_coeffs is
    1, Delta_{-1}, ..., Delta_{-(m-1)}; division_remainder is chi2(1/D).
    """

    record: CenterRecord
    normalized_coeffs: tuple
    chi2_coeffs: tuple
    chi_coeffs: tuple
    division_remainder: complex
    eigenvalues: tuple | None = None
    eigenvalue_residuals: tuple | None = None
    gap_ok: bool | None = None

    @property
    def degree(self) -> int:
        return self.record.degree

    @property
    def period(self) -> int:
        return self.record.period


@dataclass(frozen=True)
class PushforwardMatrix:
    """Matrix of the pushforward in the orbit basis, with point labels."""

    degree: int
    parameter: complex
    labels: tuple
    entries: np.ndarray


@dataclass(frozen=True)
class DerivativeIdentityReport:
    lhs: complex
    rhs: complex
    rel_err: float
    passed: bool


def r_constant(D: int) -> float:
    """Inner radius of the annulus filled by the closure of the spectra."""
    if D < 2:
        raise ValueError("degree must be >= 2")
    if D % 2 == 0:
        return 1.0 / (2 * D)
    return 1.0 / (2 * D * math.cos(math.pi / (2 * D)))


def chi2_from_orbit(record: CenterRecord) -> SpectrumResult:
    """Assemble chi2, chi and the normalized coefficients from orbit data.

    The quotient chi is extracted by synthetic division in the normalized
    form (nchi_k = n2_k + D nchi_{k-1}), whose remainder must vanish since
    1/D is always a root of chi2; the remainder is recorded in the monic
    scale as chi2(1/D).
    """
    m = record.period
    D = record.degree
    if m < 2:
        raise DimensionTooSmall(f"period {m} has no division structure")
    big = [complex(x) for x in record.big_deltas]
    neg = [complex(x) for x in record.big_deltas_neg]
    n2 = [1.0 + 0j] + neg  # 1, Delta_{-1}, ..., Delta_{-(m-1)}
    # chi2 ascending: coefficient of lambda^j is 1/Delta_{m-1-j}
    chi2 = [1.0 / big[m - 2 - j] for j in range(m - 1)] + [1.0 + 0j]
    nchi = [1.0 + 0j]
    for k in range(1, m - 1):
        nchi.append(n2[k] + D * nchi[k - 1])
    # monic chi: scale the normalized quotient by its leading coefficient
    lead = nchi[-1]
    chi = [x / lead for x in nchi]
    rem = 0j
    lam = 1.0 / D
    for a in reversed(chi2):
        rem = rem * lam + a
    return SpectrumResult(
        record=record,
        normalized_coeffs=tuple(n2),
        chi2_coeffs=tuple(chi2),
        chi_coeffs=tuple(chi),
        division_remainder=rem,
    )


def _aberth_batch(coeffs: np.ndarray, tol: float = 1e-13, max_iter: int = 80):
    """Simultaneous Aberth-Ehrlich iteration on a batch of polynomials.

    coeffs has shape (N, deg+1), ascending, constant term 1.  Returns
    (roots (N, deg), residuals (N, deg)) where the residual is the Newton
    step magnitude |p/p'| at the accepted root.
    """
    n, width = coeffs.shape
    deg = width - 1
    if deg < 1:
        return np.zeros((n, 0), complex), np.zeros((n, 0))

    def horner(z):
        p = np.zeros_like(z)
        dp = np.zeros_like(z)
        for j in range(deg, -1, -1):
            dp = dp * z + p
            p = p * z + coeffs[:, j, None]
        return p, dp

    lead = np.abs(coeffs[:, -1])
    r0 = lead ** (-1.0 / deg)
    angles = 2 * np.pi * (np.arange(deg) + 0.37) / deg
    z = r0[:, None] * np.exp(1j * angles)[None, :]
    diag = np.arange(deg)
    for _ in range(max_iter):
        p, dp = horner(z)
        dp = np.where(dp == 0, 1e-300, dp)
        newton = p / dp
        diff = z[:, :, None] - z[:, None, :]
        diff[:, diag, diag] = np.inf
        s = np.sum(1.0 / diff, axis=2)
        denom = 1.0 - newton * s
        denom = np.where(denom == 0, 1e-300, denom)
        step = newton / denom
        z = z - step
        if np.max(np.abs(step)) < tol:
            break
    # final Newton polish and residual bound
    for _ in range(2):
        p, dp = horner(z)
        dp = np.where(dp == 0, 1e-300, dp)
        z = z - p / dp
    p, dp = horner(z)
    dp = np.where(dp == 0, 1e-300, dp)
    res = np.abs(p / dp)
    return z, res


def solve_spectrum(
    result: SpectrumResult, gap_margin: float = 1e-10, res_tol: float = 1e-9
) -> SpectrumResult:
    """Fill eigenvalues, residual bounds and the gap flag of one result."""
    return solve_spectra([result], gap_margin, res_tol)[0]


def solve_spectra(
    results: list[SpectrumResult],
    gap_margin: float = 1e-10,
    res_tol: float = 1e-9,
) -> list[SpectrumResult]:
    """Batched eigenvalue solve for results sharing one (degree, period).

    The normalized polynomials of a whole survey are handed to the Aberth
    solver as one array, which keeps the per-center overhead negligible.
    """
    if not results:
        return []
    m = results[0].period
    D = results[0].degree
    if any(r.period != m or r.degree != D for r in results):
        raise ValueError("batch must share one degree and period")
    if m < 3:
        raise DimensionTooSmall(f"dim of the differential space is {m - 2} <= 0")
    deg = m - 2
    coeffs = np.empty((len(results), deg + 1), complex)
    for i, r in enumerate(results):
        n2 = r.normalized_coeffs
        nchi = [1.0 + 0j]
        for k in range(1, m - 1):
            nchi.append(n2[k] + D * nchi[k - 1])
        coeffs[i] = nchi
    roots, res = _aberth_batch(coeffs)
    out = []
    bad: list[tuple[int, float]] = []
    lo = 1.0 / (4 * D)
    for i, r in enumerate(results):
        order = np.lexsort((roots[i].imag, roots[i].real))
        eig = tuple(complex(z) for z in roots[i][order])
        rr = tuple(float(x) for x in res[i][order])
        mags = [abs(z) for z in eig]
        ok = all(lo + gap_margin < t < 1.0 - gap_margin for t in mags)
        out.append(
            replace(r, eigenvalues=eig, eigenvalue_residuals=rr, gap_ok=ok)
        )
        worst = max(rr, default=0.0)
        if worst > res_tol:
            bad.append((i, worst))
    if bad:
        raise NonConvergence(
            f"{len(bad)} spectra exceeded residual {res_tol}"
            f" (worst {max(w for _, w in bad):.3e})",
            partial=out,
        )
    return out


def spectrum(record: CenterRecord, gap_margin: float = 1e-10) -> SpectrumResult:
    """Full spectral data for one center record."""
    return solve_spectrum(chi2_from_orbit(record), gap_margin)


def eigenvalues(result: SpectrumResult) -> tuple:
    """The eigenvalue multiset, solving on demand if needed."""
    if result.period < 3:
        raise DimensionTooSmall(
            f"dim of the differential space is {result.period - 2} <= 0"
        )
    if result.eigenvalues is None:
        return solve_spectrum(result).eigenvalues
    return result.eigenvalues


def gap_check(result: SpectrumResult, gap_margin: float = 1e-10) -> bool:
    """All eigenvalues strictly inside the annulus 1/(4D) < |l| < 1."""
    eig = eigenvalues(result)
    lo = 1.0 / (4 * result.degree)
    return all(lo + gap_margin < abs(z) < 1.0 - gap_margin for z in eig)


def derivative_identity_check(
    record: CenterRecord, result: SpectrumResult | None = None
) -> DerivativeIdentityReport:
    """Check G'_m(c) * chi(0) = (1-D) * chi(1) at one center.

    The left side comes from the coupled orbit iteration, the right side
    from the assembled quotient polynomial; the two pipelines share only
    the center coordinate.
    """
    if result is None:
        result = chi2_from_orbit(record)
    D = record.degree
    c = record.center_complex()
    _, gprime = eval_gm(D, record.period, c)
    chi0 = result.chi_coeffs[0]
    chi1 = sum(result.chi_coeffs)
    lhs = gprime * chi0
    rhs = (1 - D) * chi1
    rel = abs(lhs - rhs) / abs(lhs)
    return DerivativeIdentityReport(
        lhs=complex(lhs), rhs=complex(rhs), rel_err=float(rel), passed=rel <= 1e-8
    )


# -- pushforward matrices ------------------------------------------------


def build_matrix_explicit(record: CenterRecord) -> PushforwardMatrix:
    """The two-entry-per-column matrix of the pushforward in the orbit basis.

    Column 0 (the critical point) is zero; column n sends the basis
    differential at zeta_n to (1/delta_n) times the one at zeta_{n+1 mod m}
    minus (1/delta_n) times the one at zeta_1.
    """
    m = record.period
    entries = np.zeros((m, m), complex)
    for n in range(1, m):
        a = 1.0 / complex(record.deltas[n - 1])
        entries[(n + 1) % m, n] += a
        entries[1 % m, n] -= a
    return PushforwardMatrix(
        degree=record.degree,
        parameter=record.center_complex(),
        labels=tuple(record.orbit_complex()),
        entries=entries,
    )


def charpoly_structural(pm: PushforwardMatrix) -> np.ndarray:
    """Characteristic polynomial read off the two-entry column structure.

    Expansion along the columns gives lambda^m + sum_k (1/Delta_k)
    lambda^{m-k} with 1/Delta_k the running product of the subdiagonal
    entries; returned ascending, length m+1.
    """
    m = pm.entries.shape[0]
    coeffs = np.zeros(m + 1, complex)
    coeffs[m] = 1.0
    prod = 1.0 + 0j
    for k in range(1, m):
        prod *= pm.entries[(k + 1) % m, k]
        coeffs[m - k] = prod
    coeffs[0] = 0.0
    return coeffs


def _contour_residue(
    func, center: complex, radius: float, n_nodes: int
) -> complex:
    """Residue of func at center via the trapezoid rule on a small circle."""
    theta = 2 * np.pi * (np.arange(n_nodes) + 0.5) / n_nodes
    z = center + radius * np.exp(1j * theta)
    vals = func(z) * (z - center)
    return complex(np.mean(vals))


def build_matrix_residues(
    D: int,
    c: complex,
    postcritical_orbit,
    n_nodes: int = 256,
    radius_factor: float = 1e-2,
    match_tol: float = 1e-7,
) -> PushforwardMatrix:
    """Pushforward matrix by direct residue bookkeeping, no orbit algebra.

    Entry (y, x) sums the residues of 1/((z - x) f'(z)) over the preimages
    w of y that are critical or equal to x; preimages come from D-th roots
    of y - c and each residue is a numerical contour integral.  Serves as
    an independent oracle for build_matrix_explicit.
    """
    orbit = [complex(z) for z in postcritical_orbit]
    m = len(orbit)
    c = complex(c)
    entries = np.zeros((m, m), complex)
    for row, y in enumerate(orbit):
        # the D preimages of y (0 with multiplicity D when y = c)
        w0 = y - c
        if abs(w0) < 1e-300:
            pre = [0j]
        else:
            r = abs(w0) ** (1.0 / D)
            phi = cmath.phase(w0)
            pre = [
                r * cmath.exp(1j * (phi + 2 * math.pi * k) / D) for k in range(D)
            ]
        for col, x in enumerate(orbit):

            def integrand(z, x=x):
                return 1.0 / ((z - x) * D * z ** (D - 1))

            # column 0 is the critical point itself; its pole set collapses
            poles = [0j] if col == 0 else [0j, x]
            total = 0j
            for w in pre:
                critical = abs(w) < match_tol
                at_x = col != 0 and abs(w - x) < match_tol
                if not (critical or at_x):
                    continue
                anchor = 0j if critical else x
                others = [p for p in poles if abs(p - anchor) > match_tol]
                sep = min((abs(anchor - p) for p in others), default=math.inf)
                radius = radius_factor * sep if math.isfinite(sep) else 1e-3
                while sep < 4 * radius:
                    radius *= 0.25
                    if radius < 1e-12:
                        raise ContourTooClose(
                            f"poles {anchor} and nearest at distance {sep}"
                        )
                total += _contour_residue(integrand, anchor, radius, n_nodes)
            entries[row, col] = total
    return PushforwardMatrix(
        degree=D, parameter=c, labels=tuple(orbit), entries=entries
    )
