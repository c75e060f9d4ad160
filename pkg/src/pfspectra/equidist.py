"""Spectral equidistribution along center sequences.

Centers whose critical orbit falls onto a repelling fixed point after a
short preperiod admit nearby centers of every larger period, converging
geometrically to the anchor parameter.  Scaling each period-m spectrum by
the fixed-point multiplier mu sends the eigenvalues near the unit circle;
as m grows the scaled spectra should fill the circle uniformly.  This
module generates such center sequences and measures the convergence with
Fourier moments and radial statistics, accepting on a negative
least-squares trend rather than an absolute threshold, since no
quantitative rate is available.
"""

import cmath
import dataclasses
import math

import numpy as np

from .dynamics import (
    CenterRecord,
    _polish_center,
    _record_from_center,
    eval_gm,
    storage_precision,
)
from .gleason import proper_divisors


class NoNearbyCenter(Exception):
    """Newton from the anchor failed to produce a valid period-m center."""

    def __init__(self, period: int, reason: str = ""):
        self.period = period
        msg = f"no certified center of period {period} near the anchor"
        super().__init__(msg + (f": {reason}" if reason else ""))


@dataclasses.dataclass(frozen=True)
class AnchorSpec:
    """A parameter whose critical orbit lands on a repelling fixed point.

    preperiod is the number of iterates of the critical point before the
    fixed point is reached: f^preperiod(0) = beta0 with f(beta0) = beta0.
    """

    degree: int
    c0: complex
    beta0: complex
    multiplier: complex
    preperiod: int


# Critical orbit 0 -> -2 -> 2 -> 2 -> ..., fixed point 2, multiplier 4:
# exact rational data, multiplier 2D, scaled circle radius 1/4.
ANCHOR_MINUS_TWO = AnchorSpec(
    degree=2, c0=-2 + 0j, beta0=2 + 0j, multiplier=4 + 0j, preperiod=2
)

# Documented but unsupported: at c0 = i the critical orbit lands on the
# period-2 cycle {-1+i, -i} rather than a fixed point, and cycle anchors
# are out of scope here.
CYCLE_ANCHOR_I = {"degree": 2, "c0": 1j, "cycle": (-1 + 1j, -1j)}


def validate_anchor(spec: AnchorSpec, tol: float = 1e-12) -> None:
    """Check the orbit, fixed point, and multiplier data of an anchor.

    Also checks that the scaled circle of radius 1/|mu| falls inside the
    spectral annulus (1/(4D), 1), so the equidistribution target is
    consistent with the gap bounds.
    """
    D = spec.degree
    if D < 2:
        raise ValueError("degree must be >= 2")
    if spec.preperiod < 1:
        raise ValueError("preperiod must be >= 1")
    z = 0j
    for _ in range(spec.preperiod):
        z = z**D + spec.c0
    if abs(z - spec.beta0) > tol:
        raise ValueError(
            f"critical orbit reaches {z} after {spec.preperiod} steps, "
            f"not the declared fixed point {spec.beta0}"
        )
    if abs(spec.beta0**D + spec.c0 - spec.beta0) > tol:
        raise ValueError("beta0 is not a fixed point")
    if abs(D * spec.beta0 ** (D - 1) - spec.multiplier) > tol:
        raise ValueError("multiplier does not equal the derivative at beta0")
    if abs(spec.multiplier) <= 1:
        raise ValueError("fixed point must be repelling")
    radius = 1.0 / abs(spec.multiplier)
    if not 1.0 / (4 * D) < radius < 1.0:
        raise ValueError(
            f"scaled circle radius {radius} falls outside the annulus"
        )


def _newton_double(D: int, m: int, start: complex, steps: int = 80):
    """Scalar double-precision Newton on the period-m orbit polynomial."""
    c = complex(start)
    for _ in range(steps):
        g, gp = eval_gm(D, m, c)
        if gp == 0:
            return None
        step = g / gp
        c -= step
        if abs(step) < 1e-15 * max(1.0, abs(c)):
            return c
    return c


def generate_center_sequence(
    anchor: AnchorSpec,
    periods,
    precision: int = 53,
    tol_residual: float = 1e-13,
    tol_period: float = 1e-6,
) -> list[CenterRecord]:
    """Certified period-m centers near the anchor, one per requested period.

    Newton starts at the anchor parameter itself and, if that attempt
    fails validation, retries from a ladder of small perturbations.  Each
    result must have the exact requested period, certified residual, and
    sit within 0.5 of the anchor.
    """
    validate_anchor(anchor)
    D = anchor.degree
    out = []
    for m in periods:
        if m < anchor.preperiod + 1:
            raise NoNearbyCenter(
                m, f"period must exceed the preperiod {anchor.preperiod}"
            )
        rec = _center_near(anchor, m, precision, tol_residual, tol_period)
        out.append(rec)
    return out


def _center_near(anchor, m, precision, tol_residual, tol_period):
    D = anchor.degree
    offsets = [0.0 + 0j]
    for mag in (1e-8, 1e-5, 1e-3):
        for k in range(4):
            offsets.append(mag * cmath.exp(2j * math.pi * (k + 0.3) / 4))
    prec = storage_precision(D, m, precision)
    extended = m > 14 or precision > 53
    reason = "Newton did not converge"
    for off in offsets:
        try:
            c = _newton_double(D, m, anchor.c0 + off)
        except OverflowError:
            continue
        if c is None or abs(c - anchor.c0) > 0.5:
            reason = "Newton left the anchor neighborhood"
            continue
        ok = True
        for d in proper_divisors(m):
            try:
                gd, _ = eval_gm(D, d, c)
            except OverflowError:
                continue
            if abs(gd) <= tol_period:
                ok = False
                reason = f"landed on a period-{d} center"
                break
        if not ok:
            continue
        polished = _polish_center(D, m, c, prec)
        if polished is None:
            reason = "high-precision polish failed"
            continue
        c_hi, residual = polished
        if residual > tol_residual:
            reason = f"residual {residual} above tolerance"
            continue
        return _record_from_center(D, m, c_hi, residual, extended, prec)
    raise NoNearbyCenter(m, reason)


@dataclasses.dataclass(frozen=True)
class EmpiricalMeasure:
    """Scaled-eigenvalue samples with their circle statistics.

    samples hold nu = mu * lambda pooled over the input spectra; fourier
    maps k to the moment mean(nu^k) for |k| <= max_mode; the radial stats
    are the mean and standard deviation of |nu|.
    """

    samples: tuple
    fourier: dict
    radial_mean: float
    radial_dev: float

    @property
    def max_moment(self) -> float:
        return max(abs(v) for k, v in self.fourier.items() if k != 0)

    @property
    def radial_rms_around_one(self) -> float:
        # parallel-axis identity: E[(x-1)^2] = Var(x) + (E[x]-1)^2
        return math.sqrt(
            self.radial_dev**2 + (self.radial_mean - 1.0) ** 2
        )


def empirical_measure(spectra, multiplier: complex, max_mode: int = 10):
    """Moments and radial statistics of the multiplier-scaled spectra."""
    spectra = list(spectra)
    if not spectra:
        raise ValueError("need at least one spectrum")
    nu = np.concatenate(
        [multiplier * np.array(s.eigenvalues) for s in spectra]
    )
    fourier = {
        k: complex(np.mean(nu**k)) for k in range(-max_mode, max_mode + 1)
    }
    radii = np.abs(nu)
    return EmpiricalMeasure(
        samples=tuple(complex(z) for z in nu),
        fourier=fourier,
        radial_mean=float(np.mean(radii)),
        radial_dev=float(np.std(radii)),
    )


@dataclasses.dataclass(frozen=True)
class EquidistributionReport:
    """Per-period circle statistics and their least-squares trends."""

    periods: tuple
    max_moments: tuple
    radial_deviations: tuple
    moment_slope: float
    radial_slope: float
    passed: bool


def _lsq_slope(x: np.ndarray, y: np.ndarray) -> float:
    """Least-squares slope with sub-rounding values snapped to zero.

    Constant data must report an exact zero slope, not fit noise.
    """
    xc = x - x.mean()
    s = float(np.sum(xc * (y - y.mean())) / np.sum(xc * xc))
    floor = 1e-12 * max(float(np.max(np.abs(y))), 1e-300)
    floor /= max(float(x.max() - x.min()), 1.0)
    return 0.0 if abs(s) < floor else s


def equidistribution_test(measures_by_period) -> EquidistributionReport:
    """Trend acceptance over an increasing sequence of periods.

    measures_by_period is a sequence of (period, EmpiricalMeasure).  The
    report passes iff both the worst Fourier moment and the radial spread
    around the unit circle have strictly negative least-squares slope.
    """
    pairs = sorted(measures_by_period, key=lambda t: t[0])
    if len(pairs) < 2:
        raise ValueError("trend needs at least two periods")
    periods = np.array([p for p, _ in pairs], dtype=float)
    moments = np.array([meas.max_moment for _, meas in pairs])
    radial = np.array([meas.radial_rms_around_one for _, meas in pairs])
    moment_slope = _lsq_slope(periods, moments)
    radial_slope = _lsq_slope(periods, radial)
    return EquidistributionReport(
        periods=tuple(int(p) for p in periods),
        max_moments=tuple(float(x) for x in moments),
        radial_deviations=tuple(float(x) for x in radial),
        moment_slope=moment_slope,
        radial_slope=radial_slope,
        passed=moment_slope < 0 and radial_slope < 0,
    )


def run_experiment(
    anchor: AnchorSpec, periods, precision: int = 53, max_mode: int = 10
):
    """Full pipeline: centers, spectra, measures, and the trend report.

    Returns (records, measures_by_period, report).
    """
    from .spectrum import solve_spectrum, chi2_from_orbit

    records = generate_center_sequence(anchor, periods, precision=precision)
    measures = []
    for rec in records:
        res = solve_spectrum(chi2_from_orbit(rec))
        measures.append(
            (rec.period, empirical_measure([res], anchor.multiplier, max_mode))
        )
    report = equidistribution_test(measures)
    return records, measures, report
