"""Critical orbits, center enumeration, and periodic cycles for z^D + c.

The orbit polynomials G_m are never expanded here: everything is evaluated
through the coupled iteration

    g   <- g^D + c
    g'  <- D g^(D-1) g' + 1

starting from (0, 0), which is numerically stable on the parameter region
of interest (all bounded orbits satisfy |z|^(D-1) <= 2).

Center enumeration is Newton's method on G_m from quasi-random starts in
the disk |c| <= 2^(1/(D-1)), restarted until the count matches the exact
Mobius count of period-m centers; the count is the completeness oracle, a
mismatch is an error rather than a truncation.  Found centers are polished
and stored at extended precision: a center rounded to 53 bits generally
cannot certify |G_m(c)| <= 1e-13 once the orbit derivative products reach
1e3, so the stored value carries enough bits that the certified residual
is meaningful for every period we enumerate.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import mpmath
import numpy as np

from ._mpsync import MP_LOCK
from .gleason import divisors, h_degree, mobius, proper_divisors


class IncompleteEnumeration(RuntimeError):
    """An enumeration finished with a count different from the exact oracle."""

    def __init__(self, found: int, expected: int, what: str):
        super().__init__(f"{what}: found {found}, expected {expected}")
        self.found = found
        self.expected = expected


@dataclass(frozen=True)
class SearchConfig:
    """Tolerances and budgets for the numerical searches.

    tol_residual   final certified bound on |G_m(c)| at a reported center
    tol_dedup      centers closer than this are considered identical
    tol_period     |G_d(c)| below this for a proper divisor d rejects c
    tol_bound      slack on the escape bound |z|^(D-1) <= 2
    """

    tol_residual: float = 1e-13
    tol_dedup: float = 1e-9
    tol_period: float = 1e-6
    tol_bound: float = 1e-6
    escape_radius: float = 4.0
    precision: int = 53
    max_rounds: int = 48
    oversample: int = 8
    newton_steps: int = 72
    seed: int = 20260819


DEFAULT_CONFIG = SearchConfig()

# iterates beyond this magnitude are frozen inside the vectorized search;
# the escape test (|g| > 4 certifies a non-center) is applied to final
# candidates, but freezing mid-search at 4 would stall far starts


def _freeze_bound(D: int) -> float:
    # keep g**D finite in double precision
    return min(1e60, 10.0 ** (280.0 / D))


def storage_precision(D: int, m: int, precision: int = 53) -> int:
    """Bits needed so a stored center can certify residuals at 1e-13.

    Position error 2^-prec is amplified by |G_m'| <= (2D)^(m-1) in the
    residual, so the precision grows linearly with the period.
    """
    need = 60 + int(m * math.log2(2 * D)) + 40
    return max(106, precision, need)


def eval_gm(D: int, m: int, c):
    """(G_m(c), G_m'(c)) for a scalar c (complex or mpmath.mpc).

    Raises OverflowError as soon as |G_k(c)| > 4 for some k <= m: such a
    parameter escapes and is certainly not a center.
    """
    g = c * 0
    gp = c * 0
    for _ in range(m):
        gp = D * g ** (D - 1) * gp + 1
        g = g ** D + c
        if abs(g) > 4:
            raise OverflowError(f"orbit escaped: |G_k(c)| = {abs(g)} > 4")
    return g, gp


def _eval_gm_np(D: int, m: int, c: np.ndarray):
    """Vectorized (G_m, G_m') with escaped entries frozen at their escape state.

    Escaping entries may overflow to inf/nan in the step that freezes them;
    those values are never used, so the fp warnings are suppressed.
    """
    g = np.zeros_like(c)
    gp = np.zeros_like(c)
    alive = np.ones(c.shape, dtype=bool)
    freeze = _freeze_bound(D)
    with np.errstate(over="ignore", invalid="ignore"):
        for _ in range(m):
            gp_new = D * g ** (D - 1) * gp + 1
            g_new = g ** D + c
            np.copyto(g, g_new, where=alive)
            np.copyto(gp, gp_new, where=alive)
            alive &= np.abs(g) <= freeze
    return g, gp


def _newton_gm(
    D: int, m: int, starts: np.ndarray, steps: int, tol: float = 1e-11
) -> np.ndarray:
    """Damped Newton iteration for roots of G_m from an array of starts.

    Converged points leave the active set early, so generous step budgets
    only cost time on the points that still move.
    """
    c = np.array(starts, dtype=complex)
    active = np.arange(c.size)
    for _ in range(steps):
        ca = c[active]
        g, gp = _eval_gm_np(D, m, ca)
        gp = np.where(gp == 0, 1e-300, gp)
        step = g / gp
        mag = np.abs(step)
        big = mag > 1.0
        step[big] /= mag[big]
        ca = ca - step
        c[active] = ca
        keep = (np.abs(g) > tol) & np.isfinite(ca)
        active = active[keep]
        if active.size == 0:
            break
    return c


def _grid_dedup(points: np.ndarray, tol: float, seed_keys=None):
    """First-occurrence dedup on a tol-grid with neighbor-cell checks.

    Returns (unique points, key set); pass a previous key set to treat its
    points as already present.
    """
    keys = set() if seed_keys is None else set(seed_keys)
    out = []
    inv = 1.0 / tol
    for z in points:
        kx = int(round(z.real * inv))
        ky = int(round(z.imag * inv))
        hit = False
        for dx in (-1, 0, 1):
            for dy in (-1, 0, 1):
                if (kx + dx, ky + dy) in keys:
                    hit = True
                    break
            if hit:
                break
        if not hit:
            keys.add((kx, ky))
            out.append(z)
    return np.array(out, dtype=complex), keys


def _polish_center(D: int, m: int, c0: complex, prec: int):
    """High-precision Newton polish; returns (mpc center, residual) or None."""
    with MP_LOCK, mpmath.workprec(prec + 30):
        c = mpmath.mpc(c0)
        try:
            for _ in range(10):
                g, gp = eval_gm(D, m, c)
                if gp == 0:
                    return None
                step = g / gp
                c -= step
                if abs(step) < mpmath.mpf(2) ** (-prec - 10):
                    break
            g, _ = eval_gm(D, m, c)
        except OverflowError:
            return None
        residual = float(abs(g))
        c = mpmath.mpc(mpmath.mpf(c.real), mpmath.mpf(c.imag))
    return c, residual


@dataclass(frozen=True)
class CenterRecord:
    """A certified center c (critical point periodic of exact period m).

    center is stored at extended precision (mpmath.mpc); orbit data is kept
    at the working precision of the record (complex for periods where 53
    bits carry the derivative products, mpc beyond).
    """

    degree: int
    period: int
    center: object  # mpmath.mpc
    residual: float
    orbit: tuple  # zeta_0 .. zeta_{m-1}
    deltas: tuple  # delta_1 .. delta_{m-1}
    big_deltas: tuple  # Delta_1 .. Delta_{m-1} (forward products)
    big_deltas_neg: tuple  # Delta_{-1} .. Delta_{-(m-1)} (reverse products)

    def center_complex(self) -> complex:
        return complex(self.center)

    def orbit_complex(self) -> np.ndarray:
        return np.array([complex(z) for z in self.orbit])


def _record_from_center(
    D: int, m: int, c, residual: float, extended: bool, prec: int = 53
) -> CenterRecord:
    """Build the orbit/derivative data for a polished center."""
    if extended:
        with MP_LOCK, mpmath.workprec(prec):
            orbit = [c * 0]
            for _ in range(m - 1):
                orbit.append(orbit[-1] ** D + c)
            deltas = [D * z ** (D - 1) for z in orbit[1:]]
            big = []
            acc = 1
            for d in deltas:
                acc = acc * d
                big.append(acc)
            neg = []
            acc = 1
            for d in reversed(deltas):
                acc = acc * d
                neg.append(acc)
    else:
        cc = complex(c)
        orbit = [0j]
        for _ in range(m - 1):
            orbit.append(orbit[-1] ** D + cc)
        deltas = [D * z ** (D - 1) for z in orbit[1:]]
        big = []
        acc = 1
        for d in deltas:
            acc = acc * d
            big.append(acc)
        neg = []
        acc = 1
        for d in reversed(deltas):
            acc = acc * d
            neg.append(acc)
    return CenterRecord(
        degree=D,
        period=m,
        center=c,
        residual=residual,
        orbit=tuple(orbit),
        deltas=tuple(deltas),
        big_deltas=tuple(big),
        big_deltas_neg=tuple(neg),
    )


def escape_bound_check(record: CenterRecord, config: SearchConfig = DEFAULT_CONFIG) -> bool:
    """All orbit points (and c itself) obey |z|^(D-1) <= 2 within tolerance."""
    D = record.degree
    tol = config.tol_bound
    pts = list(record.orbit_complex()) + [record.center_complex()]
    return all(abs(z) ** (D - 1) <= 2 + tol for z in pts)


# Kronecker additive-recurrence constants (2d low-discrepancy sequence)
_QR_A = 0.7548776662466927
_QR_B = 0.5698402909980532


def _quasi_disk(n: int, radius: float, off_a: float, off_b: float) -> np.ndarray:
    """Low-discrepancy points in the disk of the given radius."""
    idx = np.arange(1, n + 1, dtype=float)
    u = np.mod(off_a + idx * _QR_A, 1.0)
    v = np.mod(off_b + idx * _QR_B, 1.0)
    return radius * np.sqrt(u) * np.exp(2j * np.pi * v)


def _quasi_annulus(n: int, radius: float, off_a: float, off_b: float) -> np.ndarray:
    """Low-discrepancy points in the annulus 0.7r..1.05r near the boundary."""
    idx = np.arange(1, n + 1, dtype=float)
    u = np.mod(off_a + idx * _QR_A, 1.0)
    v = np.mod(off_b + idx * _QR_B, 1.0)
    r = radius * (0.70 + 0.35 * u)
    return r * np.exp(2j * np.pi * v)


def _line_batch(D: int, n: int, radius: float, off: float) -> np.ndarray:
    """Starts on the symmetry axes of the center set.

    Centers sitting on these axes have paper-thin 2d Newton basins but are
    dense along the lines themselves, so 1d sampling picks them up cheaply.
    The axes are the fixed lines of conjugation composed with the rotational
    symmetry c -> exp(2 pi i/(D-1)) c.
    """
    n_lines = max(D - 1, 1)
    per = max(n // n_lines, 16)
    idx = np.arange(1, per + 1, dtype=float)
    t = (np.mod(off + idx * _QR_A, 1.0) * 2.0 - 1.0) * radius * 1.02
    chunks = []
    for k in range(n_lines):
        phase = np.exp(1j * np.pi * k / n_lines)
        chunks.append(t * phase)
    return np.concatenate(chunks)


def _cloud_batch(
    rng, base: np.ndarray, per_point: int, r_min: float, r_max: float
) -> np.ndarray:
    """Log-radial clouds around already-found centers.

    Missing roots sit next to found ones at distances spanning many orders
    of magnitude (satellite clusters, geometric pile-ups at landing points),
    so the cloud radius is drawn log-uniformly: every scale gets the same
    share of samples per round.
    """
    reps = np.repeat(base, per_point)
    u = rng.random(reps.size)
    r = r_max * (r_min / r_max) ** u
    th = 2 * np.pi * rng.random(reps.size)
    return reps + r * np.exp(1j * th)


@lru_cache(maxsize=None)
def _tip_distance(D: int) -> float:
    """Distance from 0 to the spike tips of the degree-D parameter region.

    Along each spike ray the dynamics restricts to the real family
    y -> t - y^D; the tip is the supremum of t with bounded critical orbit.
    For even D this is 2^(1/(D-1)) exactly; odd D has no closed form here.
    """
    if D % 2 == 0:
        return 2.0 ** (1.0 / (D - 1))

    def bounded(t: float) -> bool:
        y = 0.0
        for _ in range(2500):
            y = t - y**D
            if abs(y) > 4.0:
                return False
        return True

    lo, hi = 0.25, 2.5
    for _ in range(120):
        mid = 0.5 * (lo + hi)
        if bounded(mid):
            lo = mid
        else:
            hi = mid
    return lo


def _tip_batch(D: int, m: int, rng) -> np.ndarray:
    """Log-spaced starts converging on the spike tips.

    Period-m centers accumulate geometrically at the tips with spacing down
    to ~(2D)^-m, far below anything uniform sampling can hit, so offsets
    from each tip are drawn log-uniformly down past that scale.  Half the
    points stay exactly on the spike ray (keeping Newton on the invariant
    line), half get transverse jitter proportional to their depth.
    """
    t_star = _tip_distance(D)
    s_max = 0.6 * t_star
    s_min = min(2e-3 * (2.0 * D) ** (-m), 1e-4)
    n_per = max(256, 100 * m)
    chunks = []
    for k in range(D - 1):
        ray = np.exp(1j * np.pi * (2 * k + 1) / (D - 1))
        u = np.mod(rng.random() + np.arange(1, n_per + 1) * _QR_A, 1.0)
        s = s_max * (s_min / s_max) ** u
        half = n_per // 2
        jitter = np.zeros(n_per)
        jitter[half:] = 0.4 * (2.0 * rng.random(n_per - half) - 1.0)
        chunks.append((t_star - s) * ray + 1j * ray * jitter * s)
    return np.concatenate(chunks)


def find_centers(D: int, m: int, config: SearchConfig = DEFAULT_CONFIG) -> list[CenterRecord]:
    """All centers of exact period m, sorted by (re, im).

    Completeness is certified by the Mobius count; the search restarts with
    fresh quasi-random batches (plus conjugation / rotation symmetry seeds)
    until the count is hit, and raises IncompleteEnumeration otherwise.
    """
    if D < 2:
        raise ValueError("degree must be >= 2")
    if m < 1:
        raise ValueError("period must be >= 1")
    expected = h_degree(D, m)
    radius = 2.0 ** (1.0 / (D - 1))
    rng = np.random.default_rng([config.seed, D, m])
    prec = storage_precision(D, m, config.precision)
    extended = m > 14 or config.precision > 53
    proper = proper_divisors(m)

    found: list = []  # (complex approx, mpc value, residual)
    keys = set()
    n_starts = max(config.oversample * expected, 128)
    # the double-precision residual floor at a true root scales like the
    # derivative (2D)^m times one ulp, so the coarse filter must track it
    coarse_tol = max(1e-8, config.tol_residual * 1e3, 8.0 * (2.0 * D) ** m * 2.0**-52)
    spacing = radius / math.sqrt(max(expected, 1))
    cloud_floor = max(1e-13, 2e-3 * (2.0 * D) ** (-m))

    for round_no in range(config.max_rounds):
        pieces = [
            _quasi_disk(n_starts, radius, rng.random(), rng.random()),
            _quasi_annulus(n_starts // 2, radius, rng.random(), rng.random()),
            _line_batch(D, 4 * expected, radius, rng.random()),
            _tip_batch(D, m, rng),
        ]
        if found:
            base = np.array([f[0] for f in found])
            # symmetry seeds: conjugates and omega-rotations of found centers
            sym = [np.conj(base)]
            for k in range(1, D - 1):
                w = np.exp(2j * np.pi * k / (D - 1))
                sym.append(base * w)
                sym.append(np.conj(base) * w)
            pieces.extend(sym)
            # local clouds: stragglers sit next to centers already found
            pieces.append(_cloud_batch(rng, base, 8, cloud_floor, 2.0 * spacing))
        starts = np.concatenate(pieces)
        ends = _newton_gm(D, m, starts, config.newton_steps)
        g, _ = _eval_gm_np(D, m, ends)
        cands = ends[np.abs(g) <= coarse_tol]
        cands = cands[np.abs(cands) <= radius + 0.25]
        if cands.size:
            # reject lower exact periods before the expensive polish
            mask = np.ones(cands.size, dtype=bool)
            for d in proper:
                gd, _ = _eval_gm_np(D, d, cands.copy())
                mask &= np.abs(gd) > config.tol_period
            cands = cands[mask]
        new_pts, _ = _grid_dedup(cands, config.tol_dedup, keys)
        inv = 1.0 / config.tol_dedup
        for z in new_pts:
            polished = _polish_center(D, m, complex(z), prec)
            if polished is None:
                continue
            c_hi, residual = polished
            if residual > config.tol_residual:
                continue
            # dedup on the polished position: the rough candidate can sit
            # further from the root than a dedup cell when |G'| is small
            zp = complex(c_hi)
            kx = int(round(zp.real * inv))
            ky = int(round(zp.imag * inv))
            if any(
                (kx + dx, ky + dy) in keys
                for dx in (-1, 0, 1)
                for dy in (-1, 0, 1)
            ):
                continue
            found.append((zp, c_hi, residual))
            keys.add((kx, ky))
        if len(found) >= expected:
            break
        n_starts = min(int(n_starts * 3 // 2), 300_000)

    if len(found) != expected:
        raise IncompleteEnumeration(
            len(found), expected, f"degree-{D} period-{m} centers"
        )
    found.sort(key=lambda t: (complex(t[1]).real, complex(t[1]).imag))
    records = []
    for _, c_hi, residual in found:
        rec = _record_from_center(D, m, c_hi, residual, extended, prec)
        records.append(rec)
    return records


# -- periodic cycles ----------------------------------------------------


@dataclass(frozen=True)
class CycleRecord:
    """A periodic cycle of f_c with its multiplier and derived eigenvalues.

    eigenvalues are the period-th roots of 1/multiplier; empty for the
    postcritical cycle (the one containing the critical point).
    """

    degree: int
    parameter: complex
    period: int
    points: tuple
    multiplier: complex
    postcritical: bool
    eigenvalues: tuple


def _eval_fn_np(D: int, c: complex, n: int, z: np.ndarray):
    """f^n(z) - z and its derivative, vectorized with freezing."""
    w = z.copy()
    dw = np.ones_like(z)
    alive = np.ones(z.shape, dtype=bool)
    freeze = _freeze_bound(D)
    with np.errstate(over="ignore", invalid="ignore"):
        for _ in range(n):
            dw_new = D * w ** (D - 1) * dw
            w_new = w ** D + c
            np.copyto(w, w_new, where=alive)
            np.copyto(dw, dw_new, where=alive)
            alive &= np.abs(w) <= freeze
    return w - z, dw - 1


def _accept_converged(D: int, c: complex, n: int, z: np.ndarray) -> np.ndarray:
    """Keep only machine-converged fixed points of f^n.

    The step bound |F/dF| <= 1e-11 rejects iterates that merely sit in a
    flat region where |F| is small but the distance to the root is not;
    without it stagnated points masquerade as extra roots near dedup scale.
    """
    F, dF = _eval_fn_np(D, c, n, z)
    dF = np.where(dF == 0, 1e-300, dF)
    ok = (np.abs(F) <= 1e-9) & (np.abs(F / dF) <= 1e-11)
    return z[ok]


def _plain_newton_round(D: int, c: complex, n: int, starts, steps: int):
    z = starts.astype(complex)
    for _ in range(steps):
        F, dF = _eval_fn_np(D, c, n, z)
        dF = np.where(dF == 0, 1e-300, dF)
        step = F / dF
        mag = np.abs(step)
        big = mag > 1.0
        step[big] /= mag[big]
        z -= step
    return _accept_converged(D, c, n, z)


def _deflated_newton_round(D: int, c: complex, n: int, found, starts, steps: int):
    """Maehly-deflated Newton: repel iterates from every root already found.

    Steps use F / (dF - F * sum 1/(z - r)), which removes the found roots'
    basins, so the handful of unreached roots (tiny plain-Newton basins near
    high-derivative regions) attract almost every start.  Chunked to bound
    the starts-by-found broadcast.
    """
    out = []
    for i in range(0, starts.size, 512):
        z = starts[i : i + 512].astype(complex)
        with np.errstate(divide="ignore", invalid="ignore"):
            for _ in range(steps):
                F, dF = _eval_fn_np(D, c, n, z)
                S = (1.0 / (z[:, None] - found[None, :])).sum(axis=1)
                g = dF - F * S
                g = np.where(np.isfinite(g), g, 1e300)
                g = np.where(g == 0, 1e-300, g)
                step = F / g
                step = np.where(np.isfinite(step), step, 0.0)
                mag = np.abs(step)
                big = mag > 1.0
                step[big] /= mag[big]
                z -= step
        for _ in range(3):
            F, dF = _eval_fn_np(D, c, n, z)
            dF = np.where(dF == 0, 1e-300, dF)
            z -= F / dF
        out.append(_accept_converged(D, c, n, z))
    return np.concatenate(out)


def _backward_words_round(D: int, c: complex, n: int, n_iters: int = 96):
    """One candidate per inverse-branch word of length n.

    Every period-n point is the limit of iterating its own word of inverse
    branches z -> omega_j (z - c)^(1/D) (the branches contract near the
    Julia set, where all the periodic points live), so running all D^n
    words as one array enumerates the roots nearly exhaustively; only
    branch-cut collisions and critically-periodic orbits collapse words.
    A short Newton polish finishes each limit to machine precision.
    """
    total = D ** n
    digits = np.empty((n, total), dtype=np.int64)
    tmp = np.arange(total)
    for k in range(n):
        digits[k] = tmp % D
        tmp //= D
    branch = np.exp(2j * np.pi * np.arange(D) / D)[digits]
    z = np.full(total, 0.61 + 0.43j, dtype=complex)
    inv = 1.0 / D
    with np.errstate(divide="ignore", invalid="ignore"):
        for _ in range(n_iters):
            for k in range(n):
                w = z - c
                z = np.abs(w) ** inv * np.exp(1j * np.angle(w) * inv) * branch[k]
    for _ in range(6):
        F, dF = _eval_fn_np(D, c, n, z)
        dF = np.where(dF == 0, 1e-300, dF)
        z -= F / dF
    return _accept_converged(D, c, n, z)


def _periodic_points(D: int, c: complex, n: int, config: SearchConfig) -> np.ndarray:
    """All D^n fixed points of f^n, certified by count.

    The word round supplies nearly every root structurally; random-start
    Newton rounds mop up while their yield keeps pace with the deficit,
    after which deflated rounds hunt the last tiny-basin roots.
    """
    target = D ** n
    rng = np.random.default_rng([config.seed, 7919, D, n])
    radius = 2.0 ** (1.0 / (D - 1))
    pts, keys = _grid_dedup(_backward_words_round(D, c, n), config.tol_dedup, set())
    stalled = False
    for _ in range(config.max_rounds):
        if pts.size >= target:
            break
        deficit = target - pts.size
        if not stalled or not pts.size:
            nn = 4 * target
            r = (radius + 0.1) * np.sqrt(rng.random(nn))
            starts = r * np.exp(2j * np.pi * rng.random(nn))
            good = _plain_newton_round(D, c, n, starts, config.newton_steps)
        else:
            nn = min(4096, max(512, 8 * deficit))
            r = (radius + 0.1) * np.sqrt(rng.random(nn))
            starts = r * np.exp(2j * np.pi * rng.random(nn))
            good = _deflated_newton_round(D, c, n, pts, starts, 48)
        new_pts, keys = _grid_dedup(good, config.tol_dedup, keys)
        if new_pts.size:
            pts = np.concatenate([pts, new_pts])
        if not stalled and 8 * new_pts.size < deficit:
            stalled = True
    if pts.size != target:
        raise IncompleteEnumeration(
            int(pts.size), target, f"period-{n} points of f^{n} at c = {c}"
        )
    return pts


def find_cycles(
    D: int, c: complex, n_max: int, config: SearchConfig = DEFAULT_CONFIG
) -> list[CycleRecord]:
    """All cycles of period <= n_max, grouped from the period-n point sets.

    Exact-period-n points are the fixed points of f^n not already seen at a
    proper divisor period; their count must match the Mobius convolution of
    D^d, which certifies completeness.  A cycle through the critical point
    (within tolerance) is flagged postcritical and contributes no
    eigenvalues; every other cycle at a postcritically finite parameter is
    repelling and contributes the period-th roots of 1/multiplier.
    """
    c = complex(c)
    lower: dict[int, np.ndarray] = {}
    records: list[CycleRecord] = []
    for n in range(1, n_max + 1):
        pts = _periodic_points(D, c, n, config)
        mask = np.ones(pts.size, dtype=bool)
        for d in proper_divisors(n):
            prev = lower[d]
            if prev.size:
                dist = np.abs(pts[:, None] - prev[None, :]).min(axis=1)
                mask &= dist > 10 * config.tol_dedup
        exact = pts[mask]
        expected = sum(mobius(n // d) * D ** d for d in divisors(n))
        if exact.size != expected:
            raise IncompleteEnumeration(
                int(exact.size), expected, f"exact-period-{n} points at c = {c}"
            )
        lower[n] = pts
        # group into cycles by following the dynamics
        remaining = exact.copy()
        used = np.zeros(remaining.size, dtype=bool)
        order = np.lexsort((remaining.imag, remaining.real))
        for idx in order:
            if used[idx]:
                continue
            cycle = [remaining[idx]]
            used[idx] = True
            z = remaining[idx]
            for _ in range(n - 1):
                z = z ** D + c
                j = int(np.argmin(np.abs(remaining - z)))
                cycle.append(remaining[j])
                used[j] = True
            mult = 1.0 + 0j
            for z in cycle:
                mult *= D * z ** (D - 1)
            post = bool(min(abs(z) for z in cycle) < 1e-7)
            if post or abs(mult) == 0:
                eig = ()
            else:
                inv = 1.0 / mult
                rho = abs(inv) ** (1.0 / n)
                phi = math.atan2(inv.imag, inv.real)
                eig = tuple(
                    rho * np.exp(1j * (phi + 2 * np.pi * k) / n) for k in range(n)
                )
                eig = tuple(sorted(eig, key=lambda t: (t.real, t.imag)))
            records.append(
                CycleRecord(
                    degree=D,
                    parameter=c,
                    period=n,
                    points=tuple(cycle),
                    multiplier=mult,
                    postcritical=post,
                    eigenvalues=eig,
                )
            )
    return records
