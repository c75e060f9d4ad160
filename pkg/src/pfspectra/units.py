"""Exact certificates that scaled eigenvalues are algebraic units.

For every period-m center of z^D + c the values nu = D*lambda, over all
eigenvalues lambda of the pushforward, are roots of a single integer
polynomial S_m built from the Gleason tower by a bivariate resultant.
Both the constant and the leading coefficient of S_m have modulus one,
so every root is an algebraic unit.  S_m carries a forced factorization

    S_m = (1 - nu)^(deg H_m) * U_m^(D-1),   U_m(0) = 1,

where the (1 - nu) factors come from the removable root lambda = 1/D of
each center's degree-(m-1) characteristic factor, and the power D-1 from
the parameter symmetry c -> omega*c (omega^(D-1) = 1), which permutes
centers without changing the spectrum.  U_m is recovered exactly by a
power-series root extraction and re-expanded to certify the factorization.
"""

import dataclasses

import mpmath
import numpy as np

from ._mpsync import MP_LOCK

from .exactpoly import (
    BivarPoly,
    IntPoly,
    exact_div,
    gcd,
    power_series_root,
    resultant_bivar,
)
from .gleason import GleasonTower, h_degree

# Exact resultants beyond these periods need very large Sylvester data;
# callers must opt in explicitly.
CERT_CEILING = {2: 7, 3: 5}


class CeilingExceeded(Exception):
    """Requested period is above the default exact-computation ceiling."""


class IncompleteSurvey(Exception):
    """Numeric cross-check requires the full set of period-m centers."""


@dataclasses.dataclass(frozen=True)
class UnitCertificate:
    """Exact unit proof for one (degree, period) pair.

    crosscheck is filled in by crosscheck_numeric: the largest distance
    from a numerically computed scaled eigenvalue to the nearest root of
    the exact unit polynomial.
    """

    degree: int
    period: int
    s_poly: IntPoly
    constant_coeff: int
    leading_coeff: int
    upsilon: IntPoly
    squarefree: bool
    crosscheck: float | None = None

    @property
    def unit_ok(self) -> bool:
        return self.constant_coeff == 1 and abs(self.leading_coeff) == 1


def build_R(tower: GleasonTower, m: int) -> BivarPoly:
    """Generating polynomial R(c, nu) of the reverse derivative products.

    The nu^n coefficient is the exact integer polynomial whose value at a
    period-m center equals Delta_{-n} / D^n: the product of the first n
    Gleason iterates below m, each raised to the power D - 1.
    """
    D = tower.degree
    gamma = IntPoly.one()
    coeffs = [gamma]
    for n in range(1, m):
        gamma = gamma * tower.g_poly(m - n) ** (D - 1)
        coeffs.append(gamma)
    return BivarPoly(coeffs)


def _ceiling_guard(D: int, m: int, force: bool) -> None:
    limit = CERT_CEILING.get(D, 3)
    if m <= limit or force:
        return
    nodes = h_degree(D, m) * (m - 1) + 1
    raise CeilingExceeded(
        f"degree {D} period {m} is above the default ceiling {limit}: "
        f"about {nodes} exact resultants of c-degree ~{h_degree(D, m)} "
        "polynomials with very large coefficients; pass force to proceed"
    )


def certify(tower: GleasonTower, m: int, force: bool = False) -> UnitCertificate:
    """Compute S_m exactly and certify the unit property and factorization.

    Raises CeilingExceeded above the supported size unless force is set.
    NonDivisible or NotAPower escaping this function would mean the
    factorization failed, which indicates an implementation error.
    """
    if m < 3:
        raise ValueError("certification needs period >= 3")
    D = tower.degree
    _ceiling_guard(D, m, force)
    h = tower.h_poly(m)
    s = resultant_bivar(h, build_R(tower, m))
    if s.degree != (m - 1) * h.degree:
        raise ArithmeticError(
            f"S has degree {s.degree}, expected {(m - 1) * h.degree}"
        )
    quotient = exact_div(s, IntPoly([1, -1]) ** h.degree)
    upsilon = power_series_root(quotient, D - 1)
    if IntPoly([1, -1]) ** h.degree * upsilon ** (D - 1) != s:
        raise ArithmeticError("factorization failed to re-expand")
    squarefree = gcd(upsilon, upsilon.derivative()).degree == 0
    return UnitCertificate(
        degree=D,
        period=m,
        s_poly=s,
        constant_coeff=s.constant(),
        leading_coeff=s.leading(),
        upsilon=upsilon,
        squarefree=squarefree,
    )


def upsilon3_closed_form(D: int) -> IntPoly:
    """The period-3 unit polynomial (nu+1)^(D+1) - nu^D, expanded."""
    if D < 2:
        raise ValueError("degree must be >= 2")
    return IntPoly([1, 1]) ** (D + 1) - IntPoly.monomial(D)


def _omega_orbits(records, D: int) -> list[list[int]]:
    """Partition center indices into orbits of c -> omega * c.

    omega is a primitive (D-1)-th root of unity; maps at parameters in the
    same orbit are affinely conjugate, so their spectra coincide.  For
    D = 2 every center is its own orbit.
    """
    k = D - 1
    centers = np.array([r.center_complex() for r in records])
    if k == 1:
        return [[i] for i in range(len(centers))]
    omega = complex(mpmath.root(1, k, 1))
    seen = [False] * len(centers)
    orbits = []
    for i in range(len(centers)):
        if seen[i]:
            continue
        orbit = [i]
        seen[i] = True
        z = centers[i]
        for _ in range(k - 1):
            z = z * omega
            j = int(np.argmin(np.abs(centers - z)))
            if seen[j] or abs(centers[j] - z) > 1e-9:
                raise ArithmeticError(
                    "rotation orbit of centers is not free; "
                    "multiplicity bookkeeping would be wrong"
                )
            seen[j] = True
            orbit.append(j)
        orbits.append(orbit)
    return orbits


def _polish_on_upsilon(upsilon: IntPoly, start: complex, prec: int):
    """High-precision Newton refinement of a root estimate of upsilon.

    Returns (root, last_step_size) at working precision prec.
    """
    coeffs = list(upsilon.coeffs)
    dcoeffs = list(upsilon.derivative().coeffs)
    with MP_LOCK, mpmath.workprec(prec):
        z = mpmath.mpc(start)
        step = mpmath.mpf(1)
        for _ in range(100):
            p = mpmath.mpc(0)
            for a in reversed(coeffs):
                p = p * z + a
            dp = mpmath.mpc(0)
            for a in reversed(dcoeffs):
                dp = dp * z + a
            if dp == 0:
                break
            delta = p / dp
            z -= delta
            step = abs(delta)
            if step < mpmath.mpf(2) ** (-prec // 2):
                break
        return z, float(step)


def crosscheck_numeric(cert: UnitCertificate, spectra) -> float:
    """Largest distance from a scaled eigenvalue to a root of exact U_m.

    spectra must cover every period-m center of the degree (spectrum
    results in any order); IncompleteSurvey otherwise.  One representative
    per rotation orbit supplies the distinct-eigenvalue multiset, which is
    matched point by point against high-precision roots of U_m seeded from
    the numeric values.  Completeness of the matching is certified by the
    root count together with pairwise distinctness (U_m squarefree), with
    an exact re-expansion comparison as a second check.  The factor
    {1, repeated deg H_m times} of S_m is already certified symbolically
    by the (1 - nu) power, so it needs no numeric counterpart.
    """
    D, m = cert.degree, cert.period
    expected = h_degree(D, m)
    if len(spectra) != expected:
        raise IncompleteSurvey(
            f"need all {expected} period-{m} centers, got {len(spectra)}"
        )
    records = [s.record for s in spectra]
    orbits = _omega_orbits(records, D)
    # spectra of rotation partners must agree: they are conjugate maps
    for orbit in orbits:
        base = np.sort_complex(np.array(spectra[orbit[0]].eigenvalues))
        for j in orbit[1:]:
            other = np.sort_complex(np.array(spectra[j].eigenvalues))
            if np.max(np.abs(base - other)) > 1e-8:
                raise ArithmeticError(
                    "rotation partners disagree on their spectra"
                )
    nus = [
        D * lam
        for orbit in orbits
        for lam in spectra[orbit[0]].eigenvalues
    ]
    if len(nus) != cert.upsilon.degree:
        raise IncompleteSurvey(
            f"{len(nus)} distinct scaled eigenvalues vs "
            f"unit polynomial degree {cert.upsilon.degree}"
        )
    coeff_bits = max(abs(a) for a in cert.upsilon.coeffs).bit_length()
    prec = coeff_bits + 256
    polished = []
    worst = 0.0
    for nu in nus:
        root, step = _polish_on_upsilon(cert.upsilon, nu, prec)
        if step > 1e-20:
            raise ArithmeticError(
                f"Newton refinement stalled near {nu} (step {step})"
            )
        polished.append(root)
        worst = max(worst, float(abs(root - mpmath.mpc(nu))))
    if cert.squarefree:
        sep = min(
            float(abs(polished[i] - polished[j]))
            for i in range(len(polished))
            for j in range(i + 1, len(polished))
        )
        if sep < 1e-9:
            raise ArithmeticError(
                "two refined roots collapsed despite squarefree certificate"
            )
    _verify_root_product(cert.upsilon, polished, prec)
    return worst


def _verify_root_product(upsilon: IntPoly, roots, prec: int) -> None:
    """Check prod (nu - root) re-expands to upsilon/leading numerically."""
    with MP_LOCK, mpmath.workprec(prec):
        poly = [mpmath.mpc(1)]
        for r in roots:
            nxt = [mpmath.mpc(0)] * (len(poly) + 1)
            for k, a in enumerate(poly):
                nxt[k + 1] += a
                nxt[k] -= a * r
            poly = nxt
        lead = upsilon.leading()
        scale = max(abs(mpmath.mpf(a)) for a in upsilon.coeffs)
        err = mpmath.mpf(0)
        for k, a in enumerate(upsilon.coeffs):
            err = max(err, abs(poly[k] * lead - a))
        if err > scale * mpmath.mpf(2) ** -25:
            raise ArithmeticError(
                "refined roots do not reproduce the unit polynomial "
                f"(relative error {mpmath.nstr(err / scale, 5)})"
            )


def certificate_json_dict(cert: UnitCertificate) -> dict:
    """JSON-ready view with exact coefficients as decimal strings."""
    return {
        "degree": cert.degree,
        "period": cert.period,
        "s_coeffs": cert.s_poly.to_decimal_strings(),
        "constant_coeff": str(cert.constant_coeff),
        "leading_coeff": str(cert.leading_coeff),
        "upsilon_coeffs": cert.upsilon.to_decimal_strings(),
        "unit_ok": cert.unit_ok,
        "squarefree": cert.squarefree,
        "crosscheck": cert.crosscheck,
    }
