"""Exact arithmetic for integer polynomials, univariate and bivariate.

Everything here is integer-exact: coefficients are arbitrary-precision
integers, divisions are checked, and the resultant is computed by a
subresultant polynomial remainder sequence (never floating point).  The
bivariate layer handles polynomials in a second variable nu whose
coefficients are integer polynomials in c; its resultant eliminates c by
evaluation at integer nodes followed by exact rational interpolation.

Coefficient convention: ascending order (index = monomial degree), the
trailing stored coefficient is nonzero, and the zero polynomial stores an
empty tuple (degree -1).
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Sequence

try:
    import gmpy2

    _mpz = gmpy2.mpz
    _mpq = gmpy2.mpq
except ImportError:  # pragma: no cover - gmpy2 is a speedup, not a contract
    gmpy2 = None
    _mpz = int
    _mpq = Fraction


class ZeroInput(ValueError):
    """An operation received a zero polynomial where a nonzero one is required."""


class NonDivisible(ArithmeticError):
    """Exact division left a nonzero remainder."""


class DegreeDrop(RuntimeError):
    """Too many interpolation nodes hit a drop of the generic c-degree."""


class NonIntegral(RuntimeError):
    """Interpolation produced a non-integer coefficient."""


class NotAPower(ArithmeticError):
    """The polynomial is not an exact k-th power of an integer polynomial."""


class IntPoly:
    """Dense univariate polynomial over the integers."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[int] = ()):
        cs = [int(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("IntPoly is immutable")

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls) -> "IntPoly":
        return cls(())

    @classmethod
    def one(cls) -> "IntPoly":
        return cls((1,))

    @classmethod
    def x(cls) -> "IntPoly":
        return cls((0, 1))

    @classmethod
    def const(cls, c: int) -> "IntPoly":
        return cls((c,))

    @classmethod
    def monomial(cls, degree: int, coeff: int = 1) -> "IntPoly":
        if degree < 0:
            raise ValueError("degree must be nonnegative")
        return cls((0,) * degree + (coeff,))

    # -- structure ----------------------------------------------------

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def leading(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def constant(self) -> int:
        return self.coeffs[0] if self.coeffs else 0

    def coeff(self, k: int) -> int:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else 0

    def content(self) -> int:
        g = 0
        for c in self.coeffs:
            g = math.gcd(g, c)
        return g

    def primitive(self) -> "IntPoly":
        """Primitive part with positive leading coefficient."""
        if self.is_zero():
            return self
        g = self.content()
        if self.leading() < 0:
            g = -g
        return IntPoly(c // g for c in self.coeffs)

    # -- arithmetic ---------------------------------------------------

    def __eq__(self, other) -> bool:
        return isinstance(other, IntPoly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __neg__(self) -> "IntPoly":
        return IntPoly(-c for c in self.coeffs)

    def __add__(self, other) -> "IntPoly":
        if isinstance(other, int):
            other = IntPoly((other,))
        if not isinstance(other, IntPoly):
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return IntPoly(out)

    __radd__ = __add__

    def __sub__(self, other) -> "IntPoly":
        if isinstance(other, int):
            other = IntPoly((other,))
        if not isinstance(other, IntPoly):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "IntPoly":
        return (-self) + other

    def __mul__(self, other) -> "IntPoly":
        if isinstance(other, int):
            if other == 0:
                return IntPoly.zero()
            return IntPoly(other * c for c in self.coeffs)
        if not isinstance(other, IntPoly):
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return IntPoly.zero()
        out = [0] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    out[i + j] += ai * bj
        return IntPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "IntPoly":
        if n < 0:
            raise ValueError("negative power")
        result = IntPoly.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __call__(self, x):
        """Horner evaluation; works for int, Fraction, float, complex, mpf/mpc."""
        acc = x * 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self) -> "IntPoly":
        return IntPoly(k * self.coeffs[k] for k in range(1, len(self.coeffs)))

    # -- serialization ------------------------------------------------

    def to_decimal_strings(self) -> list[str]:
        """Ascending coefficients as decimal strings (JSON-safe at any size)."""
        return [str(c) for c in self.coeffs]

    @classmethod
    def from_decimal_strings(cls, items: Sequence[str]) -> "IntPoly":
        return cls(int(s) for s in items)

    def to_str(self, var: str = "c") -> str:
        if self.is_zero():
            return "0"
        parts = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            if k == 0:
                term = str(abs(c))
            else:
                mag = "" if abs(c) == 1 else f"{abs(c)}*"
                term = f"{mag}{var}" + (f"^{k}" if k > 1 else "")
            parts.append(("- " if c < 0 else "+ ") + term)
        s = " ".join(parts)
        return s[2:] if s.startswith("+ ") else "-" + s[2:]

    def __repr__(self):
        return f"IntPoly({self.to_str()})"


# -- module-level operations ------------------------------------------


def add(p: IntPoly, q: IntPoly) -> IntPoly:
    return p + q


def mul(p: IntPoly, q: IntPoly) -> IntPoly:
    return p * q


def derivative(p: IntPoly) -> IntPoly:
    return p.derivative()


def exact_div(p: IntPoly, q: IntPoly) -> IntPoly:
    """Quotient p/q when q divides p exactly over the integers.

    Raises NonDivisible if any coefficient of the long division fails to
    divide or a nonzero remainder survives.
    """
    if q.is_zero():
        raise ZeroInput("division by the zero polynomial")
    if p.is_zero():
        return IntPoly.zero()
    if p.degree < q.degree:
        raise NonDivisible("degree of dividend below degree of divisor")
    rem = list(p.coeffs)
    qc = q.coeffs
    dq = q.degree
    lead = qc[-1]
    out = [0] * (p.degree - dq + 1)
    for k in range(p.degree - dq, -1, -1):
        num = rem[k + dq]
        t, r = divmod(num, lead)
        if r != 0:
            raise NonDivisible("leading coefficient does not divide")
        if t:
            out[k] = t
            for j, c in enumerate(qc):
                rem[k + j] -= t * c
    if any(rem[: dq]):
        raise NonDivisible("nonzero remainder")
    return IntPoly(out)


def _prem(a: list, b: list) -> list:
    """Pseudo-remainder lc(b)^(deg a - deg b + 1) * a mod b, ascending lists.

    Always applies exactly deg a - deg b + 1 scalings by lc(b) so the
    subresultant divisions downstream stay exact even when the degree
    drops by more than one in a sweep.
    """
    da, db = len(a) - 1, len(b) - 1
    lb = b[-1]
    r = list(a)
    for _ in range(da - db + 1):
        dr = len(r) - 1
        if dr < db:
            r = [lb * x for x in r]
            continue
        top = r[-1]
        r = [lb * x for x in r[:-1]]
        shift = dr - db
        for j in range(db):
            r[shift + j] -= top * b[j]
        while r and r[-1] == 0:
            r.pop()
    return r


def resultant(p: IntPoly, q: IntPoly) -> int:
    """Resultant of two nonzero integer polynomials.

    Subresultant polynomial remainder sequence: all intermediate divisions
    are exact, so the value is the true resultant, not a float estimate.
    Equals lc(p)^deg(q) times the product of q over the roots of p.
    """
    if p.is_zero() or q.is_zero():
        raise ZeroInput("resultant requires nonzero polynomials")
    a = [_mpz(c) for c in p.coeffs]
    b = [_mpz(c) for c in q.coeffs]
    sign = 1
    if len(a) < len(b):
        if ((len(a) - 1) * (len(b) - 1)) % 2 == 1:
            sign = -1
        a, b = b, a
    if len(a) == 1:
        return sign  # two nonzero constants
    if len(b) == 1:
        return sign * int(b[0] ** (len(a) - 1))
    g = h = _mpz(1)
    while True:
        da, db = len(a) - 1, len(b) - 1
        delta = da - db
        if (da & 1) and (db & 1):
            sign = -sign
        r = _prem(a, b)
        if not r:
            return 0  # nonconstant common factor
        denom = g * h ** delta
        a = b
        b = [ri // denom for ri in r]
        g = a[-1]
        if delta > 0:
            h = g ** delta // h ** (delta - 1)
        if len(b) == 1:
            da2 = len(a) - 1
            num = b[0] ** da2
            if da2 >= 1:
                return sign * int(num // h ** (da2 - 1))
            return sign * int(num)


_WITNESS_PRIME = (1 << 61) - 1


def _coprime_mod_p(p: IntPoly, q: IntPoly, prime: int = _WITNESS_PRIME) -> bool:
    """True if gcd(p, q) is certified constant by a single modular witness.

    Valid one-sided certificate: when prime divides neither leading
    coefficient, deg gcd over Z is at most deg gcd over F_prime, so a
    constant modular gcd proves coprimality.  False means "unknown".
    """
    if p.leading() % prime == 0 or q.leading() % prime == 0:
        return False
    a = [c % prime for c in p.coeffs]
    b = [c % prime for c in q.coeffs]
    while b and not b[-1]:
        b.pop()
    while a and not a[-1]:
        a.pop()
    while b:
        inv = pow(b[-1], prime - 2, prime)
        da, db = len(a) - 1, len(b) - 1
        if da < db:
            a, b = b, a
            continue
        top = a[-1] * inv % prime
        a = a[:-1]
        for j in range(db):
            a[(da - db) + j] = (a[(da - db) + j] - top * b[j]) % prime
        while a and not a[-1]:
            a.pop()
        a, b = b, a
    return len(a) == 1


def gcd(p: IntPoly, q: IntPoly) -> IntPoly:
    """Primitive greatest common divisor, positive leading coefficient."""
    if p.is_zero() and q.is_zero():
        raise ZeroInput("gcd of two zero polynomials")
    if p.is_zero():
        return q.primitive()
    if q.is_zero():
        return p.primitive()
    if p.degree > 0 and q.degree > 0 and _coprime_mod_p(p, q):
        return IntPoly.one()
    a = [_mpz(c) for c in p.coeffs]
    b = [_mpz(c) for c in q.coeffs]
    if len(a) < len(b):
        a, b = b, a
    g = h = _mpz(1)
    while True:
        if len(b) == 1:
            return IntPoly.one()
        da, db = len(a) - 1, len(b) - 1
        delta = da - db
        r = _prem(a, b)
        if not r:
            return IntPoly(int(c) for c in b).primitive()
        denom = g * h ** delta
        a = b
        b = [ri // denom for ri in r]
        g = a[-1]
        if delta > 0:
            h = g ** delta // h ** (delta - 1)


def power_series_root(p: IntPoly, k: int) -> IntPoly:
    """The integer polynomial u with u^k = p, if one exists.

    Requires p(0) = 1, or p(0) = -1 with odd k.  Coefficients of u are
    produced by the logarithmic-derivative recurrence p'u = k u'p, and the
    result is certified by exact re-expansion of u^k; any failure along
    the way raises NotAPower.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    if p.is_zero():
        raise ZeroInput("zero polynomial has no unit root")
    if k == 1:
        return p
    p0 = p.constant()
    if p0 == 1:
        u0 = 1
    elif p0 == -1 and k % 2 == 1:
        u0 = -1
    else:
        raise NotAPower(f"constant term {p0} is not a k-th power unit")
    d = p.degree
    if d % k != 0:
        raise NotAPower("degree not divisible by k")
    du = d // k
    pc = [p.coeff(i) for i in range(d + 1)]
    u = [u0] + [0] * du
    for n in range(0, du):
        # coefficient of x^n in p'u equals k times that of u'p
        lhs = 0
        for i in range(0, n + 1):
            lhs += (i + 1) * pc[i + 1] * u[n - i] if i + 1 <= d else 0
        rhs_known = 0
        for j in range(0, n):
            rhs_known += (j + 1) * u[j + 1] * pc[n - j]
        num = lhs - k * rhs_known
        den = k * (n + 1) * p0
        t, r = divmod(num, den)
        if r != 0:
            raise NotAPower("non-integer coefficient in k-th root")
        u[n + 1] = t
    root = IntPoly(u)
    if root ** k != p:
        raise NotAPower("re-expansion mismatch: input is not an exact power")
    return root


class BivarPoly:
    """Polynomial in nu whose coefficients are integer polynomials in c."""

    __slots__ = ("nu_coeffs",)

    def __init__(self, nu_coeffs: Iterable[IntPoly] = ()):
        cs = list(nu_coeffs)
        while cs and cs[-1].is_zero():
            cs.pop()
        object.__setattr__(self, "nu_coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("BivarPoly is immutable")

    @property
    def nu_degree(self) -> int:
        return len(self.nu_coeffs) - 1

    @property
    def c_degree(self) -> int:
        """Generic degree in c (max over nu-coefficients)."""
        if not self.nu_coeffs:
            return -1
        return max(q.degree for q in self.nu_coeffs)

    def is_zero(self) -> bool:
        return not self.nu_coeffs

    def __eq__(self, other) -> bool:
        return isinstance(other, BivarPoly) and self.nu_coeffs == other.nu_coeffs

    def eval_nu(self, nu0: int) -> IntPoly:
        """Specialize nu to an integer, returning a polynomial in c."""
        acc = IntPoly.zero()
        for q in reversed(self.nu_coeffs):
            acc = acc * int(nu0) + q
        return acc

    def lead_c_in_nu(self) -> IntPoly:
        """Coefficient of c^(generic c-degree) as a polynomial in nu."""
        top = self.c_degree
        return IntPoly(q.coeff(top) for q in self.nu_coeffs)


def _interpolate_integer(xs: list[int], ys: list[int]) -> IntPoly:
    """Exact polynomial through (xs, ys) with integer output coefficients.

    Newton divided differences over exact rationals; NonIntegral if the
    final monomial coefficients are not integers.
    """
    n = len(xs)
    coef = [_mpq(y) for y in ys]
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - j])
    # expand Newton form to monomial basis
    out = [_mpq(0)] * n
    out[0] = coef[n - 1]
    deg = 0
    for i in range(n - 2, -1, -1):
        # out <- out*(x - xs[i]) + coef[i]
        xi = xs[i]
        for k in range(deg + 1, 0, -1):
            out[k] = out[k - 1] - xi * out[k]
        out[0] = coef[i] - xi * out[0]
        deg += 1
    ints = []
    for v in out:
        if v.denominator != 1:
            raise NonIntegral("interpolated coefficient is not an integer")
        ints.append(int(v))
    return IntPoly(ints)


def resultant_bivar(p: IntPoly, r: BivarPoly) -> IntPoly:
    """Resultant in c of p(c) and r(c, nu), as an integer polynomial in nu.

    Evaluation-interpolation: the nu-degree of the result is bounded by
    deg_c(p) * deg_nu(r), so that many plus one integer nodes determine it.
    Nodes are taken from 0, 1, -1, 2, -2, ... and any node where the
    c-degree of r(., nu0) drops below the generic degree is skipped (the
    specialized resultant would not equal the resultant's value there).
    """
    if p.is_zero() or r.is_zero():
        raise ZeroInput("resultant_bivar requires nonzero inputs")
    if p.degree == 0:
        return IntPoly.one()
    bound = p.degree * r.nu_degree + 1
    lead = r.lead_c_in_nu()
    xs: list[int] = []
    ys: list[int] = []
    skips = 0
    max_skips = r.nu_degree + 8
    node = 0
    while len(xs) < bound:
        candidates = [node] if node == 0 else [node, -node]
        for nu0 in candidates:
            if len(xs) >= bound:
                break
            if lead(nu0) == 0:
                skips += 1
                if skips > max_skips:
                    raise DegreeDrop(
                        "too many degree-dropping nodes; leading c-coefficient "
                        "vanishes on a large set"
                    )
                continue
            q = r.eval_nu(nu0)
            xs.append(nu0)
            ys.append(resultant(p, q))
        node += 1
    return _interpolate_integer(xs, ys)
