"""Exact Gaussian-rational arithmetic for polynomials in one and two variables.

The eigenvalue-branch analysis in :mod:`rigidity.symdom` manipulates
characteristic polynomials P(t, y) whose coefficients must stay exact while
Newton polygons, shifts and Puiseux substitutions are applied.  Scalars here
are complex numbers with rational real and imaginary parts, univariate
polynomials are coefficient tuples over those scalars (ascending powers), and
bivariate polynomials are stored as one coefficient polynomial in t per power
of y.
"""

import math
from fractions import Fraction

__all__ = [
    "GaussianRational",
    "RationalPoly",
    "BivariatePolynomial",
    "rational_roots",
    "rational_nth_root",
]


def _to_fraction(x):
    """Coerce exact inputs to Fraction; floats are rejected on purpose."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"expected an exact value (int, Fraction or str), got {type(x).__name__}")


class GaussianRational:
    """Complex scalar with exact rational real and imaginary parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = _to_fraction(re)
        self.im = _to_fraction(im)

    @classmethod
    def ensure(cls, x):
        if isinstance(x, GaussianRational):
            return x
        return cls(x)

    @property
    def is_zero(self):
        return self.re == 0 and self.im == 0

    @property
    def is_real(self):
        return self.im == 0

    def conjugate(self):
        return GaussianRational(self.re, -self.im)

    def __add__(self, other):
        other = GaussianRational.ensure(other)
        return GaussianRational(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        other = GaussianRational.ensure(other)
        return GaussianRational(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        return GaussianRational.ensure(other) - self

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __mul__(self, other):
        other = GaussianRational.ensure(other)
        return GaussianRational(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = GaussianRational.ensure(other)
        d = other.re * other.re + other.im * other.im
        if d == 0:
            raise ZeroDivisionError("division by zero GaussianRational")
        return GaussianRational(
            (self.re * other.re + self.im * other.im) / d,
            (self.im * other.re - self.re * other.im) / d,
        )

    def __rtruediv__(self, other):
        return GaussianRational.ensure(other) / self

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            raise ValueError("only non-negative integer powers are supported")
        out = GaussianRational(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, str, GaussianRational)):
            other = GaussianRational.ensure(other)
            return self.re == other.re and self.im == other.im
        return NotImplemented

    def __hash__(self):
        return hash((self.re, self.im))

    def __bool__(self):
        return not self.is_zero

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __repr__(self):
        if self.im == 0:
            return f"GaussianRational({self.re})"
        return f"GaussianRational({self.re}, {self.im})"


_ZERO = GaussianRational(0)
_ONE = GaussianRational(1)


class RationalPoly:
    """Univariate polynomial over GaussianRational, coefficients ascending."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        cs = [GaussianRational.ensure(c) for c in coeffs]
        while cs and cs[-1].is_zero:
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def constant(cls, c):
        return cls((GaussianRational.ensure(c),))

    @classmethod
    def zero(cls):
        return cls(())

    @classmethod
    def one(cls):
        return cls((_ONE,))

    @classmethod
    def variable(cls):
        return cls((_ZERO, _ONE))

    @property
    def is_zero(self):
        return not self.coeffs

    @property
    def degree(self):
        """Degree, with the zero polynomial reported as -1."""
        return len(self.coeffs) - 1

    @property
    def valuation(self):
        """Lowest exponent with a nonzero coefficient; None for zero."""
        for k, c in enumerate(self.coeffs):
            if not c.is_zero:
                return k
        return None

    def coeff(self, k):
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return _ZERO

    def leading(self):
        if self.is_zero:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def __add__(self, other):
        other = self._ensure(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return RationalPoly([self.coeff(k) + other.coeff(k) for k in range(n)])

    __radd__ = __add__

    def __sub__(self, other):
        other = self._ensure(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return RationalPoly([self.coeff(k) - other.coeff(k) for k in range(n)])

    def __rsub__(self, other):
        return self._ensure(other) - self

    def __neg__(self):
        return RationalPoly([-c for c in self.coeffs])

    def __mul__(self, other):
        other = self._ensure(other)
        if self.is_zero or other.is_zero:
            return RationalPoly.zero()
        out = [_ZERO] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a.is_zero:
                continue
            for j, b in enumerate(other.coeffs):
                if b.is_zero:
                    continue
                out[i + j] = out[i + j] + a * b
        return RationalPoly(out)

    __rmul__ = __mul__

    @staticmethod
    def _ensure(x):
        if isinstance(x, RationalPoly):
            return x
        return RationalPoly.constant(x)

    def scale(self, c):
        c = GaussianRational.ensure(c)
        return RationalPoly([a * c for a in self.coeffs])

    def conjugate(self):
        """Coefficient-wise conjugation (adjoint of the values at real t)."""
        return RationalPoly([c.conjugate() for c in self.coeffs])

    def shift_up(self, k):
        """Multiply by t**k."""
        if self.is_zero:
            return self
        return RationalPoly((_ZERO,) * k + self.coeffs)

    def shift_down(self, k):
        """Exact division by t**k; requires valuation >= k."""
        if self.is_zero:
            return self
        if any(not c.is_zero for c in self.coeffs[:k]):
            raise ValueError(f"polynomial is not divisible by t**{k}")
        return RationalPoly(self.coeffs[k:])

    def inflate(self, q):
        """Substitute t -> t**q."""
        if q == 1 or self.is_zero:
            return self
        out = [_ZERO] * (q * self.degree + 1)
        for k, c in enumerate(self.coeffs):
            out[q * k] = c
        return RationalPoly(out)

    def derivative(self):
        return RationalPoly([k * c for k, c in enumerate(self.coeffs)][1:])

    def eval_complex(self, z):
        out = 0j
        for c in reversed(self.coeffs):
            out = out * z + complex(c)
        return out

    def eval_exact(self, x):
        x = GaussianRational.ensure(x)
        out = _ZERO
        for c in reversed(self.coeffs):
            out = out * x + c
        return out

    def complex_coeffs(self):
        """Ascending coefficients converted to complex floats."""
        return [complex(c) for c in self.coeffs]

    def monic(self):
        if self.is_zero:
            raise ValueError("cannot normalize the zero polynomial")
        lead = self.leading()
        return RationalPoly([c / lead for c in self.coeffs])

    def divmod(self, other):
        other = self._ensure(other)
        if other.is_zero:
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        deg_d = other.degree
        lead = other.leading()
        if len(rem) - 1 < deg_d:
            return RationalPoly.zero(), RationalPoly(rem)
        quot = [_ZERO] * (len(rem) - deg_d)
        for k in range(len(rem) - 1, deg_d - 1, -1):
            c = rem[k]
            if c.is_zero:
                continue
            f = c / lead
            quot[k - deg_d] = f
            for j in range(deg_d + 1):
                rem[k - deg_d + j] = rem[k - deg_d + j] - f * other.coeffs[j]
        return RationalPoly(quot), RationalPoly(rem)

    def gcd(self, other):
        """Monic greatest common divisor over the Gaussian rationals."""
        a, b = self, self._ensure(other)
        while not b.is_zero:
            a, b = b, a.divmod(b)[1]
        if a.is_zero:
            return a
        return a.monic()

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            raise ValueError("only non-negative integer powers are supported")
        out = RationalPoly.one()
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, RationalPoly):
            return self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        if self.is_zero:
            return "RationalPoly(0)"
        terms = []
        for k, c in enumerate(self.coeffs):
            if c.is_zero:
                continue
            if c.im == 0:
                s = str(c.re)
            else:
                s = f"({c.re}{'+' if c.im >= 0 else ''}{c.im}i)"
            terms.append(s if k == 0 else f"{s}*t^{k}")
        return "RationalPoly(" + " + ".join(terms) + ")"


def _int_nth_root(a, n):
    """Floor of the n-th root of a non-negative integer."""
    if a < 0:
        raise ValueError("negative radicand")
    if a == 0:
        return 0
    x = int(round(a ** (1.0 / n)))
    while x > 0 and x**n > a:
        x -= 1
    while (x + 1) ** n <= a:
        x += 1
    return x


def rational_nth_root(x, n):
    """Exact Fraction n-th root of x, or None when irrational.

    For even n the non-negative root is returned.
    """
    x = Fraction(x)
    if n <= 0:
        raise ValueError("root order must be positive")
    if x < 0:
        if n % 2 == 0:
            return None
        r = rational_nth_root(-x, n)
        return None if r is None else -r
    p = _int_nth_root(x.numerator, n)
    q = _int_nth_root(x.denominator, n)
    if p**n == x.numerator and q**n == x.denominator:
        return Fraction(p, q)
    return None


def _divisors(n):
    n = abs(n)
    out = set()
    d = 1
    while d * d <= n:
        if n % d == 0:
            out.add(d)
            out.add(n // d)
        d += 1
    return out


def rational_roots(poly):
    """All rational roots of a RationalPoly, found exactly.

    Candidates come from the rational root theorem applied to the real parts
    after clearing denominators; each candidate is verified by exact
    evaluation, so the result is correct even for complex coefficients.
    """
    if poly.is_zero:
        raise ValueError("every rational is a root of the zero polynomial")
    val = poly.valuation
    roots = []
    if val > 0:
        roots.append(Fraction(0))
        poly = poly.shift_down(val)
    if poly.degree == 0:
        return roots
    denoms = 1
    for c in poly.coeffs:
        denoms = denoms * c.re.denominator * c.im.denominator // math.gcd(
            denoms, c.re.denominator * c.im.denominator
        )
    lead = poly.leading() * denoms
    low = poly.coeff(0) * denoms
    lead_int = math.gcd(int(lead.re), int(lead.im))
    low_int = math.gcd(int(low.re), int(low.im))
    for p in _divisors(low_int):
        for q in _divisors(lead_int):
            for cand in (Fraction(p, q), Fraction(-p, q)):
                if cand in roots:
                    continue
                if poly.eval_exact(GaussianRational(cand)).is_zero:
                    roots.append(cand)
    return sorted(roots)


class BivariatePolynomial:
    """P(t, y) = sum_k c_k(t) * y**k with exact coefficient polynomials c_k."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        cs = [c if isinstance(c, RationalPoly) else RationalPoly._ensure(c) for c in coeffs]
        while cs and cs[-1].is_zero:
            cs.pop()
        if not cs:
            raise ValueError("bivariate polynomial must not be identically zero")
        self.coeffs = tuple(cs)

    @classmethod
    def from_lists(cls, lists):
        """Build from nested lists: one list of t-coefficients per y-power."""
        return cls([RationalPoly(row) for row in lists])

    @property
    def degree_y(self):
        return len(self.coeffs) - 1

    @property
    def is_monic(self):
        top = self.coeffs[-1]
        return top.degree == 0 and top.coeff(0) == _ONE

    def at_t_zero(self):
        """The univariate polynomial y -> P(0, y)."""
        return RationalPoly([c.coeff(0) for c in self.coeffs])

    def dy(self):
        """Partial derivative with respect to y; requires degree >= 1."""
        if self.degree_y < 1:
            raise ValueError("constant in y, no derivative branch data")
        return BivariatePolynomial([k * c for k, c in enumerate(self.coeffs)][1:])

    def eval_t(self, t):
        """Ascending complex coefficients of y -> P(t, y) at a numeric t."""
        return [c.eval_complex(t) for c in self.coeffs]

    def float_coeff_polys(self):
        """Per-y-power ascending complex t-coefficients, for fast evaluation."""
        return [c.complex_coeffs() for c in self.coeffs]

    def shift_y(self, a):
        """P(t, a + y) by Horner expansion in y."""
        a = GaussianRational.ensure(a)
        a_poly = RationalPoly.constant(a)
        # Horner in y: result starts at the top coefficient and is re-expanded.
        out = [RationalPoly.zero()] * (self.degree_y + 1)
        for c in reversed(self.coeffs):
            carry = RationalPoly.zero()
            for k in range(len(out)):
                prev = out[k]
                out[k] = carry + (prev * a_poly if not prev.is_zero else RationalPoly.zero())
                carry = prev
            # out <- out * (a + y), then add c to the constant term
            out[0] = out[0] + c
        return BivariatePolynomial(out)

    def substitute_puiseux(self, q, p, c):
        """Return P(tau**q, tau**p * (c + y)) / tau**N with N the minimal valuation.

        This is one resolution step of the Newton-Puiseux iteration; c must be
        exact (GaussianRational).
        """
        c = GaussianRational.ensure(c)
        new = [RationalPoly.zero()] * (self.degree_y + 1)
        for k, ck in enumerate(self.coeffs):
            if ck.is_zero:
                continue
            base = ck.inflate(q).shift_up(p * k)
            # (c + y)**k = sum_j binom(k, j) c**(k-j) y**j
            binom = 1
            for j in range(k + 1):
                if j > 0:
                    binom = binom * (k - j + 1) // j
                w = GaussianRational(binom) * c ** (k - j)
                if not w.is_zero:
                    new[j] = new[j] + base.scale(w)
        vals = [poly.valuation for poly in new if not poly.is_zero]
        if not vals:
            raise ValueError("substitution produced the zero polynomial")
        shift = min(vals)
        return BivariatePolynomial([
            poly if poly.is_zero else poly.shift_down(shift) for poly in new
        ])

    def discriminant(self):
        """Resultant of P and dP/dy with respect to y, as a polynomial in t.

        Vanishes identically exactly when P has a repeated factor in y.
        """
        if self.degree_y < 1:
            raise ValueError("discriminant needs degree >= 1 in y")
        if self.degree_y == 1:
            return RationalPoly.one()
        return _resultant_y(self, self.dy())

    def __eq__(self, other):
        if isinstance(other, BivariatePolynomial):
            return self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        parts = [f"({c!r})*y^{k}" for k, c in enumerate(self.coeffs) if not c.is_zero]
        return "BivariatePolynomial(" + " + ".join(parts) + ")"


def _poly_matrix_det(rows):
    """Determinant of a square matrix of RationalPoly via cofactor expansion."""
    n = len(rows)
    if n == 1:
        return rows[0][0]
    out = RationalPoly.zero()
    for i in range(n):
        pivot = rows[i][0]
        if pivot.is_zero:
            continue
        minor = [r[1:] for j, r in enumerate(rows) if j != i]
        term = pivot * _poly_matrix_det(minor)
        out = out + (term if i % 2 == 0 else -term)
    return out


def _resultant_y(P, Q):
    """Sylvester resultant of two bivariate polynomials, eliminating y."""
    m, n = P.degree_y, Q.degree_y
    if m == 0:
        return P.coeffs[0] ** n if n else RationalPoly.one()
    if n == 0:
        return Q.coeffs[0] ** m if m else RationalPoly.one()
    size = m + n
    zero = RationalPoly.zero()
    rows = []
    pc = list(reversed(P.coeffs))
    qc = list(reversed(Q.coeffs))
    for i in range(n):
        rows.append([zero] * i + pc + [zero] * (size - m - 1 - i))
    for i in range(m):
        rows.append([zero] * i + qc + [zero] * (size - n - 1 - i))
    return _poly_matrix_det(rows)
