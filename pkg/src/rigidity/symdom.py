"""Operator-norm matrix balls and eigenvalue-branch analysis.

A bounded symmetric domain is modelled as the open unit ball of a matrix
subspace for the operator norm; the distance from the origin is
arctanh of the norm, and on diagonal 2x2 matrices it degenerates to the
sup of the two one-dimensional factors.

The second half of the module studies how that distance behaves along a
polynomial matrix path V(t): the characteristic polynomial
P(t, y) = det(y I - V(t)* V(t)) is computed with exact Gaussian-rational
arithmetic, the branch of eigenvalues carrying the top singular value near
t = 0+ is resolved by the Newton-polygon (Puiseux) iteration, and an
independent numerical monodromy tracker around a small circle |t| = r
double-checks the branching index.  ``smoothness_report`` certifies that
the distance is a smooth function of t**(1/K) by polynomial fitting in the
reparametrized variable.

All objects are immutable and every function is pure; monodromy tracking
is internally sequential (the continuation is path dependent) but distinct
polynomials may be analyzed concurrently.
"""

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from scipy.optimize import linear_sum_assignment

from .exactpoly import (
    BivariatePolynomial,
    GaussianRational,
    RationalPoly,
    rational_nth_root,
    rational_roots,
)

__all__ = [
    "OnOrOutsideBoundary",
    "DegenerateAtZero",
    "BranchPointOnCircle",
    "BoundaryHit",
    "PuiseuxError",
    "MatrixDomain",
    "MatrixPoint",
    "PolynomialMatrixPath",
    "PuiseuxBranchReport",
    "SmoothnessReport",
    "operator_norm",
    "kobayashi_distance_origin",
    "charpoly_path",
    "newton_puiseux_index",
    "monodromy_branch_index",
    "smoothness_report",
    "smoothness_report_from_charpoly",
]

BALL_MARGIN = 1e-12


class OnOrOutsideBoundary(ValueError):
    """Raised when a matrix is not strictly inside the operator-norm ball."""


class DegenerateAtZero(ValueError):
    """Raised when P(0, y) vanishes identically."""


class BranchPointOnCircle(ValueError):
    """Raised when monodromy tracking meets or encloses an extra branch point."""


class BoundaryHit(ValueError):
    """Raised when a sampled path point leaves the open ball."""


class PuiseuxError(ValueError):
    """Raised when branch data falls outside the exactly solvable cases."""


def operator_norm(matrix):
    """Largest singular value (the norm as an operator between l2 spaces)."""
    return float(np.linalg.norm(np.asarray(matrix, dtype=complex), 2))


@dataclass(frozen=True)
class MatrixDomain:
    """Matrix realization of a domain: the unit norm ball of a subspace."""

    rows: int
    cols: int
    basis: tuple

    def __post_init__(self):
        basis = tuple(np.asarray(b, dtype=complex) for b in self.basis)
        if not basis:
            raise ValueError("need at least one basis matrix")
        for b in basis:
            if b.shape != (self.rows, self.cols):
                raise ValueError(f"basis matrix of shape {b.shape}, expected "
                                 f"({self.rows}, {self.cols})")
        stacked = np.stack([b.ravel() for b in basis])
        if np.linalg.matrix_rank(stacked, tol=1e-10) != len(basis):
            raise ValueError("basis matrices are linearly dependent")
        object.__setattr__(self, "basis", basis)

    @property
    def dimension(self):
        return len(self.basis)

    def coefficients_of(self, matrix):
        """Least-squares coordinates of a matrix in the basis; raises if the
        matrix is not in the span."""
        m = np.asarray(matrix, dtype=complex).ravel()
        stacked = np.stack([b.ravel() for b in self.basis]).T
        coeffs, *_ = np.linalg.lstsq(stacked, m, rcond=None)
        if np.linalg.norm(stacked @ coeffs - m) > 1e-9 * max(1.0, np.linalg.norm(m)):
            raise ValueError("matrix does not lie in the domain subspace")
        return coeffs

    def point(self, matrix):
        return MatrixPoint(matrix, domain=self)

    @classmethod
    def bidisk(cls):
        """Diagonal 2x2 matrices: the product of two disks."""
        e11 = np.array([[1, 0], [0, 0]], dtype=complex)
        e22 = np.array([[0, 0], [0, 1]], dtype=complex)
        return cls(2, 2, (e11, e22))


@dataclass(frozen=True)
class MatrixPoint:
    """Point of a matrix ball: a matrix of operator norm strictly below one."""

    matrix: np.ndarray
    domain: MatrixDomain = None

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=complex)
        object.__setattr__(self, "matrix", m)
        norm = operator_norm(m)
        if norm > 1.0 - BALL_MARGIN:
            raise OnOrOutsideBoundary(f"operator norm {norm} is not inside the ball")
        if self.domain is not None:
            self.domain.coefficients_of(m)

    @property
    def norm(self):
        return operator_norm(self.matrix)


def kobayashi_distance_origin(point):
    """Distance from the base point: (1/2) log((1 + ||V||) / (1 - ||V||)).

    Accepts a MatrixPoint or a raw matrix.  Strictly increasing in the norm;
    equal to the sup of the factor distances on diagonal matrices.
    """
    matrix = point.matrix if isinstance(point, MatrixPoint) else point
    norm = operator_norm(matrix)
    if norm > 1.0 - BALL_MARGIN:
        raise OnOrOutsideBoundary(f"operator norm {norm} is not inside the ball")
    return 0.5 * math.log((1.0 + norm) / (1.0 - norm))


class PolynomialMatrixPath:
    """Matrix whose entries are exact polynomials in one real parameter t."""

    def __init__(self, entries):
        rows = []
        width = None
        for row in entries:
            row = tuple(e if isinstance(e, RationalPoly) else RationalPoly(e) for e in row)
            if width is None:
                width = len(row)
            elif len(row) != width:
                raise ValueError("ragged entry rows")
            rows.append(row)
        if not rows or width == 0:
            raise ValueError("path needs at least one entry")
        self.entries = tuple(rows)
        self.rows = len(rows)
        self.cols = width
        start_norm = operator_norm(self.evaluate(0.0))
        if start_norm > 1.0 - BALL_MARGIN:
            raise OnOrOutsideBoundary(
                f"operator norm {start_norm} at t = 0 is not inside the ball"
            )

    @classmethod
    def from_json(cls, data):
        """Nested lists: rows of entries, each entry a list of [re, im]
        coefficient pairs in ascending powers of t, as exact decimal or
        fraction strings."""
        entries = []
        for row in data:
            entries.append([
                RationalPoly([GaussianRational(str(re), str(im)) for re, im in entry])
                for entry in row
            ])
        return cls(entries)

    def evaluate(self, t):
        return np.array(
            [[e.eval_complex(t) for e in row] for row in self.entries],
            dtype=complex,
        )

    def __repr__(self):
        return f"PolynomialMatrixPath({self.rows}x{self.cols})"


def _gram_entries(path):
    """Exact entries of V(t)* V(t); conjugating coefficients realizes the
    adjoint for real t."""
    g = []
    for i in range(path.cols):
        row = []
        for j in range(path.cols):
            acc = RationalPoly.zero()
            for r in range(path.rows):
                acc = acc + path.entries[r][i].conjugate() * path.entries[r][j]
            row.append(acc)
        g.append(row)
    return g


def _poly_mat_mul(a, b):
    n = len(a)
    return [
        [sum((a[i][k] * b[k][j] for k in range(n)), RationalPoly.zero())
         for j in range(n)]
        for i in range(n)
    ]


def charpoly_path(path):
    """Characteristic polynomial det(y I - V(t)* V(t)) with exact arithmetic.

    Uses Newton's identities on the exact power traces of the Gram matrix,
    so every coefficient is an exact Gaussian-rational polynomial in t.  The
    result is monic in y of degree equal to the number of columns.
    """
    gram = _gram_entries(path)
    m = len(gram)
    traces = []
    power = gram
    for _ in range(m):
        traces.append(sum((power[i][i] for i in range(m)), RationalPoly.zero()))
        power = _poly_mat_mul(power, gram)
    # elementary symmetric functions from power sums
    elem = [RationalPoly.one()]
    for k in range(1, m + 1):
        acc = RationalPoly.zero()
        for i in range(1, k + 1):
            term = elem[k - i] * traces[i - 1]
            acc = acc + (term if i % 2 == 1 else -term)
        elem.append(acc.scale(Fraction(1, k)))
    coeffs = [RationalPoly.zero()] * (m + 1)
    for k in range(m + 1):
        c = elem[k] if k % 2 == 0 else -elem[k]
        coeffs[m - k] = c
    return BivariatePolynomial(coeffs)


@dataclass(frozen=True)
class PuiseuxBranchReport:
    """Branch data of the top eigenvalue branch at t = 0+.

    ``leading_exponent`` and ``leading_coefficient`` describe the first
    nonconstant term of the branch; both are zero for a constant branch.
    """

    K: int
    leading_exponent: Fraction
    leading_coefficient: complex

    def __post_init__(self):
        object.__setattr__(self, "leading_exponent", Fraction(self.leading_exponent))
        if self.K < 1:
            raise ValueError("branching index must be positive")
        if self.leading_exponent < 0 or self.K % self.leading_exponent.denominator:
            raise ValueError("leading exponent denominator must divide K")


def _exact_top_root_at_zero(poly):
    """Largest real root of an exact univariate polynomial, as a Fraction.

    Rational roots are found and divided out exactly; the remaining factor
    is inspected numerically.  The top root must be rational for the polygon
    iteration to shift exactly, so a larger irrational real root raises
    PuiseuxError.  (Numeric multiple roots split by roughly machine-epsilon
    to the power 1/multiplicity, hence the loose realness threshold on the
    deflated factor.)
    """
    exact = rational_roots(poly)
    if not exact:
        raise PuiseuxError("no rational eigenvalue at t = 0; exact shifting "
                           "is unavailable")
    top_rational = max(exact)
    residual = poly
    for r in exact:
        factor = RationalPoly([GaussianRational(-r), GaussianRational(1)])
        while True:
            quot, rem = residual.divmod(factor)
            if residual.degree >= 1 and rem.is_zero:
                residual = quot
            else:
                break
    if residual.degree >= 1:
        leftover = np.roots(list(reversed(residual.complex_coeffs())))
        for z in leftover:
            if abs(z.imag) < 1e-4 and z.real > float(top_rational) + 1e-9:
                raise PuiseuxError(
                    f"top eigenvalue near {z.real!r} at t = 0 is irrational; "
                    "exact shifting is unavailable"
                )
    return top_rational


def _lower_hull(points):
    """Lower convex hull of integer points sorted by first coordinate."""
    hull = []
    for pt in points:
        while len(hull) >= 2:
            (x1, y1), (x2, y2) = hull[-2], hull[-1]
            if (x2 - x1) * (pt[1] - y1) - (y2 - y1) * (pt[0] - x1) <= 0:
                hull.pop()
            else:
                break
        hull.append(pt)
    return hull


def _polygon_edges(biv):
    """Negative-slope edges of the Newton polygon of P(t, y) at the origin.

    Each edge is returned as (mu, q, p, E) with slope -mu = -p/q in lowest
    terms and E the polynomial whose roots z determine the leading
    coefficients c through c**q = z.
    """
    points = []
    for k, ck in enumerate(biv.coeffs):
        if not ck.is_zero:
            points.append((k, ck.valuation))
    hull = _lower_hull(points)
    edges = []
    for (k1, v1), (k2, v2) in zip(hull, hull[1:]):
        if v2 >= v1:
            continue
        mu = Fraction(v1 - v2, k2 - k1)
        p, q = mu.numerator, mu.denominator
        ecoeffs = []
        for j in range((k2 - k1) // q + 1):
            k = k1 + j * q
            v = v1 - j * p
            ecoeffs.append(biv.coeffs[k].coeff(v) if k < len(biv.coeffs) else 0)
        edges.append((mu, q, p, RationalPoly(ecoeffs)))
    return edges


def _real_branch_candidates(edges):
    """Real leading terms (mu, c, q, E, z0) available at this polygon level."""
    out = []
    for mu, q, p, epoly in edges:
        for z in np.roots(list(reversed(epoly.complex_coeffs()))):
            # multiple real roots split into conjugate pairs of spurious
            # width ~ eps**(1/multiplicity); exact gcd logic sorts the
            # multiplicities out later, so be generous here
            if abs(z.imag) > 1e-5 * max(1.0, abs(z)):
                continue  # genuinely complex: never carries the top real value
            z0 = z.real
            if q % 2 == 1:
                out.append((mu, math.copysign(abs(z0) ** (1.0 / q), z0), q, p, epoly, z0))
            elif z0 > 0:
                root = z0 ** (1.0 / q)
                out.append((mu, root, q, p, epoly, z0))
                out.append((mu, -root, q, p, epoly, z0))
    return out


def _term_gt(a, b):
    """Whether leading term a = (mu_a, c_a) dominates b at small t > 0.

    mu = None stands for the exactly-zero branch (value identically 0); a
    smaller exponent dominates when its coefficient is positive.
    """
    (mu_a, c_a), (mu_b, c_b) = a, b
    if mu_a is None and mu_b is None:
        return False
    if mu_a is None:
        return c_b < 0
    if mu_b is None:
        return c_a > 0
    if mu_a == mu_b:
        return c_a > c_b
    if mu_a < mu_b:
        return c_a > 0
    return c_b < 0


class _TermKey:
    """max() adaptor for the leading-term dominance order."""

    def __init__(self, cand):
        self.term = (cand[0], cand[1])

    def __lt__(self, other):
        return _term_gt(other.term, self.term)


def newton_puiseux_index(P, branch="top"):
    """Branching index and leading term of the top eigenvalue branch at 0+.

    Runs the Newton-polygon iteration on P(t, lambda_0 + nu) where lambda_0
    is the largest eigenvalue at t = 0.  Each level picks the edge and root
    whose leading term dominates for small positive t; a simple edge root
    ends the iteration (the branch continues with integer exponents from
    there on), while a multiple root triggers an exact substitution and a
    deeper level.  The branching index K is the product of the edge
    denominators encountered; the reported leading term is the first
    nonconstant term of the branch expansion.  Branches that agree as exact
    expansions terminate through the zero branch and report their common K.
    """
    if branch != "top":
        raise ValueError("only the top branch selection is implemented")
    zero_at_zero = P.at_t_zero()
    if zero_at_zero.is_zero:
        raise DegenerateAtZero("P(0, y) vanishes identically")
    if not P.is_monic:
        raise ValueError("P must be monic in its eigenvalue variable")
    lam0 = _exact_top_root_at_zero(zero_at_zero)
    work = P.shift_y(GaussianRational(lam0))

    K = 1
    denom = 1             # product of the q's applied so far
    offset = Fraction(0)  # accumulated exponent of the terms already fixed
    first_term = None     # (exponent, coefficient) of first nonconstant term

    for _ in range(64):
        candidates = list(_real_branch_candidates(_polygon_edges(work)))
        has_zero_branch = work.coeffs[0].is_zero
        if not candidates and not has_zero_branch:
            raise PuiseuxError("no real branch tends to the top eigenvalue")
        chosen = max(candidates, key=_TermKey) if candidates else None
        if has_zero_branch and chosen is not None:
            if not _term_gt((chosen[0], chosen[1]), (None, 0.0)):
                chosen = None
        if chosen is None:
            # the exactly-zero branch dominates: the expansion terminates
            if first_term is None:
                return PuiseuxBranchReport(K, Fraction(0), 0j)
            return PuiseuxBranchReport(K, first_term[0], first_term[1])

        mu, c_float, q, p, epoly, z0 = chosen
        exponent_global = offset + Fraction(p, q * denom)

        gcd_poly = epoly.monic().gcd(epoly.derivative())
        scale = max(abs(complex(co)) for co in epoly.coeffs)
        is_multiple = (
            gcd_poly.degree > 0
            and abs(gcd_poly.eval_complex(z0)) < 1e-6 * max(1.0, scale)
        )

        if not is_multiple:
            K *= q
            if first_term is None:
                first_term = (exponent_global, complex(c_float))
            return PuiseuxBranchReport(K, first_term[0], first_term[1])

        # multiple root: substitute exactly and refine at the next level
        z_exact = _match_rational_root(gcd_poly, z0)
        c_exact = _exact_branch_coefficient(z_exact, q, c_float)
        work = work.substitute_puiseux(q, p, GaussianRational(c_exact))
        K *= q
        denom *= q
        offset += Fraction(p, denom)
        if first_term is None and c_exact != 0:
            first_term = (exponent_global, complex(float(c_exact)))
    raise PuiseuxError("Newton polygon iteration did not terminate")


def _match_rational_root(gcd_poly, z0):
    roots = rational_roots(gcd_poly)
    matches = [r for r in roots if abs(float(r) - z0) < 1e-6]
    if not matches:
        raise PuiseuxError(
            f"multiple edge root near {z0!r} is not rational; exact recursion "
            "is unavailable"
        )
    return min(matches, key=lambda r: abs(float(r) - z0))


def _exact_branch_coefficient(z_exact, q, c_float):
    root = rational_nth_root(z_exact, q)
    if root is None:
        raise PuiseuxError(
            f"edge root {z_exact} has no rational {q}-th root; exact recursion "
            "is unavailable"
        )
    return root if c_float >= 0 else -root


def _nonzero_discriminant_roots(P):
    """Numeric nonzero roots of the discriminant, with the exact t**m factor
    stripped first so that spurious near-zero clusters cannot appear."""
    disc = P.discriminant()
    if disc.is_zero:
        raise BranchPointOnCircle(
            "discriminant vanishes identically (repeated eigenvalue branch)"
        )
    deflated = disc.shift_down(disc.valuation)
    if deflated.degree == 0:
        return np.array([], dtype=complex)
    return np.roots(list(reversed(deflated.complex_coeffs())))


def monodromy_branch_index(P, radius, steps=512, collision_tol=1e-8):
    """Cycle length of the top branch under analytic continuation around 0.

    The roots of P(t, .) are tracked along the circle |t| = radius with a
    fixed-step predictor-corrector (fresh roots at each step, matched to the
    previous step by optimal assignment).  The branch starting at the root
    with the largest real part at t = radius is followed; the cycle length
    of the final root permutation through that branch is returned.

    The radius must not enclose or touch any branch point other than 0,
    which is checked through the roots of the exact discriminant.
    """
    if radius <= 0:
        raise ValueError("radius must be positive")
    if P.degree_y < 1:
        raise ValueError("P must depend on the eigenvalue variable")
    bad = _nonzero_discriminant_roots(P)
    if len(bad):
        closest = min(abs(b) for b in bad)
        if closest <= radius * (1.0 + 1e-9):
            raise BranchPointOnCircle(
                f"branch point at |t| = {closest:.6g} lies within the circle "
                f"of radius {radius}"
            )

    def roots_at(t):
        coeffs = list(reversed(P.eval_t(t)))
        return np.roots(coeffs)

    start = roots_at(radius)
    m = len(start)
    if m == 1:
        return 1
    selected = int(np.lexsort((-start.imag, -start.real))[0])
    current = start.copy()
    for j in range(1, steps + 1):
        t = radius * np.exp(2j * np.pi * j / steps)
        fresh = roots_at(t)
        dist = np.abs(current[:, None] - fresh[None, :])
        rows, cols = linear_sum_assignment(dist)
        new = np.empty_like(current)
        new[rows] = fresh[cols]
        # collision guard: the matching is meaningless if roots merge
        for a in range(m):
            for b in range(a + 1, m):
                if abs(new[a] - new[b]) < collision_tol:
                    raise BranchPointOnCircle(
                        f"root collision within {collision_tol} at step {j}"
                    )
        current = new
    # match the final configuration back to the start to read the permutation
    dist = np.abs(current[:, None] - start[None, :])
    rows, cols = linear_sum_assignment(dist)
    perm = np.empty(m, dtype=int)
    perm[rows] = cols
    # cycle length through the selected branch
    length = 1
    k = perm[selected]
    while k != selected:
        k = perm[k]
        length += 1
    return length


@dataclass(frozen=True)
class SmoothnessReport:
    K: int
    fit_residual: float
    naive_residual: float
    epsilon: float


def _distance_smoothness_index(P):
    """Branching index of arctanh(sqrt(top eigenvalue)) in t.

    The square root composes with the Puiseux parameter: with a vanishing
    eigenvalue at t = 0 the leading exponent mu is halved, so the index
    becomes lcm(denominator(mu/2), K); a positive eigenvalue keeps K.
    """
    report = newton_puiseux_index(P)
    lam0 = _exact_top_root_at_zero(P.at_t_zero())
    if report.leading_coefficient == 0:
        return 1, report
    if lam0 > 0:
        return report.K, report
    half = report.leading_exponent / 2
    return math.lcm(half.denominator, report.K), report


def _fit_residual(ts, ds, K, degree):
    us = np.power(ts, 1.0 / K)
    u_scale = us[-1] if us[-1] > 0 else 1.0
    coeffs = np.polyfit(us / u_scale, ds, degree)
    return float(np.max(np.abs(np.polyval(coeffs, us / u_scale) - ds)))


def _top_eigenvalue_numeric(P, t):
    roots = np.roots(list(reversed(P.eval_t(t))))
    real = [r.real for r in roots if abs(r.imag) < 1e-7]
    if not real:
        raise PuiseuxError(f"no real eigenvalue at t = {t}")
    return max(real)


def smoothness_report_from_charpoly(P, epsilon, samples=64, fit_degree=8):
    """Smoothness certificate computed from a characteristic polynomial.

    Samples d(t) = arctanh(sqrt(top eigenvalue)) on [0, epsilon], fits a
    polynomial of the given degree in u = t**(1/K) with K from the polygon
    analysis, and reports the maximal sample residual together with the
    residual of the naive fit in t itself.
    """
    if epsilon <= 0:
        raise ValueError("epsilon must be positive")
    K, _ = _distance_smoothness_index(P)
    ts = np.linspace(0.0, epsilon, samples)
    ds = []
    for t in ts:
        lam = _top_eigenvalue_numeric(P, float(t))
        lam = max(lam, 0.0)
        top = math.sqrt(lam)
        if top > 1.0 - BALL_MARGIN:
            raise BoundaryHit(f"norm {top} at t = {t} is not inside the ball")
        ds.append(math.atanh(top))
    ds = np.array(ds)
    return SmoothnessReport(
        K=K,
        fit_residual=_fit_residual(ts, ds, K, fit_degree),
        naive_residual=_fit_residual(ts, ds, 1, fit_degree),
        epsilon=float(epsilon),
    )


def smoothness_report(path, epsilon, samples=64, fit_degree=8):
    """Smoothness certificate for the distance along a polynomial path.

    The branching index comes from the exact characteristic polynomial; the
    distance samples come directly from the singular values of V(t).  Raises
    BoundaryHit when any sample leaves the open ball.
    """
    if epsilon <= 0:
        raise ValueError("epsilon must be positive")
    P = charpoly_path(path)
    K, _ = _distance_smoothness_index(P)
    ts = np.linspace(0.0, epsilon, samples)
    ds = []
    for t in ts:
        norm = operator_norm(path.evaluate(float(t)))
        if norm > 1.0 - BALL_MARGIN:
            raise BoundaryHit(f"operator norm {norm} at t = {t} leaves the ball")
        ds.append(math.atanh(norm))
    ds = np.array(ds)
    return SmoothnessReport(
        K=K,
        fit_residual=_fit_residual(ts, ds, K, fit_degree),
        naive_residual=_fit_residual(ts, ds, 1, fit_degree),
        epsilon=float(epsilon),
    )
