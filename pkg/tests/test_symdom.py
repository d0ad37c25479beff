import json
import math
import random
from fractions import Fraction

import numpy as np
import pytest

from rigidity import data
from rigidity.exactpoly import BivariatePolynomial, GaussianRational, RationalPoly
from rigidity.symdom import (
    BoundaryHit,
    BranchPointOnCircle,
    DegenerateAtZero,
    MatrixDomain,
    MatrixPoint,
    OnOrOutsideBoundary,
    PolynomialMatrixPath,
    PuiseuxError,
    charpoly_path,
    kobayashi_distance_origin,
    monodromy_branch_index,
    newton_puiseux_index,
    operator_norm,
    smoothness_report,
    smoothness_report_from_charpoly,
)


def biv(*rows):
    return BivariatePolynomial(
        [RationalPoly([GaussianRational(str(x)) for x in row]) for row in rows]
    )


SQRT_BRANCH = biv([0, -1], [], [1])                      # y^2 - t
SHIFTED = biv(["1/16"], ["-1/2", -1], [1])               # y^2 - (1/2 + t) y + 1/16
DIAG_PATH = PolynomialMatrixPath([
    [RationalPoly(["1/2", "1/4"]), RationalPoly.zero()],
    [RationalPoly.zero(), RationalPoly(["1/4"])],
])
ANALYTIC = charpoly_path(DIAG_PATH)                      # (y - (1/2 + t/4)^2)(y - 1/16)


# ---------------------------------------------------------------------------
# norms and distance
# ---------------------------------------------------------------------------

def test_operator_norm_examples():
    assert operator_norm(np.diag([0.5, 0.3])) == 0.5
    assert operator_norm(np.zeros((2, 2))) == 0.0
    assert abs(operator_norm(0.7 * np.array([[0, 1], [0, 0]])) - 0.7) < 1e-14


def test_operator_norm_bounds():
    rng = np.random.default_rng(5)
    for _ in range(30):
        m = rng.standard_normal((3, 4)) + 1j * rng.standard_normal((3, 4))
        norm = operator_norm(m)
        col = max(np.linalg.norm(m[:, j]) for j in range(4))
        fro = np.linalg.norm(m)
        assert col <= norm + 1e-12
        assert norm <= fro + 1e-12


def test_kobayashi_distance_closed_form():
    assert abs(kobayashi_distance_origin(np.diag([0.5, 0.1])) - 0.5 * math.log(3)) < 1e-12
    assert kobayashi_distance_origin(np.zeros((2, 2))) == 0.0


def test_kobayashi_bidisk_sup_metric():
    for a in np.linspace(0.0, 0.95, 10):
        for b in np.linspace(0.0, 0.95, 10):
            lhs = kobayashi_distance_origin(np.diag([a, b]))
            rhs = max(math.atanh(a), math.atanh(b))
            assert abs(lhs - rhs) < 1e-12


def test_kobayashi_monotone_in_norm():
    values = [kobayashi_distance_origin(np.diag([r, 0.0])) for r in np.linspace(0, 0.95, 25)]
    assert all(x < y for x, y in zip(values, values[1:]))


def test_boundary_rejected():
    with pytest.raises(OnOrOutsideBoundary):
        kobayashi_distance_origin(np.diag([1.0, 0.2]))
    with pytest.raises(OnOrOutsideBoundary):
        MatrixPoint(np.diag([1.0 - 1e-14, 0.0]))


def test_matrix_domain_membership():
    dom = MatrixDomain.bidisk()
    assert dom.dimension == 2
    pt = dom.point(np.diag([0.3, 0.6]))
    assert abs(pt.norm - 0.6) < 1e-12
    with pytest.raises(ValueError):
        dom.point(np.array([[0.1, 0.5], [0.0, 0.2]]))
    with pytest.raises(ValueError):
        MatrixDomain(2, 2, (np.eye(2), 2 * np.eye(2)))


# ---------------------------------------------------------------------------
# characteristic polynomials
# ---------------------------------------------------------------------------

def test_charpoly_diagonal_path():
    sq = RationalPoly(["1/2", "1/4"]) * RationalPoly(["1/2", "1/4"])
    expected = BivariatePolynomial([
        sq.scale("1/16"),
        -(sq + RationalPoly(["1/16"])),
        RationalPoly.one(),
    ])
    assert ANALYTIC == expected


def test_charpoly_shear_path():
    path = PolynomialMatrixPath([
        [RationalPoly(["1/2"]), RationalPoly([0, 1])],
        [RationalPoly.zero(), RationalPoly(["1/2"])],
    ])
    P = charpoly_path(path)
    expected = BivariatePolynomial([
        RationalPoly(["1/16"]),
        RationalPoly(["-1/2", 0, -1]),
        RationalPoly.one(),
    ])
    assert P == expected
    disc = P.discriminant()
    # vanishes to order 2: t^2 (t^2 + 1) up to a constant
    assert disc.valuation == 2
    assert disc.monic() == RationalPoly([0, 0, 1, 0, 1])


def test_charpoly_antidiagonal_path():
    path = PolynomialMatrixPath([
        [RationalPoly.zero(), RationalPoly(["1/2"])],
        [RationalPoly([0, "1/2"]), RationalPoly.zero()],
    ])
    P = charpoly_path(path)
    expected = BivariatePolynomial([
        RationalPoly([0, 0, "1/16"]),
        RationalPoly(["-1/4", 0, "-1/4"]),
        RationalPoly.one(),
    ])
    assert P == expected


def test_charpoly_conjugation_handles_complex_entries():
    # V = [[0, 1/2 + i t]]: V*V = diag-free 1x... gram = |1/2 + i t|^2 = 1/4 + t^2
    path = PolynomialMatrixPath([[RationalPoly.zero(),
                                  RationalPoly([GaussianRational("1/2"), GaussianRational(0, 1)])]])
    P = charpoly_path(path)
    assert P.degree_y == 2
    assert P.coeffs[1] == RationalPoly(["-1/4", 0, -1])
    assert P.coeffs[0].is_zero


def test_charpoly_numeric_agreement_with_singular_values():
    t0 = 0.25
    for path in (DIAG_PATH,
                 PolynomialMatrixPath([[RationalPoly(["1/2"]), RationalPoly([0, 1])],
                                       [RationalPoly.zero(), RationalPoly(["1/2"])]])):
        P = charpoly_path(path)
        roots = sorted(r.real for r in np.roots(list(reversed(P.eval_t(t0)))))
        svals = sorted(np.linalg.svd(path.evaluate(t0), compute_uv=False) ** 2)
        assert np.allclose(roots, svals, atol=1e-10)


def test_path_membership_checked_at_zero():
    with pytest.raises(OnOrOutsideBoundary):
        PolynomialMatrixPath([[RationalPoly([1, 1])]])


def test_path_json_round_trip():
    raw = [[[["1/2", "0"], ["1/4", "0"]], [["0", "0"]]],
           [[["0", "0"]], [["1/4", "0"]]]]
    path = PolynomialMatrixPath.from_json(raw)
    assert charpoly_path(path) == ANALYTIC


# ---------------------------------------------------------------------------
# newton polygon branch analysis
# ---------------------------------------------------------------------------

def test_puiseux_square_root_branch():
    rep = newton_puiseux_index(SQRT_BRANCH)
    assert rep.K == 2
    assert rep.leading_exponent == Fraction(1, 2)
    assert abs(rep.leading_coefficient - 1.0) < 1e-9


def test_puiseux_shifted_double_root():
    rep = newton_puiseux_index(SHIFTED)
    assert rep.K == 2
    assert rep.leading_exponent == Fraction(1, 2)
    assert abs(rep.leading_coefficient - 0.5) < 1e-9


def test_puiseux_analytic_branch():
    rep = newton_puiseux_index(ANALYTIC)
    assert rep.K == 1
    assert rep.leading_exponent == 1
    assert abs(rep.leading_coefficient - 0.25) < 1e-9


def test_puiseux_constant_top_branch():
    rep = newton_puiseux_index(biv([2], [-3], [1]))  # (y - 1)(y - 2)
    assert rep.K == 1
    assert rep.leading_exponent == 0
    assert rep.leading_coefficient == 0


def test_puiseux_deeper_recursion():
    # (y - t)^2 - t^3: leading term t, splitting at order t^{3/2}
    rep = newton_puiseux_index(biv([0, 0, 1, -1], [0, -2], [1]))
    assert rep.K == 2
    assert rep.leading_exponent == 1
    assert abs(rep.leading_coefficient - 1.0) < 1e-9


def test_puiseux_identical_branches_report_common_index():
    rep = newton_puiseux_index(biv([0, 0, 1], [], [0, -2], [], [1]))  # (y^2 - t)^2
    assert rep.K == 2
    assert rep.leading_exponent == Fraction(1, 2)


def test_puiseux_zero_branch_selection():
    rep = newton_puiseux_index(biv([], [0, -1], [1]))  # y (y - t): top is +t
    assert rep.K == 1 and abs(rep.leading_coefficient - 1.0) < 1e-9
    rep = newton_puiseux_index(biv([], [0, 1], [1]))   # y (y + t): top is 0
    assert rep.K == 1 and rep.leading_coefficient == 0


def test_puiseux_degenerate_rejected():
    with pytest.raises(DegenerateAtZero):
        newton_puiseux_index(biv([0, 1], [0, 1]))  # t y + t
    with pytest.raises(ValueError):
        newton_puiseux_index(biv([1], [0, 1], [2]))  # not monic
    with pytest.raises(PuiseuxError):
        newton_puiseux_index(biv([-2], [0], [1]))  # y^2 = 2: irrational top


# ---------------------------------------------------------------------------
# monodromy oracle
# ---------------------------------------------------------------------------

def test_monodromy_examples():
    assert monodromy_branch_index(SQRT_BRANCH, 0.01) == 2
    assert monodromy_branch_index(biv([2], [-3], [1]), 0.1) == 1
    assert monodromy_branch_index(SHIFTED, 0.01) == 2
    assert monodromy_branch_index(ANALYTIC, 0.01) == 1


def test_monodromy_rejects_enclosed_branch_point():
    # y^2 - (t - 1/200) has its only branch point at t = 1/200, inside r=0.01
    with pytest.raises(BranchPointOnCircle):
        monodromy_branch_index(biv(["1/200", -1], [], [1]), 0.01)


def test_monodromy_rejects_repeated_factor():
    with pytest.raises(BranchPointOnCircle):
        monodromy_branch_index(biv([0, 0, 1], [0, -2], [1]), 0.01)  # (y - t)^2


def test_oracle_agreement_on_bundled_polynomials():
    for name in data.charpoly_names():
        P = data.charpoly(name)
        assert newton_puiseux_index(P).K == monodromy_branch_index(P, 0.005)


def test_oracle_agreement_on_random_quadratics():
    # monic quadratics in y with small integer t-coefficients; radius kept
    # inside the nearest branch point, skipping degenerate draws
    rnd = random.Random(77)
    checked = 0
    while checked < 10:
        b = RationalPoly([rnd.randint(-2, 2), rnd.randint(-2, 2)])
        c = RationalPoly([rnd.randint(-2, 2), rnd.randint(-2, 2), rnd.randint(-2, 2)])
        P = BivariatePolynomial([c, b, RationalPoly.one()])
        try:
            k_polygon = newton_puiseux_index(P).K
            k_loop = monodromy_branch_index(P, 0.003)
        except (PuiseuxError, BranchPointOnCircle, DegenerateAtZero):
            continue
        assert k_polygon == k_loop
        checked += 1


# ---------------------------------------------------------------------------
# smoothness reports
# ---------------------------------------------------------------------------

def test_smoothness_analytic_diagonal_path():
    rep = smoothness_report(DIAG_PATH, 0.1)
    assert rep.K == 1
    assert rep.fit_residual < 1e-8


def test_smoothness_injected_square_root_case():
    rep = smoothness_report_from_charpoly(SHIFTED, 0.1)
    assert rep.K == 2
    assert rep.fit_residual < 1e-8
    assert rep.naive_residual > 1e-3


def test_smoothness_constant_path():
    path = PolynomialMatrixPath([
        [RationalPoly(["1/2"]), RationalPoly.zero()],
        [RationalPoly.zero(), RationalPoly(["1/4"])],
    ])
    rep = smoothness_report(path, 0.1)
    assert rep.K == 1
    assert rep.fit_residual < 1e-12


def test_smoothness_zero_start_path():
    # V(t) = t diag(1/2, 1/4): vanishing top eigenvalue with even exponent,
    # so the distance is analytic in t despite lam(0) = 0
    path = PolynomialMatrixPath([
        [RationalPoly([0, "1/2"]), RationalPoly.zero()],
        [RationalPoly.zero(), RationalPoly([0, "1/4"])],
    ])
    rep = smoothness_report(path, 0.5)
    assert rep.K == 1
    assert rep.fit_residual < 1e-8


def test_smoothness_quarter_power_case():
    # top eigenvalue t^{1/2} at lam(0) = 0: distance behaves like t^{1/4}
    rep = smoothness_report_from_charpoly(SQRT_BRANCH, 0.05)
    assert rep.K == 4
    assert rep.fit_residual < 1e-8
    assert rep.naive_residual > 1e-3


def test_smoothness_boundary_hit():
    path = PolynomialMatrixPath([
        [RationalPoly(["1/2", 1]), RationalPoly.zero()],
        [RationalPoly.zero(), RationalPoly(["1/4"])],
    ])
    with pytest.raises(BoundaryHit):
        smoothness_report(path, 1.0)


def test_smoothness_monotone_distance_for_radial_path():
    P = charpoly_path(DIAG_PATH)
    ts = np.linspace(0.0, 0.1, 30)
    ds = [kobayashi_distance_origin(DIAG_PATH.evaluate(float(t))) for t in ts]
    assert all(x <= y + 1e-12 for x, y in zip(ds, ds[1:]))
    assert newton_puiseux_index(P).K == 1
