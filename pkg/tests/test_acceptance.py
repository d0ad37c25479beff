"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the report lines.
"""

import math
import random
import time
from collections import Counter

import numpy as np

from conftest import random_transitive_origami
from rigidity import chplane, data, flatsurf, symdom
from test_flatsurf import develop_oracle_counts


def _report(number, label, ok, detail=""):
    status = "PASS" if ok else "FAIL"
    print(f"ACCEPTANCE {number} {status}: {label}" + (f" ({detail})" if detail else ""))
    assert ok, f"criterion {number} failed: {label} {detail}"


def test_criterion_1_horocycle_distance():
    t0 = time.perf_counter()
    res = chplane.step2_verify()
    elapsed = time.perf_counter() - t0
    ok = (abs(res.dist - math.log(2)) < 1e-9
          and abs(res.intersection - 0.5) < 1e-9
          and elapsed < 1.0)
    _report(1, "horocycle crossing distance log 2, decay 1/2", ok,
            f"dist={res.dist:.12f}, intersection={res.intersection:.12f}, "
            f"time={elapsed:.3f}s")


def test_criterion_2_profile_refutes_constant_half():
    t0 = time.perf_counter()
    L3 = data.origami("l_shape_3")
    G = flatsurf.horizontal_multicurve(L3)
    samples = 360
    max_err = max(
        abs(flatsurf.intersection_profile(G, 2 * math.pi * j / samples)
            - 3 * abs(math.cos(math.pi * j / samples)))
        for j in range(samples)
    )
    ext = flatsurf.profile_nonconstancy(G, samples)
    elapsed = time.perf_counter() - t0
    ok = max_err < 1e-9 and ext.max - ext.min >= 2.9 and elapsed < 1.0
    _report(2, "rotation profile equals 3|cos(theta/2)|, spread >= 2.9", ok,
            f"max_err={max_err:.2e}, spread={ext.max - ext.min:.3f}, "
            f"time={elapsed:.3f}s")


def test_criterion_3_mass_identity():
    results = []
    for name in data.origami_names():
        o = data.origami(name)
        assert o.n <= 6
        results.append(flatsurf.intersection_q_horizontal(o) == flatsurf.area(o))
    _report(3, "mass equals area exactly on all bundled origamis", all(results),
            f"{len(results)} origamis")


def test_criterion_4_flow_formula():
    L3 = data.origami("l_shape_3")
    worst = 0.0
    for t in np.linspace(-1.0, 1.0, 5):
        for s in np.linspace(-1.0, 1.0, 5):
            got = flatsurf.extremal_length_flowed(L3, float(t), float(s))
            worst = max(worst, abs(got - math.exp(2 * (t - s))))
    _report(4, "flowed extremal length matches e^{2(t-s)} on a 5x5 grid",
            worst < 1e-12, f"worst={worst:.2e}")


def test_criterion_5_busemann_limit_validation():
    rnd = random.Random(501)
    xi = chplane.BoundaryPoint(0.6, 0.8)
    worst = 0.0
    for _ in range(50):
        while True:
            z = 0.8 * (rnd.uniform(-1, 1) + 1j * rnd.uniform(-1, 1))
            w = 0.8 * (rnd.uniform(-1, 1) + 1j * rnd.uniform(-1, 1))
            if abs(z) ** 2 + abs(w) ** 2 < 0.64:
                break
        p = chplane.BallPoint(z, w)
        worst = max(worst, abs(chplane.busemann(xi, p)
                               - chplane.busemann_limit(xi, p, 20.0)))
    _report(5, "closed-form Busemann matches the t=20 limit on 50 points",
            worst < 1e-8, f"worst={worst:.2e}")


def test_criterion_6_kobayashi_formula():
    err_half = abs(symdom.kobayashi_distance_origin(np.diag([0.5, 0.0]))
                   - 0.5 * math.log(3))
    worst = 0.0
    for a in np.linspace(0.0, 0.95, 10):
        for b in np.linspace(0.0, 0.95, 10):
            worst = max(worst, abs(
                symdom.kobayashi_distance_origin(np.diag([a, b]))
                - max(math.atanh(a), math.atanh(b))
            ))
    ok = err_half < 1e-12 and worst < 1e-12
    _report(6, "distance formula at norm 1/2 and bidisk sup-metric identity",
            ok, f"err_half={err_half:.2e}, worst_grid={worst:.2e}")


def test_criterion_7_puiseux_oracles():
    t0 = time.perf_counter()
    expected_k = {"sqrt_branch": 2, "shifted_double_root": 2, "analytic_pair": 1}
    ok = True
    details = []
    for name in data.charpoly_names():
        P = data.charpoly(name)
        k_polygon = symdom.newton_puiseux_index(P).K
        k_loop = symdom.monodromy_branch_index(P, 0.005)
        rep = symdom.smoothness_report_from_charpoly(P, 0.05)
        ok &= k_polygon == k_loop == expected_k[name]
        ok &= rep.fit_residual < 1e-8
        if expected_k[name] == 2:
            ok &= rep.naive_residual > 1e-3
        details.append(f"{name}: K={k_polygon}, fit={rep.fit_residual:.1e}, "
                       f"naive={rep.naive_residual:.1e}")
    elapsed = time.perf_counter() - t0
    ok &= elapsed < 5.0
    _report(7, "polygon and monodromy agree; reparametrized fits certify",
            ok, "; ".join(details) + f"; time={elapsed:.2f}s")


def test_criterion_8_structural_invariants():
    rnd = random.Random(801)
    euler_ok = True
    for _ in range(20):
        o = random_transitive_origami(rnd, 2, 8)
        euler_ok &= o.vertex_count - o.n == 2 - 2 * o.genus
        euler_ok &= sum(k - 1 for k in o.cone_angles) == 2 * o.genus - 2
    enum_ok = True
    for name in data.origami_names():
        o = data.origami(name)
        got = Counter(
            (int(s.holonomy.real), int(s.holonomy.imag))
            for s in flatsurf.saddle_connections(o, 6.0)
        )
        enum_ok &= got == develop_oracle_counts(o, 6.0)
    _report(8, "Euler identity on 20 random origamis; enumeration matches "
               "the development oracle up to length 6", euler_ok and enum_ok)


def test_criterion_9_isometry_invariance():
    rng = np.random.default_rng(901)
    rnd = random.Random(901)
    worst = 0.0
    for _ in range(100):
        iso = chplane.random_isometry(rng)
        pts = []
        while len(pts) < 2:
            z = 0.8 * (rnd.uniform(-1, 1) + 1j * rnd.uniform(-1, 1))
            w = 0.8 * (rnd.uniform(-1, 1) + 1j * rnd.uniform(-1, 1))
            if abs(z) ** 2 + abs(w) ** 2 < 0.64:
                pts.append(chplane.BallPoint(z, w))
        p, q = pts
        worst = max(worst, abs(chplane.distance(iso(p), iso(q))
                               - chplane.distance(p, q)))
    _report(9, "100 random form-preserving matrices preserve distances",
            worst < 1e-9, f"worst={worst:.2e}")
