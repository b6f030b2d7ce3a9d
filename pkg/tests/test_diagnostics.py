import math

import numpy as np
import pytest

from hadamardprox import (EuclideanSpace, GeometryError, HyperboloidSpace,
                          InsufficientDataError, SpiderTreeSpace, Trace,
                          TraceRecord, TreePoint, Xoshiro256StarStar,
                          asymptotic_center, certify, condition_I_check,
                          dist_to_solution_series, euclidean_min_enclosing_ball,
                          fejer_certificate, residual_series)

from conftest import euclid_pt, hyper_pt

E1 = EuclideanSpace(1)


def _record(n, x, d_xz=0.0, d_Tx=(0.0,)):
    x = np.asarray(x, dtype=float)
    return TraceRecord(n=n, x=x, z=x, d_xz=d_xz, d_Tx=list(d_Tx),
                       f_x=0.0, f_z=0.0, alpha=0.5, k=1.0, wall_time=0.0)


def _trace_from_xs(xs, **kw):
    t = Trace(status="converged")
    for n, x in enumerate(xs, start=1):
        t.records.append(_record(n, x, **kw))
    return t


def test_fejer_geometric_decay_passes():
    # d(x_n, 0) = 2 * 2^-(n-1): strictly decreasing, zero increments
    xs = [[2.0 * 0.5 ** (n - 1)] for n in range(1, 40)]
    rep = fejer_certificate(_trace_from_xs(xs), np.array([0.0]), E1, nonexpansive=True)
    assert rep.passed and rep.max_increment <= 0.0
    assert rep.tail_oscillation <= 1e-6


def test_fejer_constant_trace():
    xs = [[1.0]] * 15
    rep = fejer_certificate(_trace_from_xs(xs), np.array([0.0]), E1, nonexpansive=True)
    assert rep.passed and rep.max_increment == 0.0 and rep.tail_oscillation == 0.0


def test_fejer_injected_jump_fails():
    # negative control: bump the distance up by 0.1 at iteration 50
    xs = [[2.0 * 0.5 ** (n - 1)] for n in range(1, 100)]
    xs[50] = [xs[50][0] + 0.1]
    rep = fejer_certificate(_trace_from_xs(xs), np.array([0.0]), E1, nonexpansive=True)
    assert not rep.passed and rep.max_increment >= 0.1 - 1e-12


def test_fejer_summable_slack_fit():
    # one genuine increase covered by a declared slack sequence
    xs = [[1.0], [1.2], [1.1], [1.0], [0.9], [0.5], [0.2], [0.1], [0.05], [0.01]]
    lam = [1.0] + [0.0] * 8
    rep = fejer_certificate(_trace_from_xs(xs), np.array([0.0]), E1,
                            lam_sums=lam, mu_sums=[0.0] * 9, tail_osc_tol=0.1)
    assert rep.feasible and rep.passed
    # minimal A: increment 0.2 against lam*d + lam = 1*1 + 1 = 2
    assert abs(rep.fit_scale - 0.1) <= 1e-12
    assert abs(rep.sum_B - 0.1) <= 1e-12 and abs(rep.sum_C - 0.1) <= 1e-12


def test_fejer_infeasible_without_slack():
    xs = [[1.0], [1.2]] + [[0.5]] * 10
    rep = fejer_certificate(_trace_from_xs(xs), np.array([0.0]), E1,
                            lam_sums=[0.0] * 11, mu_sums=[0.0] * 11)
    assert not rep.feasible and not rep.passed
    assert rep.fit_scale is None


def test_fejer_short_trace_raises():
    with pytest.raises(InsufficientDataError):
        fejer_certificate(_trace_from_xs([[1.0], [0.5]]), np.array([0.0]), E1)


def test_residual_series():
    t = Trace()
    t.records.append(_record(1, [0.0], d_xz=0.5, d_Tx=[0.1, 0.3]))
    t.records.append(_record(2, [0.0], d_xz=0.25, d_Tx=[0.0, 0.1]))
    xz, tx = residual_series(t)
    assert xz == [0.5, 0.25] and tx == [0.3, 0.1]
    with pytest.raises(InsufficientDataError):
        residual_series(Trace())


def test_dist_to_solution_series():
    t = _trace_from_xs([[0.0], [1.0], [3.0]])
    d = dist_to_solution_series(t, [np.array([2.0]), np.array([-1.0])], E1)
    assert d == [1.0, 1.0, 1.0]
    with pytest.raises(GeometryError):
        dist_to_solution_series(t, [], E1)


def test_asymptotic_center_examples():
    e2 = EuclideanSpace(2)
    c, r = asymptotic_center(e2, [np.array([0.5, 0.5])])
    assert np.allclose(c, [0.5, 0.5]) and r == 0.0
    c, r = asymptotic_center(e2, [np.array([0.0, 0.0]), np.array([2.0, 0.0])])
    assert np.allclose(c, [1.0, 0.0], atol=1e-9) and abs(r - 1.0) <= 1e-9
    s = SpiderTreeSpace(3)
    c, r = asymptotic_center(s, [TreePoint(0, 1.0), TreePoint(1, 1.0)])
    assert c == s.origin() and abs(r - 1.0) <= 1e-12
    with pytest.raises(GeometryError):
        asymptotic_center(e2, [])


def test_asymptotic_center_hyperbolic_pair():
    h = HyperboloidSpace(2)
    a = h.from_spatial([math.sinh(1.0), 0.0])
    b = h.from_spatial([-math.sinh(1.0), 0.0])
    c, r = asymptotic_center(h, [a, b], tol=1e-8)
    assert h.distance(c, h.origin()) <= 1e-4
    assert abs(r - 1.0) <= 1e-4


def test_min_enclosing_ball_against_enumeration():
    # oracle: try circumballs of every subset of size <= 3 and keep the
    # smallest one that covers all points
    def oracle(pts):
        from itertools import combinations
        from hadamardprox.diagnostics import _euclidean_circumball

        best = (math.inf, None)
        for size in (1, 2, 3):
            for sub in combinations(pts, size):
                c, r = _euclidean_circumball(list(sub))
                if c is None:
                    continue
                r = max(np.linalg.norm(p - c) for p in pts)
                if r < best[0]:
                    best = (r, c)
        return best[1], best[0]

    rng = Xoshiro256StarStar(77)
    for _ in range(40):
        pts = [euclid_pt(rng, 2, scale=2.0) for _ in range(8)]
        c1, r1 = euclidean_min_enclosing_ball(pts)
        c2, r2 = oracle(pts)
        assert abs(r1 - r2) <= 1e-9
        assert np.linalg.norm(c1 - c2) <= 1e-7


def test_condition_i_fit_and_negative_control():
    # residual = 0.5 * dist at every iteration: kappa = 0.5
    t = Trace()
    for n, xv in enumerate([4.0, 2.0, 1.0, 0.5], start=1):
        t.records.append(_record(n, [xv], d_xz=0.5 * xv, d_Tx=[0.0]))
    rep = condition_I_check(t, E1, [np.array([0.0])])
    assert rep.passed and abs(rep.kappa - 0.5) <= 1e-12
    # negative control: zero residual far from the solution set
    t2 = _trace_from_xs([[4.0], [4.0], [4.0]])
    rep2 = condition_I_check(t2, E1, [np.array([0.0])])
    assert not rep2.passed and rep2.kappa == 0.0
    # explicit g violated at the first iteration
    rep3 = condition_I_check(t2, E1, [np.array([0.0])], g=lambda s: s)
    assert not rep3.passed and rep3.violating_index == 1


def test_certify_passing_and_failing_bundle():
    # synthetic geometric run annotated with matching residuals
    t = Trace(status="converged")
    for n in range(1, 101):
        xv = 2.0 * 0.5 ** (n - 1)
        t.records.append(_record(n, [xv], d_xz=0.5 * xv, d_Tx=[0.0]))
    # force an exact zero tail so the residual checks pass
    t.records.append(_record(101, [0.0], d_xz=0.0, d_Tx=[0.0]))
    sols = [np.array([0.0])]
    cert = certify(t, E1, sols, limit_point=np.array([0.0]), nonexpansive=True)
    assert cert.passed
    assert cert.residual_tail_xz == 0.0 and cert.residual_tail_T == 0.0
    assert cert.dist_final == 0.0 and cert.center_error <= 1e-4
    assert cert.condition_i.passed

    bad = Trace(status="unconverged")
    for n in range(1, 30):
        bad.records.append(_record(n, [1.0], d_xz=0.3, d_Tx=[0.2]))
    cert_bad = certify(bad, E1, sols, limit_point=np.array([0.0]), nonexpansive=True)
    assert not cert_bad.passed
    assert cert_bad.residual_tail_xz == 0.3 and cert_bad.dist_final == 1.0
