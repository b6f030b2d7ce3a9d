"""End-to-end acceptance suite.

Each test covers one acceptance criterion at its stated tolerance and prints a
single PASS line on success (pytest shows the assertion context on failure).
Oracles used here are independent of the library code under test: enumeration
for minimal enclosing balls, direct geodesic gradient descent for the
hyperbolic mean, and hand-built synthetic traces for the negative controls.
"""

import math
import time

import numpy as np
import pytest

from hadamardprox import (EuclideanSpace, ExperimentConfig, HyperboloidSpace,
                          ResolventConfig, SpiderTreeSpace, Trace, TraceRecord,
                          TreePoint, Xoshiro256StarStar, apply,
                          asymptotic_center, ball_indicator, ball_projection,
                          distance_to, euclidean_rotation, fejer_certificate,
                          fit_lambda_sequence, goebel_kirk_ball,
                          half_squared_distance, hyperbolic_rotation,
                          identity_map, identity_xi, point_projection,
                          ray_permutation, resolvent,
                          resolvent_identity_residual, run_experiment,
                          subdiff_inequality_residual, sum_of_distances,
                          tan_violation_sweep, weighted_squared_mean)

from conftest import euclid_pt, hyper_pt, tree_pt

SCENARIOS = ("gk-ball-8d", "hyp-frechet", "proj-point-2d", "quad-1d",
             "rot-proj-2d", "tree-median")


@pytest.fixture(scope="module")
def scenario_results():
    """One deterministic run per bundled scenario, shared across criteria."""
    out = {}
    for name in SCENARIOS:
        out[name] = run_experiment(ExperimentConfig(scenario=name), write_files=False)
    return out


def test_criterion_1_cat0_geometry():
    t0 = time.perf_counter()
    e3, h2, s4 = EuclideanSpace(3), HyperboloidSpace(2), SpiderTreeSpace(4)

    # numpy's generator keeps the sampling fast enough for the time budget
    def sample_euclid(g):
        return g.standard_normal(3)

    def sample_hyper(g):
        # within hyperbolic distance 2.5 of the apex, so pairwise distances <= 5
        v = g.standard_normal(2)
        v *= g.uniform(0.0, 2.5) / max(np.linalg.norm(v), 1e-12)
        return h2.exp(h2.origin(), np.concatenate(([0.0], v)))

    def sample_tree(g):
        return TreePoint(int(g.integers(4)), g.uniform(0.0, 1.5))

    backends = [
        ("euclidean", e3, sample_euclid, 1e-12),
        ("hyperbolic", h2, sample_hyper, 1e-7),
        ("tree", s4, sample_tree, 1e-9),
    ]
    for label, space, sample, tol in backends:
        g = np.random.default_rng(101)
        worst = -math.inf
        worst_add = 0.0
        for _ in range(10_000):
            x, y, z = sample(g), sample(g), sample(g)
            t = g.uniform()
            worst = max(worst, space.cat0_defect(x, y, z, t))
            p = space.combine(x, y, t)
            d = space.distance(x, y)
            gap = abs(space.distance(x, p) + space.distance(p, y) - d)
            worst_add = max(worst_add, gap / max(d, 1.0))
        assert worst <= tol, f"{label}: defect {worst} > {tol}"
        assert worst_add <= 1e-9, f"{label}: additivity {worst_add} > 1e-9"
    elapsed = time.perf_counter() - t0
    assert elapsed < 5.0
    print(f"PASS criterion 1: CAT(0) defects within tolerance on 3x10^4 triples "
          f"({elapsed:.2f}s)")


def _objective_catalog():
    e2 = EuclideanSpace(2)
    h2 = HyperboloidSpace(2)
    s3 = SpiderTreeSpace(3)
    rng = Xoshiro256StarStar(3)
    anchors_h = [hyper_pt(rng, h2, 1.0) for _ in range(3)]
    return [
        (e2, half_squared_distance(e2, np.array([1.0, -0.5])),
         lambda r: euclid_pt(r, 2)),
        (e2, distance_to(e2, np.array([0.5, 0.5])), lambda r: euclid_pt(r, 2)),
        (e2, ball_indicator(e2, np.zeros(2), 1.5), lambda r: euclid_pt(r, 2)),
        (e2, weighted_squared_mean(e2, [np.array([1.0, 0.0]), np.array([0.0, 2.0])],
                                   [0.3, 0.7]), lambda r: euclid_pt(r, 2)),
        (h2, half_squared_distance(h2, anchors_h[0]), lambda r: hyper_pt(r, h2)),
        (h2, weighted_squared_mean(h2, anchors_h, [1 / 3] * 3),
         lambda r: hyper_pt(r, h2)),
        (s3, distance_to(s3, TreePoint(0, 1.0)), lambda r: tree_pt(r, s3)),
        (s3, sum_of_distances(s3, [TreePoint(i, 1.0) for i in range(3)]),
         lambda r: tree_pt(r, s3)),
    ]


def test_criterion_2_resolvent_suite():
    t0 = time.perf_counter()
    catalog = _objective_catalog()
    rng = Xoshiro256StarStar(202)

    # subdifferential inequality: residual <= 1e-6 over 100 probes per
    # (objective, k in {0.1, 1, 10})
    worst_sub = -math.inf
    for space, f, sample in catalog:
        for k in (0.1, 1.0, 10.0):
            x = f.sample_finite(space, rng)
            jx = resolvent(space, f, ResolventConfig(k=k), x)
            for _ in range(100):
                y = f.sample_finite(space, rng)
                worst_sub = max(worst_sub,
                                subdiff_inequality_residual(space, f, k, x, y, jx))
    assert worst_sub <= 1e-6

    # resolvent composition identity: 100 random (k, eta) with k > eta > 0
    worst_id = -math.inf
    cfg = ResolventConfig()
    for i in range(100):
        space, f, sample = catalog[i % len(catalog)]
        eta = rng.uniform(0.05, 1.0)
        k = eta + rng.uniform(0.05, 2.0)
        x = f.sample_finite(space, rng)
        worst_id = max(worst_id, resolvent_identity_residual(space, f, k, eta, x, cfg))
    assert worst_id <= 1e-6

    # nonexpansiveness on 10^3 pairs (distributed over the catalog); the
    # numeric solvers get a tight inner tolerance so their own error does
    # not consume the 1e-8 budget
    fast = ResolventConfig(k=1.0, validate_probes=0, inner_tol=1e-12)
    worst_ne = -math.inf
    for space, f, sample in catalog:
        for _ in range(125):
            x, y = sample(rng), sample(rng)
            jx, jy = resolvent(space, f, fast, x), resolvent(space, f, fast, y)
            worst_ne = max(worst_ne, space.distance(jx, jy) - space.distance(x, y))
    assert worst_ne <= 1e-8

    # fixed points of J_k are exactly the declared minimizers
    worst_fp = 0.0
    for space, f, _ in catalog:
        for p in f.minimizers:
            for k in (0.1, 1.0, 10.0):
                jp = resolvent(space, f, ResolventConfig(k=k), p)
                worst_fp = max(worst_fp, space.distance(jp, p))
    assert worst_fp <= 1e-8

    elapsed = time.perf_counter() - t0
    assert elapsed < 30.0
    print(f"PASS criterion 2: resolvent certificates (subdiff {worst_sub:.2e}, "
          f"identity {worst_id:.2e}, nonexpansive {worst_ne:.2e}, "
          f"fixed-point {worst_fp:.2e}) ({elapsed:.2f}s)")


def _mapping_catalog():
    e2 = EuclideanSpace(2)
    e8 = EuclideanSpace(8)
    h2 = HyperboloidSpace(2)
    s4 = SpiderTreeSpace(4)

    def ball_sampler(rng):
        x = euclid_pt(rng, 8)
        n = np.linalg.norm(x)
        return x / n if n > 1 else x

    return [
        (e2, identity_map(e2), lambda r: euclid_pt(r, 2)),
        (e2, ball_projection(e2, np.array([0.5, -0.5]), 1.0), lambda r: euclid_pt(r, 2)),
        (e2, point_projection(e2, np.array([1.0, 1.0])), lambda r: euclid_pt(r, 2)),
        (e2, euclidean_rotation(e2, np.array([1.0, 0.0]), 0.9), lambda r: euclid_pt(r, 2)),
        (h2, hyperbolic_rotation(h2, 2.0), lambda r: hyper_pt(r, h2)),
        (h2, ball_projection(h2, h2.origin(), 1.0), lambda r: hyper_pt(r, h2)),
        (s4, ray_permutation(s4, [3, 0, 1, 2]), lambda r: tree_pt(r, s4)),
        (s4, ball_projection(s4, s4.origin(), 1.0), lambda r: tree_pt(r, s4)),
        (e8, goebel_kirk_ball(e8), ball_sampler),
    ]


def test_criterion_3_tan_mapping_suite():
    rng = Xoshiro256StarStar(303)
    worst_overall = -math.inf
    for space, T, sample in _mapping_catalog():
        pairs = [(sample(rng), sample(rng)) for _ in range(1000)]
        v = tan_violation_sweep(space, T, 20, pairs)
        worst_overall = max(worst_overall, v)
        assert v <= 1e-9, f"{T.name}: TAN violation {v}"

    # the stretching map's slack sequence: fit it by sampling (with the
    # worst-case rim pair included) and check the recorded table dominates
    e8 = EuclideanSpace(8)
    gk = goebel_kirk_ball(e8)
    pairs = [(e8.random_point(rng), e8.random_point(rng)) for _ in range(200)]
    pairs = [(x / max(np.linalg.norm(x), 1.0), y / max(np.linalg.norm(y), 1.0))
             for x, y in pairs]
    pairs.append((np.eye(8)[0], 0.99 * np.eye(8)[0]))
    fitted = fit_lambda_sequence(e8, gk.fn, 20, pairs, identity_xi())
    recorded = [gk.lam(n) for n in range(1, 21)]
    for lam_fit, lam_rec in zip(fitted, recorded):
        assert lam_fit <= lam_rec + 1e-9
    print(f"PASS criterion 3: TAN violations <= {worst_overall:.2e} over 20 powers; "
          f"fitted slack {fitted[:3]} recorded {recorded[:3]}")


def _hyperbolic_mean_oracle(space, anchors, weights, iters=200):
    """Independent geodesic gradient descent for the weighted squared mean."""
    c = anchors[0]
    for _ in range(iters):
        g = sum(w * space.log(c, a) for a, w in zip(anchors, weights))
        if space.tangent_norm(c, g) <= 1e-14:
            break
        c = space.exp(c, g)
    return c


def test_criterion_4_algorithm_convergence(scenario_results):
    t0 = time.perf_counter()
    budgets = {"quad-1d": 60, "rot-proj-2d": 500, "tree-median": 1000}
    for name, budget in budgets.items():
        res = scenario_results[name]
        assert res.status == "converged"
        assert res.iterations <= budget, f"{name}: {res.iterations} > {budget}"
        assert res.certificate.dist_final <= 1e-6, f"{name}: off target"

    hyp = scenario_results["hyp-frechet"]
    assert hyp.status == "converged"
    h2 = HyperboloidSpace(2)
    anchors = []
    for j in range(3):
        th = 2.0 * math.pi * j / 3.0
        anchors.append(np.array([math.cosh(1.0), math.sinh(1.0) * math.cos(th),
                                 math.sinh(1.0) * math.sin(th)]))
    oracle = _hyperbolic_mean_oracle(h2, anchors, [1 / 3] * 3)
    gap = h2.distance(hyp.final_x, oracle)
    assert gap <= 1e-5

    elapsed = time.perf_counter() - t0 + sum(r.wall_time for r in scenario_results.values())
    assert elapsed < 60.0
    print(f"PASS criterion 4: scenario budgets met; hyperbolic mean within "
          f"{gap:.2e} of the descent oracle ({elapsed:.2f}s)")


def test_criterion_5_fejer_certificates(scenario_results):
    for name, res in scenario_results.items():
        cert = res.certificate
        assert cert is not None and cert.fejer, f"{name}: no decay report"
        for rep in cert.fejer.values():
            if name == "gk-ball-8d":
                assert rep.feasible and rep.passed, f"{name}: infeasible slack fit"
            else:
                assert rep.max_increment <= 1e-10, f"{name}: increment {rep.max_increment}"
                assert rep.passed
        assert cert.residual_tail_xz <= 1e-8, f"{name}: prox residual tail"
        assert cert.residual_tail_T <= 1e-8, f"{name}: fixed-point residual tail"

    # negative control: a 0.1 jump injected at iteration 50 of a clean
    # geometric decay must fail the monotone-decay certificate
    e1 = EuclideanSpace(1)
    t = Trace(status="converged")
    for n in range(1, 100):
        xv = 2.0 * 0.5 ** (n - 1) + (0.1 if n == 50 else 0.0)
        t.records.append(TraceRecord(n=n, x=np.array([xv]), z=np.array([xv]),
                                     d_xz=0.0, d_Tx=[0.0], f_x=0.0, f_z=0.0,
                                     alpha=0.5, k=1.0, wall_time=0.0))
    rep = fejer_certificate(t, np.array([0.0]), e1, nonexpansive=True)
    assert not rep.passed
    print("PASS criterion 5: decay certificates hold on all scenarios; "
          "injected-jump control rejected")


def _meb_enumeration_oracle(pts):
    """Smallest covering circumball over all support subsets of size <= d+1."""
    from itertools import combinations
    from hadamardprox.diagnostics import _euclidean_circumball

    dim = len(pts[0])
    best = (math.inf, None)
    for size in range(1, dim + 2):
        for sub in combinations(pts, size):
            c, _ = _euclidean_circumball(list(sub))
            if c is None:
                continue
            r = max(np.linalg.norm(p - c) for p in pts)
            if r < best[0]:
                best = (r, c)
    return best[1], best[0]


def test_criterion_6_asymptotic_center(scenario_results):
    rng = Xoshiro256StarStar(606)
    worst = 0.0
    for trial in range(100):
        dim = 2 if trial % 2 == 0 else 3
        e = EuclideanSpace(dim)
        pts = [euclid_pt(rng, dim, scale=2.0) for _ in range(10)]
        c_est, r_est = asymptotic_center(e, pts)
        _, r_ref = _meb_enumeration_oracle(pts)
        worst = max(worst, abs(r_est - r_ref))
    assert worst <= 1e-6

    worst_center = 0.0
    for name, res in scenario_results.items():
        assert res.certificate.center_error is not None
        worst_center = max(worst_center, res.certificate.center_error)
        assert res.certificate.center_error <= 1e-4, f"{name}: tail center off"
    print(f"PASS criterion 6: enclosing-ball radius within {worst:.2e} of the "
          f"enumeration oracle; tail centers within {worst_center:.2e} of limits")


def test_criterion_7_strong_convergence(scenario_results):
    worst = 0.0
    for name, res in scenario_results.items():
        assert res.status == "converged"
        worst = max(worst, res.certificate.dist_final)
        assert res.certificate.dist_final <= 1e-6, f"{name}: dist {res.certificate.dist_final}"
    ci = scenario_results["proj-point-2d"].certificate.condition_i
    assert ci is not None and ci.passed and ci.kappa >= 0.5
    print(f"PASS criterion 7: final dist to solutions <= {worst:.2e}; "
          f"condition-I slope {ci.kappa:.3f} >= 0.5 on the projection family")


def test_criterion_8_determinism(tmp_path):
    from hadamardprox.harness import trace_to_csv
    from hadamardprox.scenarios import get_scenario
    from hadamardprox.algorithm import run as run_alg

    for name in SCENARIOS:
        blobs = []
        for _ in range(2):
            cfg = ExperimentConfig(scenario=name,
                                   out_dir=str(tmp_path / f"{name}-{len(blobs)}"))
            res = run_experiment(cfg)
            path = tmp_path / f"{name}-{len(blobs)}" / name / "trace.csv"
            blobs.append(path.read_bytes())
        assert blobs[0] == blobs[1], f"{name}: trace CSVs differ between runs"
    print("PASS criterion 8: byte-identical trace CSVs across repeated runs")
