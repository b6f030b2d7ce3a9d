"""Numeric convergence certificates computed over a finished trace.

The checks mirror what the convergence theory guarantees: distances to a
declared solution point are (quasi-)monotone, the proximal and fixed-point
residuals decay to zero, the tail of the trajectory clusters around a single
center, and a residual-versus-distance lower bound ("condition I") admits a
positive slope.
"""

from dataclasses import dataclass, field
import math
from typing import Callable, Optional

import numpy as np

from .algorithm import Trace
from .spaces import EuclideanSpace, GeometryError, Space, SpiderTreeSpace


class InsufficientDataError(ValueError):
    """Trace too short for the requested certificate."""


@dataclass
class FejerReport:
    max_increment: float
    fit_scale: Optional[float]  # minimal A with d_(n+1) <= (1 + A*L_n) d_n + A*S_n
    sum_B: Optional[float]
    sum_C: Optional[float]
    feasible: bool
    tail_oscillation: float
    passed: bool


@dataclass
class ConditionIReport:
    kappa: float
    passed: bool
    violating_index: Optional[int] = None


@dataclass
class Certificate:
    fejer: dict = field(default_factory=dict)  # per declared solution point
    residual_tail_xz: float = math.inf
    residual_tail_T: float = math.inf
    dist_final: Optional[float] = None
    center: object = None
    center_radius: Optional[float] = None
    center_error: Optional[float] = None
    condition_i: Optional[ConditionIReport] = None
    passed: bool = False


def fejer_certificate(trace: Trace, p, space: Space, lam_sums=None, mu_sums=None,
                      nonexpansive: bool = False, increment_tol: float = 1e-10,
                      tail_osc_tol: float = 1e-6, min_length: int = 10) -> FejerReport:
    """Check (quasi-)monotone decay of d(x_n, p) along the trace.

    For a nonexpansive family every increment must stay below increment_tol.
    Otherwise the per-iteration slack declared by the mapping family
    (lam_sums[n], mu_sums[n] = sums over the family at iteration n+1) must
    admit a single scale A making d_(n+1) <= (1 + A*lam) d_n + A*(lam + mu)
    hold everywhere, which keeps the perturbation series summable.
    """
    if len(trace) < min_length:
        raise InsufficientDataError(f"need at least {min_length} iterations")
    d = [space.distance(x, p) for x in trace.x_points()]
    increments = [d[i + 1] - d[i] for i in range(len(d) - 1)]
    max_inc = max(increments) if increments else 0.0

    fit_scale = 0.0
    feasible = True
    sum_B = sum_C = 0.0
    if lam_sums is None:
        lam_sums = [0.0] * (len(d) - 1)
    if mu_sums is None:
        mu_sums = [0.0] * (len(d) - 1)
    for i, inc in enumerate(increments):
        if inc <= 0:
            continue
        denom = lam_sums[i] * d[i] + (lam_sums[i] + mu_sums[i])
        if denom <= 0:
            if inc > increment_tol:
                feasible = False
            continue
        fit_scale = max(fit_scale, inc / denom)
    if feasible:
        sum_B = fit_scale * sum(lam_sums)
        sum_C = fit_scale * sum(l + m for l, m in zip(lam_sums, mu_sums))

    tail_len = max(1, len(d) // 10)
    tail = d[-tail_len:]
    tail_osc = max(tail) - min(tail)

    if nonexpansive:
        passed = max_inc <= increment_tol and tail_osc <= tail_osc_tol
    else:
        passed = feasible and math.isfinite(sum_B + sum_C) and tail_osc <= tail_osc_tol
    return FejerReport(
        max_increment=max_inc,
        fit_scale=fit_scale if feasible else None,
        sum_B=sum_B if feasible else None,
        sum_C=sum_C if feasible else None,
        feasible=feasible,
        tail_oscillation=tail_osc,
        passed=passed,
    )


def residual_series(trace: Trace):
    """Per-iteration series d(x_n, z_n) and max_i d(T_i x_n, x_n)."""
    if not len(trace):
        raise InsufficientDataError("empty trace")
    xz = [r.d_xz for r in trace.records]
    tx = [max(r.d_Tx) if r.d_Tx else 0.0 for r in trace.records]
    return xz, tx


def dist_to_solution_series(trace: Trace, solution_set, space: Space):
    """dist(x_n, solution set) = min over declared solution points."""
    solution_set = list(solution_set)
    if not solution_set:
        raise GeometryError("solution set must be nonempty")
    return [min(space.distance(x, p) for p in solution_set) for x in trace.x_points()]


# ---------------------------------------------------------------------------
# minimax center (finite-sample asymptotic center)


def _euclidean_circumball(boundary):
    """Smallest ball with all boundary points on its surface.

    The center is sought inside the affine span of the boundary points (the
    circumcenter), not as a minimal-norm solution, so pairs yield midpoints.
    """
    if not boundary:
        return None, 0.0
    pts = np.asarray(boundary, dtype=float)
    p0 = pts[0]
    if len(pts) == 1:
        return p0.copy(), 0.0
    Q = pts[1:] - p0
    b = np.array([np.dot(q, q) for q in Q])
    gamma, *_ = np.linalg.lstsq(2.0 * Q @ Q.T, b, rcond=None)
    center = p0 + Q.T @ gamma
    r = float(np.linalg.norm(center - p0))
    return center, r


def euclidean_min_enclosing_ball(points, _rng_state=None):
    """Exact smallest enclosing ball via Welzl's move-to-front recursion."""
    pts = [np.asarray(p, dtype=float) for p in points]
    if not pts:
        raise GeometryError("empty point list")
    dim = len(pts[0])

    def welzl(P, R):
        if not P or len(R) == dim + 1:
            return _euclidean_circumball(R)
        p = P[0]
        center, r = welzl(P[1:], R)
        if center is not None and np.linalg.norm(p - center) <= r * (1 + 1e-12) + 1e-13:
            return center, r
        return welzl(P[1:], R + [p])

    # deterministic shuffle for expected linear behavior
    order = list(range(len(pts)))
    state = 0x2545F4914F6CDD1D
    for i in range(len(order) - 1, 0, -1):
        state = (state * 6364136223846793005 + 1442695040888963407) % (1 << 64)
        j = state % (i + 1)
        order[i], order[j] = order[j], order[i]
    shuffled = [pts[i] for i in order]
    center, r = welzl(shuffled, [])
    if center is None:
        center, r = pts[0].copy(), 0.0
    r = max(float(np.linalg.norm(p - center)) for p in pts)
    return center, r


def _tree_center(space, points):
    """In a metric tree the minimax center is the midpoint of a diametral pair."""
    best = (0.0, points[0], points[0])
    for i, p in enumerate(points):
        for q in points[i + 1:]:
            d = space.distance(p, q)
            if d > best[0]:
                best = (d, p, q)
    center = space.combine(best[1], best[2], 0.5)
    radius = max(space.distance(center, p) for p in points)
    return center, radius


def _geodesic_center(space, points, tol, max_iters=20_000):
    """Move a fraction 1/(k+1) toward the current farthest point each sweep."""
    center = points[0]
    radius = max(space.distance(center, p) for p in points)
    for k in range(1, max_iters + 1):
        far = max(points, key=lambda p: space.distance(center, p))
        d = space.distance(center, far)
        if d <= tol:
            break
        center = space.combine(center, far, 1.0 / (k + 1))
    radius = max(space.distance(center, p) for p in points)
    return center, radius


def asymptotic_center(space: Space, points, tol: float = 1e-6):
    """Minimizer of x -> max_j d(x, points_j) and the minimax value.

    The Euclidean and tree backends use exact constructions; the hyperbolic
    backend uses a geodesic farthest-point iteration.
    """
    points = list(points)
    if not points:
        raise GeometryError("empty point list")
    if len(points) == 1:
        return points[0], 0.0
    if isinstance(space, EuclideanSpace):
        return euclidean_min_enclosing_ball(points)
    if isinstance(space, SpiderTreeSpace):
        return _tree_center(space, points)
    return _geodesic_center(space, points, tol)


def condition_I_check(trace: Trace, space: Space, solution_set,
                      g: Optional[Callable[[float], float]] = None,
                      dist_floor: float = 1e-9) -> ConditionIReport:
    """Residual-versus-distance lower bound along the trace.

    Verifies max_i d(T_i x_n, x_n) + d(z_n, x_n) >= g(dist(x_n, F)) at every
    iteration. Without an explicit g, fits the largest slope kappa such that
    g(t) = kappa * t is feasible (iterations already at the solution set are
    skipped since both sides vanish).
    """
    dist = dist_to_solution_series(trace, solution_set, space)
    lhs = [r.residual for r in trace.records]
    if g is not None:
        for i, (l, dn) in enumerate(zip(lhs, dist)):
            if l + 1e-12 < g(dn):
                return ConditionIReport(kappa=0.0, passed=False, violating_index=i + 1)
        return ConditionIReport(kappa=math.nan, passed=True)
    kappa = math.inf
    for l, dn in zip(lhs, dist):
        if dn > dist_floor:
            kappa = min(kappa, l / dn)
    if not math.isfinite(kappa):
        kappa = 0.0  # every iterate already on the solution set
    return ConditionIReport(kappa=kappa, passed=kappa > 0.0)


def certify(trace: Trace, space: Space, solution_set, limit_point=None,
            lam_sums=None, mu_sums=None, nonexpansive: bool = False,
            residual_tol: float = 1e-8, dist_tol: float = 1e-6,
            center_tol: float = 1e-4, tail_window: int = 50) -> Certificate:
    """Full certificate bundle for a finished run (pure and reproducible)."""
    cert = Certificate()
    xz, tx = residual_series(trace)
    cert.residual_tail_xz = xz[-1]
    cert.residual_tail_T = tx[-1]
    checks = [xz[-1] <= residual_tol, tx[-1] <= residual_tol]

    if len(trace) >= 2:
        for idx, p in enumerate(solution_set):
            # runs that stop in a handful of exact steps still get a decay check
            rep = fejer_certificate(trace, p, space, lam_sums=lam_sums, mu_sums=mu_sums,
                                    nonexpansive=nonexpansive, min_length=2)
            cert.fejer[idx] = rep
            checks.append(rep.passed)

    dist = dist_to_solution_series(trace, solution_set, space)
    cert.dist_final = dist[-1]
    checks.append(dist[-1] <= dist_tol)

    # the window must only contain points already representative of the limit,
    # so it never spans more than the last tenth of the trajectory
    window_len = max(1, min(tail_window, len(trace) // 10))
    window = trace.x_points()[-window_len:]
    center, radius = asymptotic_center(space, window)
    cert.center, cert.center_radius = center, radius
    if limit_point is not None:
        cert.center_error = space.distance(center, limit_point)
        checks.append(cert.center_error <= center_tol)

    cert.condition_i = condition_I_check(trace, space, solution_set)
    cert.passed = all(checks)
    return cert
