"""Proper convex lower-semicontinuous objectives and a closed-form catalog.

An objective carries an evaluation rule (possibly +inf), and optionally a
closed-form proximal rule, a descent-direction rule for the numeric solver,
known minimizers (test metadata) and a sampler of finite-value points.
"""

from dataclasses import dataclass, field
import math
from typing import Callable, Optional

import numpy as np

from .spaces import EuclideanSpace, Space, SpiderTreeSpace, TreePoint

INF = float("inf")


@dataclass(frozen=True)
class ConvexObjective:
    name: str
    value: Callable  # point -> float (finite or +inf)
    # (space, k, x) -> point minimizing value(y) + d(y, x)^2 / (2k)
    prox: Optional[Callable] = None
    # (space, y) -> descent gradient/subgradient vector in the tangent space at y
    gradient: Optional[Callable] = None
    minimizers: list = field(default_factory=list)
    # (space, rng) -> point with finite value; used for probe sampling
    finite_sampler: Optional[Callable] = None

    def __call__(self, y) -> float:
        return self.value(y)

    def sample_finite(self, space: Space, rng, scale: float = 1.0):
        if self.finite_sampler is not None:
            return self.finite_sampler(space, rng)
        return space.random_point(rng, scale)


def zero_objective() -> ConvexObjective:
    """f = 0 everywhere; its proximal map is the identity for every k."""
    return ConvexObjective(
        name="zero",
        value=lambda y: 0.0,
        prox=lambda space, k, x: x,
        gradient=lambda space, y: np.zeros_like(np.asarray(y, dtype=float)),
    )


def half_squared_distance(space: Space, c) -> ConvexObjective:
    """f(y) = d(y, c)^2 / 2; prox slides x toward c by the fraction k/(1+k)."""

    def prox(sp, k, x):
        return sp.combine(x, c, k / (1.0 + k))

    def gradient(sp, y):
        return -sp.log(y, c)

    return ConvexObjective(
        name="half_squared_distance",
        value=lambda y: 0.5 * space.distance(y, c) ** 2,
        prox=prox,
        gradient=gradient,
        minimizers=[c],
    )


def distance_to(space: Space, a) -> ConvexObjective:
    """f(y) = d(y, a); prox shrinks along the geodesic [x, a] by min(k, d)."""

    def prox(sp, k, x):
        d = sp.distance(x, a)
        if d <= k:
            return sp.combine(x, a, 1.0)
        return sp.combine(x, a, k / d)

    def gradient(sp, y):
        d = sp.distance(y, a)
        if d < 1e-14:
            return sp.log(y, a) * 0.0
        return -sp.log(y, a) / d

    return ConvexObjective(
        name="distance_to",
        value=lambda y: space.distance(y, a),
        prox=prox,
        gradient=gradient,
        minimizers=[a],
    )


def ball_indicator(space: Space, c, radius: float) -> ConvexObjective:
    """Indicator of the closed geodesic ball B(c, radius); prox is the metric
    projection, independent of k."""

    def value(y):
        return 0.0 if space.distance(y, c) <= radius + 1e-12 else INF

    def prox(sp, k, x):
        d = sp.distance(x, c)
        if d <= radius:
            return x
        return sp.combine(c, x, radius / d)

    def finite_sampler(sp, rng):
        p = sp.random_point(rng, radius)
        d = sp.distance(p, c)
        if d > radius:
            p = sp.combine(c, p, 0.9 * radius / d)
        return p

    return ConvexObjective(
        name="ball_indicator",
        value=value,
        prox=prox,
        minimizers=[c],
        finite_sampler=finite_sampler,
    )


def weighted_squared_mean(space: Space, anchors, weights) -> ConvexObjective:
    """f(y) = (1/2) sum_i w_i d(y, a_i)^2.

    Euclidean backend gets the closed-form weighted-mean prox; other backends
    fall back to the numeric solver through the gradient rule.
    """
    anchors = list(anchors)
    weights = [float(w) for w in weights]
    if len(anchors) != len(weights) or not anchors:
        raise ValueError("anchors and weights must be nonempty and equal length")
    wsum = sum(weights)

    def value(y):
        return 0.5 * sum(w * space.distance(y, a) ** 2 for a, w in zip(anchors, weights))

    def gradient(sp, y):
        g = None
        for a, w in zip(anchors, weights):
            term = -w * sp.log(y, a)
            g = term if g is None else g + term
        return g

    prox = None
    minimizers = []
    if isinstance(space, EuclideanSpace):
        mean = sum(w * np.asarray(a, float) for a, w in zip(anchors, weights)) / wsum

        def prox(sp, k, x):  # noqa: F811 - euclidean closed form
            return (np.asarray(x, float) / k + wsum * mean) / (1.0 / k + wsum)

        minimizers = [mean]

    return ConvexObjective(
        name="weighted_squared_mean",
        value=value,
        prox=prox,
        gradient=gradient,
        minimizers=minimizers,
    )


def sum_of_distances(space: Space, anchors) -> ConvexObjective:
    """Median-type objective f(y) = sum_i d(y, a_i).

    On a spider tree the prox is computed exactly: restricted to one ray the
    objective is piecewise linear (breakpoints at the on-ray anchor radii)
    plus the prox quadratic, so the minimizer is either a breakpoint, the
    boundary r = 0, or a per-segment stationary point in closed form. The
    smooth backends use the numeric solver through the gradient rule.
    """
    anchors = list(anchors)

    def gradient(sp, y):
        g = None
        for a in anchors:
            d = sp.distance(y, a)
            term = sp.log(y, a) * 0.0 if d < 1e-14 else -sp.log(y, a) / d
            g = term if g is None else g + term
        return g

    prox = None
    if isinstance(space, SpiderTreeSpace):
        def prox(sp, k, x):
            value = lambda p: sum(sp.distance(p, a) for a in anchors)
            best, best_val = None, INF
            for ray in range(sp.rays):
                # signed center of the prox quadratic along this ray
                s = x.radius if (x.ray == ray or x.radius == 0) else -x.radius
                on = sorted(a.radius for a in anchors
                            if a.ray == ray or a.radius == 0)
                off = len(anchors) - len(on)
                edges = [0.0] + on + [math.inf]
                candidates = set(on) | {0.0}
                for lo, hi in zip(edges[:-1], edges[1:]):
                    if lo >= hi:
                        continue
                    mid = lo + 1.0 if math.isinf(hi) else 0.5 * (lo + hi)
                    slope = off + sum(1 for b in on if b < mid) \
                        - sum(1 for b in on if b > mid)
                    r = s - k * slope  # stationarity of slope + (r - s)/k
                    if lo <= r <= hi:
                        candidates.add(r)
                for r in candidates:
                    if r < 0:
                        continue
                    p = TreePoint(ray, r)
                    v = value(p) + sp.distance(p, x) ** 2 / (2.0 * k)
                    if v < best_val:
                        best, best_val = p, v
            return best

    return ConvexObjective(
        name="sum_of_distances",
        value=lambda y: sum(space.distance(y, a) for a in anchors),
        prox=prox,
        gradient=gradient if hasattr(space, "log") else None,
    )
