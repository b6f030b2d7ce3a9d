"""Total asymptotically nonexpansive (TAN) self-mappings.

A TAN mapping T satisfies, for every pair x, y and iterate power n >= 1,

    d(T^n x, T^n y) <= d(x, y) + lam_n * xi(d(x, y)) + mu_n,

with summable lam_n, mu_n and a continuous increasing xi vanishing at 0.
Nonexpansive mappings enter this interface with lam = mu = 0.
"""

from dataclasses import dataclass, field
import math
from typing import Callable, Optional

import numpy as np

from .spaces import EuclideanSpace, GeometryError, HyperboloidSpace, Space, SpiderTreeSpace, TreePoint


class SummableSequence:
    """Nonnegative sequence rule n -> value with a finite analytic sum bound."""

    def __init__(self, fn: Callable[[int], float], total: float, label: str = ""):
        if not math.isfinite(total) or total < 0:
            raise GeometryError("sequence sum bound must be finite and nonnegative")
        self.fn = fn
        self.total = total
        self.label = label

    def __call__(self, n: int) -> float:
        v = self.fn(n)
        if v < 0:
            raise GeometryError(f"sequence {self.label} emitted a negative value at n={n}")
        return v


def zero_sequence() -> SummableSequence:
    return SummableSequence(lambda n: 0.0, total=0.0, label="zero")


def geometric_sequence(c: float, q: float) -> SummableSequence:
    """c * q^(n-1) for n >= 1; summable for 0 <= q < 1."""
    if not 0 <= q < 1 or c < 0:
        raise GeometryError("geometric sequence needs c >= 0 and 0 <= q < 1")
    return SummableSequence(lambda n: c * q ** (n - 1), total=c / (1 - q) if c else 0.0,
                            label=f"geometric({c},{q})")


def table_sequence(values) -> SummableSequence:
    """Finite table of values for n = 1..len(values); zero afterwards."""
    values = [float(v) for v in values]
    if any(v < 0 for v in values):
        raise GeometryError("table values must be nonnegative")
    return SummableSequence(
        lambda n: values[n - 1] if 1 <= n <= len(values) else 0.0,
        total=sum(values),
        label="table",
    )


@dataclass(frozen=True)
class XiRule:
    """Scaling function xi with its linear-domination constants.

    The constants assert xi(t) <= m_star * t for all t >= m (condition on the
    growth of xi); the identity satisfies this with m_star = 1 and any m > 0.
    """

    fn: Callable[[float], float]
    m: float
    m_star: float
    label: str = "identity"

    def __call__(self, t: float) -> float:
        return self.fn(t)


def identity_xi() -> XiRule:
    return XiRule(fn=lambda t: t, m=1.0, m_star=1.0, label="identity")


def capped_xi(cap: float) -> XiRule:
    """xi(t) = min(t, cap); dominated by t with m_star = 1 beyond m = cap."""
    if cap <= 0:
        raise GeometryError("cap must be positive")
    return XiRule(fn=lambda t: min(t, cap), m=cap, m_star=1.0, label=f"capped({cap})")


@dataclass(frozen=True)
class TanMapping:
    name: str
    fn: Callable
    lam: SummableSequence = field(default_factory=zero_sequence)
    mu: SummableSequence = field(default_factory=zero_sequence)
    xi: XiRule = field(default_factory=identity_xi)
    fixed_points: list = field(default_factory=list)
    # uniform-continuity modulus bound: d(Tx, Ty) <= modulus * d(x, y)
    modulus: Optional[float] = None

    def __post_init__(self):
        # growth condition spot-check on xi at a few scales beyond m
        for t in (self.xi.m, 2 * self.xi.m, 10 * self.xi.m):
            if self.xi(t) > self.xi.m_star * t + 1e-12:
                raise GeometryError("xi rule violates its linear-domination constants")


def apply(T: TanMapping, x):
    return T.fn(x)


def apply_iter(T: TanMapping, n: int, x):
    """n-fold composition of T; n = 0 is the identity."""
    if n < 0:
        raise GeometryError("iterate power must be >= 0")
    for _ in range(n):
        x = T.fn(x)
    return x


def tan_violation(space: Space, T: TanMapping, n: int, pairs) -> float:
    """Worst violation of the TAN inequality at power n over the given pairs."""
    if n < 1:
        raise GeometryError("tan_violation needs n >= 1")
    pairs = list(pairs)
    if not pairs:
        raise GeometryError("empty pair list")
    lam_n, mu_n = T.lam(n), T.mu(n)
    worst = -math.inf
    for x, y in pairs:
        d = space.distance(x, y)
        lhs = space.distance(apply_iter(T, n, x), apply_iter(T, n, y))
        worst = max(worst, lhs - (d + lam_n * T.xi(d) + mu_n))
    return worst


def tan_violation_sweep(space: Space, T: TanMapping, n_max: int, pairs) -> float:
    """Max TAN violation over n = 1..n_max, reusing iterates across powers."""
    if n_max < 1:
        raise GeometryError("tan_violation_sweep needs n_max >= 1")
    pairs = list(pairs)
    if not pairs:
        raise GeometryError("empty pair list")
    worst = -math.inf
    for x, y in pairs:
        d = space.distance(x, y)
        tx, ty = x, y
        for n in range(1, n_max + 1):
            tx, ty = T.fn(tx), T.fn(ty)
            bound = d + T.lam(n) * T.xi(d) + T.mu(n)
            worst = max(worst, space.distance(tx, ty) - bound)
    return worst


# ---------------------------------------------------------------------------
# mapping catalog


def identity_map(space: Space) -> TanMapping:
    return TanMapping(name="identity", fn=lambda x: x, modulus=1.0)


def ball_projection(space: Space, center, radius: float) -> TanMapping:
    """Metric projection onto the closed geodesic ball B(center, radius)."""
    if radius <= 0:
        raise GeometryError("ball radius must be positive")

    def fn(x):
        d = space.distance(x, center)
        if d <= radius:
            return x
        return space.combine(center, x, radius / d)

    return TanMapping(name="ball_projection", fn=fn, fixed_points=[center], modulus=1.0)


def point_projection(space: Space, c) -> TanMapping:
    """Projection onto the singleton {c} (the constant map)."""
    return TanMapping(name="point_projection", fn=lambda x: c, fixed_points=[c], modulus=1.0)


def euclidean_rotation(space: EuclideanSpace, center, angle: float) -> TanMapping:
    """Rotation about center in the first two coordinates; an isometry."""
    if space.dim < 2:
        raise GeometryError("rotation needs dimension >= 2")
    center = np.asarray(center, dtype=float)
    c, s = math.cos(angle), math.sin(angle)

    def fn(x):
        v = np.asarray(x, dtype=float) - center
        out = v.copy()
        out[0] = c * v[0] - s * v[1]
        out[1] = s * v[0] + c * v[1]
        return center + out

    return TanMapping(name="euclidean_rotation", fn=fn, fixed_points=[center], modulus=1.0)


def hyperbolic_rotation(space: HyperboloidSpace, angle: float) -> TanMapping:
    """Rotation of the spatial slice about the hyperboloid apex; an isometry."""
    if space.dim < 2:
        raise GeometryError("rotation needs dimension >= 2")
    c, s = math.cos(angle), math.sin(angle)

    def fn(x):
        out = np.asarray(x, dtype=float).copy()
        x1, x2 = out[1], out[2]
        out[1] = c * x1 - s * x2
        out[2] = s * x1 + c * x2
        return out

    return TanMapping(name="hyperbolic_rotation", fn=fn, fixed_points=[space.origin()],
                      modulus=1.0)


def ray_permutation(space: SpiderTreeSpace, perm) -> TanMapping:
    """Relabel the rays of the spider tree; an isometry fixing the origin."""
    perm = list(perm)
    if sorted(perm) != list(range(space.rays)):
        raise GeometryError("perm must be a permutation of the ray ids")

    def fn(x):
        return TreePoint(perm[x.ray], x.radius)

    return TanMapping(name="ray_permutation", fn=fn, fixed_points=[space.origin()], modulus=1.0)


# Lipschitz-style map on the Euclidean unit ball whose iterates are
# asymptotically nonexpansive: the first coordinate is squared and shifted in,
# the remaining coordinates are shifted with contraction factors. With
# contraction 0.4 the single-step Lipschitz constant is 2 (from |u^2 - v^2|
# <= 2|u - v| on [-1, 1]) and every higher power is a strict contraction, so
# the slack sequence below is exact.
GK_CONTRACTION = 0.4
# measured by fit_lambda_sequence and rounded up to the provable bound; the
# harness records the fitted values in its scenario listing
GK_LAMBDA_TABLE = [1.0]


def goebel_kirk_ball(space: EuclideanSpace) -> TanMapping:
    if space.dim < 2:
        raise GeometryError("needs dimension >= 2")
    a = GK_CONTRACTION

    def fn(x):
        x = np.asarray(x, dtype=float)
        out = np.empty_like(x)
        out[0] = 0.0
        out[1] = x[0] ** 2
        if space.dim > 2:
            out[2:] = a * x[1:-1]
        return out

    return TanMapping(
        name="goebel_kirk_ball",
        fn=fn,
        lam=table_sequence(GK_LAMBDA_TABLE),
        fixed_points=[np.zeros(space.dim)],
        modulus=2.0,
    )


def fit_lambda_sequence(space: Space, fn: Callable, n_max: int, pairs, xi: XiRule) -> list:
    """Sampling oracle for the slack sequence of a candidate TAN mapping.

    For each power n returns the smallest lam_n >= 0 covering every sampled
    pair, assuming mu_n = 0. Values are measurements, not proofs; round them
    up before freezing them into a catalog entry.
    """
    pairs = list(pairs)
    if not pairs:
        raise GeometryError("empty pair list")
    out = []
    iterates = [(x, y, space.distance(x, y)) for x, y in pairs]
    current = [(x, y) for x, y, _ in iterates]
    for n in range(1, n_max + 1):
        need = 0.0
        nxt = []
        for (x, y), (_, _, d0) in zip(current, iterates):
            tx, ty = fn(x), fn(y)
            nxt.append((tx, ty))
            if d0 > 1e-12:
                need = max(need, (space.distance(tx, ty) - d0) / xi(d0))
        current = nxt
        out.append(max(0.0, need))
    return out
