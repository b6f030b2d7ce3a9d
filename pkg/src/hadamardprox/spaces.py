"""Hadamard-space backends: Euclidean, hyperboloid model, spider metric tree.

Each space provides the metric, geodesic interpolation and a nonpositive
curvature defect check. Points are plain numpy vectors for the Euclidean and
hyperboloid backends and :class:`TreePoint` for the spider tree.
"""

from dataclasses import dataclass
import math

import numpy as np

_DEGENERATE = 1e-14
_SHEET_TOL = 1e-10


class GeometryError(ValueError):
    """A point does not belong to the space, or an argument is out of range."""


@dataclass(frozen=True)
class TreePoint:
    """Point on a spider tree: a ray id and a radius from the common origin.

    Radius 0 is the origin; the ray id is normalized to 0 there so origins
    compare equal regardless of the ray they were built with.
    """

    ray: int
    radius: float

    def __post_init__(self):
        if self.radius < 0:
            raise GeometryError("tree radius must be nonnegative")
        if self.radius == 0 and self.ray != 0:
            object.__setattr__(self, "ray", 0)


class Space:
    """Common interface: distance, geodesic combine, curvature defect."""

    def validate(self, x):
        raise NotImplementedError

    def distance(self, x, y) -> float:
        raise NotImplementedError

    def combine(self, x, y, t: float):
        """Point a fraction t along the geodesic from x to y: (1-t)x (+) ty."""
        raise NotImplementedError

    def _check_t(self, t):
        if not 0.0 <= t <= 1.0:
            raise GeometryError(f"interpolation parameter t={t} outside [0, 1]")

    def cat0_defect(self, x, y, z, t: float) -> float:
        """LHS - RHS of the quadratic comparison inequality.

        d^2((1-t)x (+) ty, z) <= (1-t)d^2(x,z) + t d^2(y,z) - t(1-t)d^2(x,y);
        nonpositive (up to rounding) in a valid CAT(0) backend.
        """
        p = self.combine(x, y, t)
        lhs = self.distance(p, z) ** 2
        rhs = (
            (1 - t) * self.distance(x, z) ** 2
            + t * self.distance(y, z) ** 2
            - t * (1 - t) * self.distance(x, y) ** 2
        )
        return lhs - rhs

    def equal(self, x, y, tol: float = 0.0) -> bool:
        return self.distance(x, y) <= tol

    def random_point(self, rng, scale: float = 1.0):
        raise NotImplementedError


class EuclideanSpace(Space):
    def __init__(self, dim: int):
        if dim < 1:
            raise GeometryError("dimension must be >= 1")
        self.dim = dim

    def validate(self, x):
        try:
            a = np.asarray(x, dtype=float)
        except (TypeError, ValueError):
            raise GeometryError(f"expected a numeric vector, got {type(x).__name__}")
        if a.shape != (self.dim,):
            raise GeometryError(f"expected vector of length {self.dim}, got shape {a.shape}")
        return a

    def distance(self, x, y):
        x, y = self.validate(x), self.validate(y)
        return float(np.linalg.norm(x - y))

    def combine(self, x, y, t):
        self._check_t(t)
        x, y = self.validate(x), self.validate(y)
        return (1 - t) * x + t * y

    def log(self, x, y):
        """Tangent vector at x pointing to y with length d(x, y)."""
        return self.validate(y) - self.validate(x)

    def exp(self, x, v):
        return self.validate(x) + np.asarray(v, dtype=float)

    def tangent_norm(self, x, v):
        return float(np.linalg.norm(v))

    def random_point(self, rng, scale: float = 1.0):
        return np.array([rng.normal() * scale for _ in range(self.dim)])


def _minkowski(u, v):
    return float(-u[0] * v[0] + np.dot(u[1:], v[1:]))


class HyperboloidSpace(Space):
    """Hyperbolic d-space on the upper sheet of the hyperboloid.

    Points are (d+1)-vectors with Minkowski form <x, x> = -1 and x0 > 0;
    results of combine/exp are reprojected onto the sheet.
    """

    def __init__(self, dim: int):
        if dim < 1:
            raise GeometryError("dimension must be >= 1")
        self.dim = dim

    def validate(self, x):
        try:
            a = np.asarray(x, dtype=float)
        except (TypeError, ValueError):
            raise GeometryError(f"expected a numeric vector, got {type(x).__name__}")
        if a.shape != (self.dim + 1,):
            raise GeometryError(
                f"expected hyperboloid vector of length {self.dim + 1}, got shape {a.shape}"
            )
        if a[0] <= 0:
            raise GeometryError("hyperboloid point must have positive time coordinate")
        if abs(_minkowski(a, a) + 1.0) > 1e-6:
            raise GeometryError("point is not on the unit hyperboloid")
        return self._renormalize(a)

    @staticmethod
    def _renormalize(a):
        out = a.copy()
        out[0] = math.sqrt(1.0 + float(np.dot(a[1:], a[1:])))
        return out

    def origin(self):
        a = np.zeros(self.dim + 1)
        a[0] = 1.0
        return a

    def from_spatial(self, coords):
        """Lift spatial coordinates onto the sheet."""
        coords = np.asarray(coords, dtype=float)
        if coords.shape != (self.dim,):
            raise GeometryError(f"expected {self.dim} spatial coordinates")
        return self._renormalize(np.concatenate(([0.0], coords)))

    def distance(self, x, y):
        x, y = self.validate(x), self.validate(y)
        c = -_minkowski(x, y)
        return math.acosh(max(c, 1.0))

    def combine(self, x, y, t):
        self._check_t(t)
        x, y = self.validate(x), self.validate(y)
        s = self.distance(x, y)
        if s < _DEGENERATE:
            return x
        p = (math.sinh((1 - t) * s) * x + math.sinh(t * s) * y) / math.sinh(s)
        return self._renormalize(p)

    def log(self, x, y):
        """Initial velocity at x of the unit-time geodesic reaching y."""
        x, y = self.validate(x), self.validate(y)
        s = self.distance(x, y)
        if s < _DEGENERATE:
            return np.zeros_like(x)
        u = y + _minkowski(x, y) * x
        nu = math.sqrt(max(_minkowski(u, u), 0.0))
        if nu < _DEGENERATE:
            return np.zeros_like(x)
        return (s / nu) * u

    def exp(self, x, v):
        x = self.validate(x)
        v = np.asarray(v, dtype=float)
        nv = math.sqrt(max(_minkowski(v, v), 0.0))
        if nv < _DEGENERATE:
            return x
        return self._renormalize(math.cosh(nv) * x + math.sinh(nv) * (v / nv))

    def tangent_norm(self, x, v):
        return math.sqrt(max(_minkowski(np.asarray(v, float), np.asarray(v, float)), 0.0))

    def random_point(self, rng, scale: float = 1.0):
        # gaussian tangent vector at the apex, pushed out by the exponential map
        v = np.concatenate(([0.0], [rng.normal() * scale for _ in range(self.dim)]))
        return self.exp(self.origin(), v)


class SpiderTreeSpace(Space):
    """K half-lines glued at a common origin (a prototypical metric tree)."""

    def __init__(self, rays: int):
        if rays < 2:
            raise GeometryError("spider tree needs at least 2 rays")
        self.rays = rays

    def validate(self, x):
        if not isinstance(x, TreePoint):
            raise GeometryError(f"expected TreePoint, got {type(x).__name__}")
        if not 0 <= x.ray < self.rays:
            raise GeometryError(f"ray id {x.ray} outside [0, {self.rays})")
        return x

    def origin(self):
        return TreePoint(0, 0.0)

    def distance(self, x, y):
        x, y = self.validate(x), self.validate(y)
        if x.ray == y.ray or x.radius == 0 or y.radius == 0:
            return abs(x.radius - y.radius) if x.ray == y.ray else x.radius + y.radius
        return x.radius + y.radius

    def combine(self, x, y, t):
        self._check_t(t)
        x, y = self.validate(x), self.validate(y)
        same_branch = x.ray == y.ray or x.radius == 0 or y.radius == 0
        if same_branch:
            ray = x.ray if x.radius > 0 else y.ray
            r = (1 - t) * x.radius + t * y.radius
            return TreePoint(ray, r)
        walked = t * (x.radius + y.radius)
        if walked <= x.radius:
            return TreePoint(x.ray, x.radius - walked)
        return TreePoint(y.ray, walked - x.radius)

    def random_point(self, rng, scale: float = 1.0):
        return TreePoint(rng.integer(self.rays), abs(rng.normal()) * scale)
