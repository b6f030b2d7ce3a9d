import math

import numpy as np
import pytest

from hadamardprox import (EuclideanSpace, HyperboloidSpace, SpiderTreeSpace,
                          TreePoint, Xoshiro256StarStar)


@pytest.fixture
def rng():
    return Xoshiro256StarStar(1234)


def euclid_pt(rng, dim, scale=1.0):
    return np.array([rng.normal() * scale for _ in range(dim)])


def hyper_pt(rng, space, max_radius=2.5):
    """Point at hyperbolic distance <= max_radius from the apex."""
    v = np.array([rng.normal() for _ in range(space.dim)])
    nv = np.linalg.norm(v)
    if nv < 1e-12:
        return space.origin()
    r = rng.uniform(0.0, max_radius)
    return space.exp(space.origin(), np.concatenate(([0.0], v * (r / nv))))


def tree_pt(rng, space, scale=1.5):
    return TreePoint(rng.integer(space.rays), rng.uniform(0.0, scale))


def backend_samplers():
    """(space, sampler) triples covering all three backends."""
    e = EuclideanSpace(3)
    h = HyperboloidSpace(2)
    s = SpiderTreeSpace(4)
    return [
        (e, lambda rng: euclid_pt(rng, 3)),
        (h, lambda rng: hyper_pt(rng, h)),
        (s, lambda rng: tree_pt(rng, s)),
    ]


def close(a, b, atol=1e-12, rtol=1e-9):
    return abs(a - b) <= atol + rtol * max(abs(a), abs(b))
