"""Bundled experiment scenarios: space, objective, mapping family, start point.

Each scenario declares its solution set (minimizers of the objective that are
fixed under every mapping) so the diagnostics can certify convergence against
ground truth.
"""

from dataclasses import dataclass, field
import math
from typing import Callable, Optional

import numpy as np

from . import mappings, objectives
from .rng import Xoshiro256StarStar
from .spaces import EuclideanSpace, HyperboloidSpace, SpiderTreeSpace, TreePoint


@dataclass
class ScenarioInstance:
    space: object
    objective: object
    family: list
    x1: object
    solution_set: list
    limit_point: object
    nonexpansive: bool


@dataclass(frozen=True)
class Scenario:
    name: str
    description: str
    build: Callable[[int], ScenarioInstance]  # seed -> instance
    solution_desc: str
    default_dim: Optional[int] = None
    default_rays: Optional[int] = None
    max_iters_hint: int = 1000


def _quad_1d(seed: int) -> ScenarioInstance:
    space = EuclideanSpace(1)
    c = np.array([2.0])
    f = objectives.half_squared_distance(space, c)
    return ScenarioInstance(
        space=space,
        objective=f,
        family=[mappings.identity_map(space)],
        x1=np.array([0.0]),
        solution_set=[c],
        limit_point=c,
        nonexpansive=True,
    )


def _rot_proj_2d(seed: int) -> ScenarioInstance:
    space = EuclideanSpace(2)
    c = np.array([1.0, 1.0])
    f = objectives.half_squared_distance(space, c)
    family = [
        mappings.euclidean_rotation(space, c, math.pi / 2),
        mappings.ball_projection(space, c, 1.0),
    ]
    return ScenarioInstance(
        space=space,
        objective=f,
        family=family,
        x1=np.array([4.0, -2.0]),
        solution_set=[c],
        limit_point=c,
        nonexpansive=True,
    )


def _tree_median(seed: int) -> ScenarioInstance:
    space = SpiderTreeSpace(3)
    anchors = [TreePoint(i, 1.0) for i in range(3)]
    f = objectives.sum_of_distances(space, anchors)
    cyc = mappings.ray_permutation(space, [1, 2, 0])
    origin = space.origin()
    return ScenarioInstance(
        space=space,
        objective=f,
        family=[cyc],
        x1=TreePoint(0, 2.0),
        solution_set=[origin],
        limit_point=origin,
        nonexpansive=True,
    )


def _hyp_frechet(seed: int) -> ScenarioInstance:
    space = HyperboloidSpace(2)
    rho = 1.0
    anchors = []
    for j in range(3):
        th = 2.0 * math.pi * j / 3.0
        anchors.append(np.array([math.cosh(rho),
                                 math.sinh(rho) * math.cos(th),
                                 math.sinh(rho) * math.sin(th)]))
    f = objectives.weighted_squared_mean(space, anchors, [1 / 3] * 3)
    apex = space.origin()
    rot = mappings.hyperbolic_rotation(space, 2.0 * math.pi / 3.0)
    return ScenarioInstance(
        space=space,
        objective=f,
        family=[rot],
        x1=anchors[0],
        solution_set=[apex],
        limit_point=apex,
        nonexpansive=True,
    )


def _proj_point_2d(seed: int) -> ScenarioInstance:
    space = EuclideanSpace(2)
    c = np.array([0.5, -0.25])
    f = objectives.half_squared_distance(space, c)
    return ScenarioInstance(
        space=space,
        objective=f,
        family=[mappings.point_projection(space, c)],
        x1=np.array([-3.0, 2.0]),
        solution_set=[c],
        limit_point=c,
        nonexpansive=True,
    )


def _gk_ball_8d(seed: int) -> ScenarioInstance:
    space = EuclideanSpace(8)
    f = objectives.half_squared_distance(space, np.zeros(8))
    gk = mappings.goebel_kirk_ball(space)
    rng = Xoshiro256StarStar(seed)
    # random start inside the unit ball
    v = np.array([rng.normal() for _ in range(8)])
    v *= 0.9 * rng.random() / max(np.linalg.norm(v), 1e-12)
    return ScenarioInstance(
        space=space,
        objective=f,
        family=[gk],
        x1=v,
        solution_set=[np.zeros(8)],
        limit_point=np.zeros(8),
        nonexpansive=False,
    )


_REGISTRY = {
    "quad-1d": Scenario(
        name="quad-1d",
        description="1-D quadratic pulled to its vertex; identity mapping",
        build=_quad_1d,
        solution_desc="{2.0}",
        default_dim=1,
        max_iters_hint=100,
    ),
    "rot-proj-2d": Scenario(
        name="rot-proj-2d",
        description="planar quadratic with a rotation and a ball projection about its center",
        build=_rot_proj_2d,
        solution_desc="{(1, 1)}",
        default_dim=2,
        max_iters_hint=500,
    ),
    "tree-median": Scenario(
        name="tree-median",
        description="median of three symmetric ray points on a 3-ray spider tree",
        build=_tree_median,
        solution_desc="{origin}",
        default_rays=3,
        max_iters_hint=1000,
    ),
    "hyp-frechet": Scenario(
        name="hyp-frechet",
        description="mean of three symmetric anchors on the hyperbolic plane",
        build=_hyp_frechet,
        solution_desc="{apex (1,0,0)}",
        default_dim=2,
        max_iters_hint=500,
    ),
    "proj-point-2d": Scenario(
        name="proj-point-2d",
        description="planar quadratic with projection onto its vertex (condition-I family)",
        build=_proj_point_2d,
        solution_desc="{(0.5, -0.25)}",
        default_dim=2,
        max_iters_hint=200,
    ),
    "gk-ball-8d": Scenario(
        name="gk-ball-8d",
        description="squared-norm objective on the unit ball of R^8 with a genuinely "
                    "asymptotically nonexpansive mapping (fitted slack sequence)",
        build=_gk_ball_8d,
        solution_desc="{0}",
        default_dim=8,
        max_iters_hint=500,
    ),
}


def get_scenario(name: str) -> Scenario:
    if name not in _REGISTRY:
        raise KeyError(f"unknown scenario {name!r}")
    return _REGISTRY[name]


def list_scenarios():
    """Stable (name, description, declared solution set) listing."""
    return [(s.name, s.description, s.solution_desc)
            for s in sorted(_REGISTRY.values(), key=lambda s: s.name)]
