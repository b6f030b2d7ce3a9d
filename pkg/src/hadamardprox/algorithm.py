"""Multi-step proximal point iteration with fixed-point averaging stages.

One sweep from the current iterate x_n:

  1. proximal step       z_n = argmin_y [ f(y) + d(y, x_n)^2 / (2 k_n) ]
  2. averaging chain     y_(m-1) = (1-a_n) z_n  (+)  a_n T_m^n z_n
                         y_(i)   = (1-a_n) y_(i+1) (+) a_n T_(i+1)^n y_(i+1)
  3. next iterate        x_(n+1) = (1-a_n) y_1 (+) a_n T_1^n y_1

where T^n is the n-fold composition at the outer iteration index n. The
residual d(x_n, z_n) + sum_i d(T_i x_n, x_n) vanishes exactly on the common
solutions (minimizers of f that are fixed under every T_i).
"""

from dataclasses import dataclass, field
import time
from typing import Callable, Optional

from .mappings import TanMapping, apply_iter
from .prox import ResolventConfig, resolvent
from .spaces import GeometryError, Space


class ConfigError(ValueError):
    """A control-sequence constraint was violated."""


@dataclass(frozen=True)
class Schedule:
    """Control sequences: averaging weights a_n in [a, b] and prox weights k_n."""

    alpha: Callable[[int], float]
    a: float = 0.25
    b: float = 0.75
    k: Callable[[int], float] = lambda n: 1.0
    k_min: float = 1e-6

    def __post_init__(self):
        if not (0.0 < self.a <= self.b < 1.0):
            raise ConfigError("need 0 < a <= b < 1")
        if self.k_min <= 0:
            raise ConfigError("k_min must be positive")

    def alpha_at(self, n: int) -> float:
        v = self.alpha(n)
        if not self.a <= v <= self.b:
            raise ConfigError(f"alpha_{n} = {v} outside [{self.a}, {self.b}]")
        return v

    def k_at(self, n: int) -> float:
        v = self.k(n)
        if v < self.k_min:
            raise ConfigError(f"k_{n} = {v} below k_min = {self.k_min}")
        return v


def constant_schedule(alpha: float = 0.5, k: float = 1.0,
                      a: Optional[float] = None, b: Optional[float] = None) -> Schedule:
    lo = alpha if a is None else a
    hi = alpha if b is None else b
    return Schedule(alpha=lambda n: alpha, a=lo, b=hi, k=lambda n: k, k_min=min(k, 1.0) / 2)


@dataclass(frozen=True)
class StoppingRule:
    tol: float = 1e-8
    max_iters: int = 100_000

    def __post_init__(self):
        if self.tol <= 0 or self.max_iters < 1:
            raise ConfigError("tol must be > 0 and max_iters >= 1")


@dataclass
class IterState:
    n: int
    x: object
    z: object = None
    y: list = field(default_factory=list)
    residual: float = 0.0


@dataclass
class TraceRecord:
    n: int
    x: object
    z: object
    d_xz: float
    d_Tx: list  # d(T_i x_n, x_n) for each mapping, first power
    f_x: float
    f_z: float
    alpha: float
    k: float
    wall_time: float

    @property
    def residual(self) -> float:
        return self.d_xz + sum(self.d_Tx)


@dataclass
class Trace:
    records: list = field(default_factory=list)
    status: str = "running"  # converged | unconverged | error

    def __len__(self):
        return len(self.records)

    def x_points(self):
        return [r.x for r in self.records]

    def final(self) -> TraceRecord:
        if not self.records:
            raise GeometryError("empty trace")
        return self.records[-1]


def residual(space: Space, f, family, state: IterState, prox_cfg: ResolventConfig) -> float:
    """d(x_n, z_n) + sum_i d(T_i x_n, x_n); recomputes z_n when missing."""
    z = state.z
    if z is None:
        z = resolvent(space, f, prox_cfg, state.x)
    r = space.distance(state.x, z)
    for T in family:
        r += space.distance(T.fn(state.x), state.x)
    return r


def step(space: Space, f, family, sched: Schedule, state: IterState,
         prox_cfg: ResolventConfig, z=None) -> IterState:
    """One full sweep; returns the state at index n+1.

    A z precomputed for this state (e.g. while evaluating the residual) can be
    passed in to avoid solving the proximal subproblem twice.
    """
    if not family:
        raise ConfigError("mapping family must be nonempty")
    n = state.n
    alpha = sched.alpha_at(n)
    k_n = sched.k_at(n)
    if z is None:
        z = resolvent(space, f, prox_cfg.with_k(k_n), state.x)
    m = len(family)
    ys = []
    cur = z
    for i in range(m - 1, 0, -1):  # stages T_m ... T_2 produce y_(m-1) ... y_1
        cur = space.combine(cur, apply_iter(family[i], n, cur), alpha)
        ys.append(cur)
    x_next = space.combine(cur, apply_iter(family[0], n, cur), alpha)
    ys.reverse()
    out = IterState(n=n + 1, x=x_next, z=None, y=ys)
    state.z = z
    return out


def run(space: Space, f, family, sched: Schedule, x1, stop: StoppingRule,
        prox_cfg: ResolventConfig) -> Trace:
    """Iterate until the residual drops below stop.tol or max_iters is hit."""
    trace = Trace()
    state = IterState(n=1, x=x1)
    t0 = time.perf_counter()
    for _ in range(stop.max_iters):
        n = state.n
        k_n = sched.k_at(n)
        alpha = sched.alpha_at(n)
        z = resolvent(space, f, prox_cfg.with_k(k_n), state.x)
        state.z = z
        d_xz = space.distance(state.x, z)
        d_Tx = [space.distance(T.fn(state.x), state.x) for T in family]
        rec = TraceRecord(
            n=n, x=state.x, z=z, d_xz=d_xz, d_Tx=d_Tx,
            f_x=f(state.x), f_z=f(z), alpha=alpha, k=k_n,
            wall_time=time.perf_counter() - t0,
        )
        trace.records.append(rec)
        if rec.residual <= stop.tol:
            trace.status = "converged"
            return trace
        state = step(space, f, family, sched, state, prox_cfg, z=z)
    trace.status = "unconverged"
    return trace
