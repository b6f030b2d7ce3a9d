"""Moreau-Yosida resolvent and its numerical certificates.

resolvent() returns argmin_y [ f(y) + d(y, x)^2 / (2k) ], using a closed-form
rule when the objective has one and a numeric solver otherwise. Residual
helpers turn the subdifferential inequality and the resolvent identity into
checkable numbers.
"""

from dataclasses import dataclass
import math

from .objectives import ConvexObjective
from .rng import Xoshiro256StarStar
from .spaces import EuclideanSpace, GeometryError, HyperboloidSpace, Space, SpiderTreeSpace

_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


class SolverError(RuntimeError):
    """Inner solver failed; carries the last iterate and residual."""

    def __init__(self, message, last_iterate=None, residual=None):
        super().__init__(message)
        self.last_iterate = last_iterate
        self.residual = residual


@dataclass(frozen=True)
class ResolventConfig:
    k: float = 1.0
    inner_tol: float = 1e-10
    max_inner: int = 10_000
    # "auto" dispatches on the objective and backend; the explicit kinds are
    # "closed_form", "descent" (geodesic Armijo descent) and "tree_scan"
    solver: str = "auto"
    # post-check probes for numeric solutions
    validate_probes: int = 8
    probe_tol: float = 1e-6

    def __post_init__(self):
        if self.k < 0:
            raise GeometryError("prox parameter k must be >= 0")
        if self.inner_tol <= 0 or self.max_inner < 1:
            raise GeometryError("inner tolerance must be > 0 and max_inner >= 1")
        if self.solver not in ("auto", "closed_form", "descent", "tree_scan"):
            raise GeometryError(f"unknown solver kind {self.solver!r}")

    def with_k(self, k: float) -> "ResolventConfig":
        return ResolventConfig(k=k, inner_tol=self.inner_tol, max_inner=self.max_inner,
                               solver=self.solver, validate_probes=self.validate_probes,
                               probe_tol=self.probe_tol)


def solve_1d_convex(phi, lo: float, hi: float, tol: float) -> float:
    """Golden-section search for the minimizer of a unimodal phi on [lo, hi]."""
    if lo >= hi:
        raise GeometryError("solve_1d_convex requires lo < hi")
    a, b = lo, hi
    c = b - _GOLDEN * (b - a)
    d = a + _GOLDEN * (b - a)
    fc, fd = phi(c), phi(d)
    while (b - a) > tol:
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - _GOLDEN * (b - a)
            fc = phi(c)
        else:
            a, c, fc = c, d, fd
            d = a + _GOLDEN * (b - a)
            fd = phi(d)
    return 0.5 * (a + b)


def subdiff_inequality_residual(space: Space, f: ConvexObjective, k: float, x, y, jx) -> float:
    """Value whose nonpositivity certifies jx as the resolvent of f at x.

    Returns (1/2k)[d^2(jx,y) - d^2(x,y) + d^2(jx,x)] + f(jx) - f(y); any
    correct resolvent output makes this <= 0 for every y with finite f(y).
    """
    fjx = f(jx)
    if not math.isfinite(fjx):
        raise GeometryError("candidate resolvent point has infinite objective value")
    quad = (
        space.distance(jx, y) ** 2
        - space.distance(x, y) ** 2
        + space.distance(jx, x) ** 2
    ) / (2.0 * k)
    return quad + fjx - f(y)


def _descent_prox(space, f, cfg, x):
    """Geodesic descent with Armijo backtracking on f(y) + d(y,x)^2/(2k)."""
    k = cfg.k

    def g(y):
        return f(y) + space.distance(y, x) ** 2 / (2.0 * k)

    y = x
    gy = g(y)
    for _ in range(cfg.max_inner):
        grad = f.gradient(space, y) - space.log(y, x) / k
        gn = space.tangent_norm(y, grad)
        if gn * k <= cfg.inner_tol:
            return y
        t = 1.0 / (1.0 + 1.0 / k)  # safe for the quadratic part alone
        moved = None
        for _ in range(60):
            cand = space.exp(y, -t * grad)
            gc = g(cand)
            if gc <= gy - 1e-4 * t * gn * gn:
                moved = cand
                break
            t *= 0.5
        if moved is None:
            raise SolverError("Armijo backtracking stalled", last_iterate=y, residual=gn)
        step = space.distance(y, moved)
        y, gy = moved, gc
        if step <= cfg.inner_tol:
            return y
    raise SolverError("prox descent did not converge", last_iterate=y, residual=gn)


def _tree_branch_prox(space, f, cfg, x):
    """Scan every ray of the spider tree; the restricted problem is unimodal."""
    k = cfg.k

    def phi_on(ray):
        def phi(r):
            from .spaces import TreePoint

            p = TreePoint(ray, r)
            return f(p) + space.distance(p, x) ** 2 / (2.0 * k)

        return phi

    # no minimizer can sit further out than the start plus one full prox step
    r_max = x.radius + 2.0 * k + 2.0 + 2.0 * math.sqrt(k * max(1.0, abs(f(x))))
    best = None
    best_val = math.inf
    from .spaces import TreePoint

    for ray in range(space.rays):
        phi = phi_on(ray)
        r = solve_1d_convex(phi, 0.0, r_max, cfg.inner_tol)
        for cand_r in (r, 0.0):
            val = phi(cand_r)
            if val < best_val:
                best_val = val
                best = TreePoint(ray, cand_r)
    return best


def _validate_candidate(space, f, cfg, x, jx):
    rng = Xoshiro256StarStar(0x9E3779B9)
    for _ in range(cfg.validate_probes):
        y = f.sample_finite(space, rng)
        res = subdiff_inequality_residual(space, f, cfg.k, x, y, jx)
        if res > cfg.probe_tol:
            raise SolverError(
                f"numeric prox failed the subdifferential check (residual {res:.3e})",
                last_iterate=jx,
                residual=res,
            )


def resolvent(space: Space, f: ConvexObjective, cfg: ResolventConfig, x):
    """Proximal map of f with parameter cfg.k at x; k = 0 is the identity."""
    if cfg.k == 0:
        return x
    kind = cfg.solver
    if kind == "auto":
        if f.prox is not None:
            kind = "closed_form"
        elif isinstance(space, SpiderTreeSpace):
            kind = "tree_scan"
        else:
            kind = "descent"
    if kind == "closed_form":
        if f.prox is None:
            raise SolverError("objective has no closed-form prox rule")
        return f.prox(space, cfg.k, x)
    if kind == "tree_scan":
        if not isinstance(space, SpiderTreeSpace):
            raise GeometryError("tree_scan solver requires a spider-tree backend")
        jx = _tree_branch_prox(space, f, cfg, x)
    else:
        if not isinstance(space, (EuclideanSpace, HyperboloidSpace)):
            raise GeometryError(f"no descent solver for {type(space).__name__}")
        if f.gradient is None:
            raise SolverError("objective has neither a prox rule nor a gradient rule")
        jx = _descent_prox(space, f, cfg, x)
    if cfg.validate_probes > 0:
        _validate_candidate(space, f, cfg, x, jx)
    return jx


def resolvent_identity_residual(space, f, k: float, eta: float, x, cfg: ResolventConfig) -> float:
    """Distance between the two sides of the resolvent identity.

    Compares J_k x against J_eta evaluated at the geodesic point a fraction
    eta/k of the way from J_k x back to x; zero for an exact resolvent.
    """
    if not k > eta > 0:
        raise GeometryError("resolvent identity requires k > eta > 0")
    cfg_k = cfg.with_k(k)
    cfg_eta = cfg.with_k(eta)
    jkx = resolvent(space, f, cfg_k, x)
    mixed = space.combine(jkx, x, eta / k)
    return space.distance(jkx, resolvent(space, f, cfg_eta, mixed))
