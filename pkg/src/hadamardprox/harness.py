"""Experiment harness: config parsing, deterministic runs, trace/report files.

Config files are flat key-value documents with [section] headers:

    [scenario]
    name = quad-1d
    seed = 0
    out_dir = runs

    [schedule]
    a = 0.25
    b = 0.75
    alpha = const:0.5
    k = const:1.0        # or decay:<k0> for k0 * (1 + 1/n)

    [stopping]
    tol = 1e-8
    max_iters = 100000

    [solver]
    inner_tol = 1e-10
    max_inner = 10000

All keys are optional except the scenario name; omitted keys take the
defaults shown above. Runs are deterministic given (config bytes, seed):
repeated runs write byte-identical trace CSVs.
"""

from dataclasses import dataclass, field
import math
from pathlib import Path
import time
from typing import Optional

import numpy as np

from .algorithm import ConfigError as ScheduleError
from .algorithm import Schedule, StoppingRule, run
from .diagnostics import Certificate, certify
from .prox import ResolventConfig, SolverError
from .scenarios import get_scenario, list_scenarios  # noqa: F401 (re-export)
from .spaces import TreePoint


class ConfigError(ValueError):
    def __init__(self, message, line: Optional[int] = None, column: Optional[int] = None,
                 fieldname: Optional[str] = None):
        loc = ""
        if line is not None:
            loc = f" (line {line}" + (f", column {column}" if column is not None else "") + ")"
        fld = f" [field: {fieldname}]" if fieldname else ""
        super().__init__(f"{message}{loc}{fld}")
        self.line = line
        self.column = column
        self.fieldname = fieldname


_DEFAULTS = {
    ("scenario", "seed"): "0",
    ("scenario", "out_dir"): "runs",
    ("schedule", "a"): "0.25",
    ("schedule", "b"): "0.75",
    ("schedule", "alpha"): "const:0.5",
    ("schedule", "k"): "const:1.0",
    ("stopping", "tol"): "1e-8",
    ("stopping", "max_iters"): "100000",
    ("solver", "inner_tol"): "1e-10",
    ("solver", "max_inner"): "10000",
}
_SECTIONS = ("scenario", "schedule", "stopping", "solver")


@dataclass(frozen=True)
class ExperimentConfig:
    scenario: str
    seed: int = 0
    out_dir: str = "runs"
    dim: Optional[int] = None
    rays: Optional[int] = None
    a: float = 0.25
    b: float = 0.75
    alpha_rule: str = "const:0.5"
    k_rule: str = "const:1.0"
    tol: float = 1e-8
    max_iters: int = 100_000
    inner_tol: float = 1e-10
    max_inner: int = 10_000


@dataclass
class ScenarioResult:
    status: str  # converged | unconverged | error
    final_x: object = None
    final_residual: Optional[float] = None
    iterations: int = 0
    certificate: Optional[Certificate] = None
    wall_time: float = 0.0
    error: Optional[str] = None


def _parse_rule(text: str, fieldname: str):
    """'const:<v>' / bare number -> constant; 'decay:<k0>' -> k0 * (1 + 1/n)."""
    text = text.strip()
    kind, _, arg = text.partition(":")
    if not arg:
        kind, arg = "const", text
    try:
        v = float(arg)
    except ValueError:
        raise ConfigError(f"rule argument {arg!r} is not a number", fieldname=fieldname)
    if kind == "const":
        return lambda n: v
    if kind == "decay":
        return lambda n: v * (1.0 + 1.0 / n)
    raise ConfigError(f"unknown rule kind {kind!r}", fieldname=fieldname)


def parse_config(text: str) -> ExperimentConfig:
    """Parse and validate a config document; fills documented defaults."""
    values = dict(_DEFAULTS)
    section = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        stripped = line.strip()
        if stripped.startswith("["):
            if not stripped.endswith("]"):
                raise ConfigError("unterminated section header", line=lineno,
                                  column=len(line))
            name = stripped[1:-1].strip()
            if name not in _SECTIONS:
                raise ConfigError(f"unknown section [{name}]", line=lineno, column=1)
            section = name
            continue
        if "=" not in stripped:
            raise ConfigError("expected 'key = value'", line=lineno,
                              column=len(line) - len(line.lstrip()) + 1)
        if section is None:
            raise ConfigError("key outside any section", line=lineno, column=1)
        key, _, val = stripped.partition("=")
        key, val = key.strip(), val.strip()
        known = ((section, key) in _DEFAULTS
                 or (section, key) in (("scenario", "name"), ("scenario", "dim"),
                                       ("scenario", "rays")))
        if not known:
            raise ConfigError(f"unknown key {key!r} in [{section}]", line=lineno,
                              fieldname=key)
        values[(section, key)] = val

    if ("scenario", "name") not in values:
        raise ConfigError("missing scenario name", fieldname="name")
    name = values[("scenario", "name")]
    try:
        get_scenario(name)
    except KeyError:
        raise ConfigError(f"unknown scenario {name!r}", fieldname="name")

    def num(section, key, conv, fieldname):
        try:
            return conv(values[(section, key)])
        except ValueError:
            raise ConfigError(f"invalid value {values[(section, key)]!r}",
                              fieldname=fieldname)

    dim = rays = None
    if ("scenario", "dim") in values:
        dim = num("scenario", "dim", int, "dim")
    if ("scenario", "rays") in values:
        rays = num("scenario", "rays", int, "rays")
    sc = get_scenario(name)
    if dim is not None and sc.default_dim is not None and dim != sc.default_dim:
        raise ConfigError(f"scenario {name!r} is defined for dim={sc.default_dim}",
                          fieldname="dim")
    if rays is not None and sc.default_rays is not None and rays != sc.default_rays:
        raise ConfigError(f"scenario {name!r} is defined for rays={sc.default_rays}",
                          fieldname="rays")

    cfg = ExperimentConfig(
        scenario=name,
        seed=num("scenario", "seed", lambda s: int(s, 0), "seed"),
        out_dir=values[("scenario", "out_dir")],
        dim=dim,
        rays=rays,
        a=num("schedule", "a", float, "a"),
        b=num("schedule", "b", float, "b"),
        alpha_rule=values[("schedule", "alpha")],
        k_rule=values[("schedule", "k")],
        tol=num("stopping", "tol", float, "tol"),
        max_iters=num("stopping", "max_iters", int, "max_iters"),
        inner_tol=num("solver", "inner_tol", float, "inner_tol"),
        max_inner=num("solver", "max_inner", int, "max_inner"),
    )
    _validate(cfg)
    return cfg


def _validate(cfg: ExperimentConfig):
    if not 0.0 < cfg.a:
        raise ConfigError("need a > 0", fieldname="a")
    if not cfg.a <= cfg.b:
        raise ConfigError("a <= b violated", fieldname="a <= b")
    if not cfg.b < 1.0:
        raise ConfigError("need b < 1", fieldname="b")
    if cfg.tol <= 0:
        raise ConfigError("tol must be positive", fieldname="tol")
    if cfg.max_iters < 1:
        raise ConfigError("max_iters must be >= 1", fieldname="max_iters")
    if cfg.seed < 0 or cfg.seed >= 1 << 64:
        raise ConfigError("seed must fit in 64 unsigned bits", fieldname="seed")
    alpha = _parse_rule(cfg.alpha_rule, "alpha")
    for n in (1, 2, 10, 1000):
        v = alpha(n)
        if not cfg.a <= v <= cfg.b:
            raise ConfigError(
                f"alpha rule emits {v} at n={n}; the weights must satisfy "
                f"a <= alpha_n <= b < 1", fieldname="alpha")
    krule = _parse_rule(cfg.k_rule, "k")
    for n in (1, 2, 10, 1000):
        if krule(n) <= 0:
            raise ConfigError("k rule must stay positive", fieldname="k")


def serialize_config(cfg: ExperimentConfig) -> str:
    return (
        "[scenario]\n"
        f"name = {cfg.scenario}\n"
        f"seed = {cfg.seed}\n"
        f"out_dir = {cfg.out_dir}\n"
        + (f"dim = {cfg.dim}\n" if cfg.dim is not None else "")
        + (f"rays = {cfg.rays}\n" if cfg.rays is not None else "")
        + "\n"
        "[schedule]\n"
        f"a = {cfg.a!r}\n"
        f"b = {cfg.b!r}\n"
        f"alpha = {cfg.alpha_rule}\n"
        f"k = {cfg.k_rule}\n\n"
        "[stopping]\n"
        f"tol = {cfg.tol!r}\n"
        f"max_iters = {cfg.max_iters}\n\n"
        "[solver]\n"
        f"inner_tol = {cfg.inner_tol!r}\n"
        f"max_inner = {cfg.max_inner}\n"
    )


def _fmt(v: float) -> str:
    return format(float(v), ".17g")


def _point_columns(space, x):
    if isinstance(x, TreePoint):
        return ["ray", "radius"], [str(x.ray), _fmt(x.radius)]
    coords = np.asarray(x, dtype=float)
    return [f"x_{i}" for i in range(len(coords))], [_fmt(c) for c in coords]


def trace_to_csv(space, trace, m: int) -> str:
    """Deterministic CSV rendering of a trace (17 significant digits)."""
    lines = []
    header = ["n", "residual", "d_xz"] + [f"d_T{i+1}x_x" for i in range(m)] + \
             ["f_x", "f_z", "alpha_n", "k_n"]
    if trace.records:
        pc, _ = _point_columns(space, trace.records[0].x)
        header += pc
    lines.append(",".join(header))
    for r in trace.records:
        row = [str(r.n), _fmt(r.residual), _fmt(r.d_xz)]
        row += [_fmt(v) for v in r.d_Tx]
        row += [_fmt(r.f_x), _fmt(r.f_z), _fmt(r.alpha), _fmt(r.k)]
        _, vals = _point_columns(space, r.x)
        row += vals
        lines.append(",".join(row))
    return "\n".join(lines) + "\n"


def summary_report(cfg: ExperimentConfig, result: ScenarioResult, space) -> str:
    lines = [
        f"scenario: {cfg.scenario}",
        f"seed: {cfg.seed}",
        f"status: {result.status}",
        f"iterations: {result.iterations}",
        f"final_residual: {_fmt(result.final_residual) if result.final_residual is not None else 'n/a'}",
        f"wall_time_s: {result.wall_time:.3f}",
    ]
    if result.final_x is not None:
        _, vals = _point_columns(space, result.final_x)
        lines.append("final_point: " + " ".join(vals))
    c = result.certificate
    if c is not None:
        lines.append(f"certificate_passed: {c.passed}")
        lines.append(f"residual_tail_xz: {_fmt(c.residual_tail_xz)}")
        lines.append(f"residual_tail_T: {_fmt(c.residual_tail_T)}")
        if c.dist_final is not None:
            lines.append(f"dist_to_solution_final: {_fmt(c.dist_final)}")
        if c.center_error is not None:
            lines.append(f"tail_center_error: {_fmt(c.center_error)}")
        for idx, rep in c.fejer.items():
            lines.append(
                f"fejer[{idx}]: max_increment={_fmt(rep.max_increment)} "
                f"feasible={rep.feasible} passed={rep.passed}")
        if c.condition_i is not None:
            ci = c.condition_i
            kappa = "n/a" if isinstance(ci.kappa, float) and math.isnan(ci.kappa) else _fmt(ci.kappa)
            lines.append(f"condition_I: kappa={kappa} passed={ci.passed}")
    if result.error:
        lines.append(f"error: {result.error}")
    return "\n".join(lines) + "\n"


def run_experiment(cfg: ExperimentConfig, write_files: bool = True) -> ScenarioResult:
    """Execute one scenario run; deterministic given (config, seed)."""
    scenario = get_scenario(cfg.scenario)
    inst = scenario.build(cfg.seed)
    sched = Schedule(
        alpha=_parse_rule(cfg.alpha_rule, "alpha"),
        a=cfg.a, b=cfg.b,
        k=_parse_rule(cfg.k_rule, "k"),
        k_min=1e-9,
    )
    stop = StoppingRule(tol=cfg.tol, max_iters=cfg.max_iters)
    prox_cfg = ResolventConfig(inner_tol=cfg.inner_tol, max_inner=cfg.max_inner)

    t0 = time.perf_counter()
    result = ScenarioResult(status="error")
    trace = None
    try:
        trace = run(inst.space, inst.objective, inst.family, sched, inst.x1, stop, prox_cfg)
        result.status = trace.status
        result.iterations = len(trace)
        final = trace.final()
        result.final_x = final.x
        result.final_residual = final.residual
        lam_sums = [sum(T.lam(r.n) for T in inst.family) for r in trace.records[:-1]]
        mu_sums = [sum(T.mu(r.n) for T in inst.family) for r in trace.records[:-1]]
        result.certificate = certify(
            trace, inst.space, inst.solution_set, limit_point=inst.limit_point,
            lam_sums=lam_sums, mu_sums=mu_sums, nonexpansive=inst.nonexpansive,
        )
    except (SolverError, ScheduleError) as exc:
        result.error = str(exc)
    result.wall_time = time.perf_counter() - t0

    if write_files and trace is not None:
        out = Path(cfg.out_dir) / cfg.scenario
        out.mkdir(parents=True, exist_ok=True)
        (out / "trace.csv").write_text(trace_to_csv(inst.space, trace, len(inst.family)))
        (out / "summary.txt").write_text(summary_report(cfg, result, inst.space))
    return result
