"""Convex minimization and common fixed points on Hadamard (CAT(0)) spaces.

A multi-step proximal point iteration interleaves a Moreau-Yosida proximal
step with averaged applications of a finite family of total asymptotically
nonexpansive self-mappings, on three nonpositively curved backends:
Euclidean space, the hyperboloid model of hyperbolic space, and spider
metric trees. Diagnostics turn the convergence theory into numeric
certificates over recorded traces.
"""

from .algorithm import (ConfigError, IterState, Schedule, StoppingRule, Trace,
                        TraceRecord, constant_schedule, residual, run, step)
from .diagnostics import (Certificate, ConditionIReport, FejerReport,
                          InsufficientDataError, asymptotic_center, certify,
                          condition_I_check, dist_to_solution_series,
                          euclidean_min_enclosing_ball, fejer_certificate,
                          residual_series)
from .mappings import (SummableSequence, TanMapping, XiRule, apply, apply_iter,
                       ball_projection, capped_xi, euclidean_rotation,
                       fit_lambda_sequence, geometric_sequence, goebel_kirk_ball,
                       hyperbolic_rotation, identity_map, identity_xi,
                       point_projection, ray_permutation, table_sequence,
                       tan_violation, tan_violation_sweep, zero_sequence)
from .objectives import (ConvexObjective, ball_indicator, distance_to,
                         half_squared_distance, sum_of_distances,
                         weighted_squared_mean, zero_objective)
from .prox import (ResolventConfig, SolverError, resolvent,
                   resolvent_identity_residual, solve_1d_convex,
                   subdiff_inequality_residual)
from .harness import (ExperimentConfig, ScenarioResult, parse_config,
                      run_experiment, serialize_config, summary_report,
                      trace_to_csv)
from .rng import Xoshiro256StarStar
from .scenarios import Scenario, ScenarioInstance, get_scenario, list_scenarios
from .spaces import (EuclideanSpace, GeometryError, HyperboloidSpace, Space,
                     SpiderTreeSpace, TreePoint)

__version__ = "0.1.0"
