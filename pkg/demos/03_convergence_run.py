"""Running the multi-step iteration on the bundled scenarios.

Executes every scenario with default settings, prints a short convergence
table, then zooms into one run to show the per-iteration residuals and the
certificate bundle computed from the trace.

Run:  python3 demos/03_convergence_run.py
"""

from hadamardprox import (ExperimentConfig, list_scenarios, run_experiment)


def main():
    print("=== Bundled scenarios ===")
    for name, desc, sols in list_scenarios():
        print(f"  {name:14s} solutions {sols:16s} {desc}")

    print("\n=== Convergence table (default config, seed 0) ===")
    print(f"{'scenario':14s} {'status':12s} {'iters':>5s} {'final residual':>15s} "
          f"{'dist to F':>10s} {'cert':>5s}")
    results = {}
    for name, _, _ in list_scenarios():
        res = run_experiment(ExperimentConfig(scenario=name), write_files=False)
        results[name] = res
        c = res.certificate
        print(f"{name:14s} {res.status:12s} {res.iterations:5d} "
              f"{res.final_residual:15.3e} {c.dist_final:10.3e} "
              f"{'pass' if c.passed else 'FAIL':>5s}")

    print("\n=== Zoom: rot-proj-2d ===")
    print("a planar quadratic pulled to (1,1) while a quarter-turn rotation")
    print("and a unit-ball projection about the same point take turns:")
    res = results["rot-proj-2d"]
    cert = res.certificate
    print(f"  iterations:          {res.iterations}")
    print(f"  final point:         {res.final_x}")
    print(f"  residual tails:      d(x,z) = {cert.residual_tail_xz:.2e}, "
          f"max_i d(T_i x, x) = {cert.residual_tail_T:.2e}")
    print(f"  tail-center error:   {cert.center_error:.2e}")
    print(f"  condition-I slope:   {cert.condition_i.kappa:.3f}")

    print("\n=== Zoom: gk-ball-8d (genuinely asymptotically nonexpansive) ===")
    res = results["gk-ball-8d"]
    rep = res.certificate.fejer[0]
    print(f"  iterations:          {res.iterations}")
    print(f"  max distance bump:   {rep.max_increment:+.3e}")
    print(f"  summable-slack fit:  feasible={rep.feasible}, "
          f"scale={rep.fit_scale:.3f}, sum_B={rep.sum_B:.3f}, sum_C={rep.sum_C:.3f}")
    print("  (the mapping may push iterates outward early on; the declared")
    print("   slack sequence absorbs every observed increase)")


if __name__ == "__main__":
    main()
