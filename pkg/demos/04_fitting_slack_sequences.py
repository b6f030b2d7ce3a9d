"""Measuring the slack sequence of an asymptotically nonexpansive map.

The map on the unit ball of R^8 squares its first coordinate and shifts the
rest inward. It is NOT nonexpansive (two rim points can be stretched apart by
almost a factor 2), but every higher power contracts, so the single-step
stretch is the only slack needed. This script fits that slack from samples
and compares against the recorded analytic table.

Run:  python3 demos/04_fitting_slack_sequences.py
"""

import numpy as np

from hadamardprox import (EuclideanSpace, Xoshiro256StarStar,
                          fit_lambda_sequence, goebel_kirk_ball, identity_xi,
                          tan_violation_sweep)


def main():
    e8 = EuclideanSpace(8)
    T = goebel_kirk_ball(e8)
    rng = Xoshiro256StarStar(42)

    def ball_point():
        v = np.array([rng.normal() for _ in range(8)])
        n = np.linalg.norm(v)
        return v / n if n > 1 else v

    pairs = [(ball_point(), ball_point()) for _ in range(500)]
    # adversarial pair: both near the rim along the squared coordinate,
    # where |u^2 - v^2| = |u + v| * |u - v| approaches 2 |u - v|
    pairs.append((np.eye(8)[0], 0.99 * np.eye(8)[0]))

    print("=== Fitting lambda_n from samples (xi = identity, mu = 0) ===")
    fitted = fit_lambda_sequence(e8, T.fn, 10, pairs, identity_xi())
    recorded = [T.lam(n) for n in range(1, 11)]
    print(f"{'n':>3s} {'fitted':>10s} {'recorded':>10s}")
    for n, (a, b) in enumerate(zip(fitted, recorded), start=1):
        print(f"{n:3d} {a:10.6f} {b:10.6f}")
    print("\nThe fitted value at n = 1 approaches 1 as the adversarial pair")
    print("nears the rim; powers n >= 2 contract, so zero slack suffices.")
    print("The recorded table is the analytic round-up of such measurements.")

    worst = tan_violation_sweep(e8, T, 20, pairs)
    print(f"\nWorst inequality violation with the recorded table, n <= 20: "
          f"{worst:+.3e}")


if __name__ == "__main__":
    main()
