"""A tour of the three nonpositively curved backends.

Walks through distances, geodesics and the comparison inequality on Euclidean
space, the hyperboloid model of the hyperbolic plane, and a spider metric
tree, printing small hand-checkable numbers along the way.

Run:  python3 demos/01_geometry_tour.py
"""

import math

import numpy as np

from hadamardprox import (EuclideanSpace, HyperboloidSpace, SpiderTreeSpace,
                          TreePoint, Xoshiro256StarStar)


def main():
    print("=== Euclidean space ===")
    e2 = EuclideanSpace(2)
    x, y = np.array([0.0, 0.0]), np.array([3.0, 4.0])
    print(f"d((0,0),(3,4)) = {e2.distance(x, y)}  (the 3-4-5 triangle)")
    mid = e2.combine(x, y, 0.5)
    print(f"midpoint = {mid}")
    print(f"comparison defect (flat space is exactly CAT(0)): "
          f"{e2.cat0_defect(x, y, np.array([1.0, 0.0]), 0.3):.2e}")

    print("\n=== Hyperbolic plane (hyperboloid model) ===")
    h2 = HyperboloidSpace(2)
    apex = h2.origin()
    p = h2.from_spatial([math.sinh(1.0), 0.0])  # distance 1 from the apex
    print(f"d(apex, p) = {h2.distance(apex, p):.12f}  (built to be 1)")
    q = h2.from_spatial([0.0, math.sinh(1.0)])
    print(f"d(p, q)    = {h2.distance(p, q):.12f}  (> sqrt(2): fatter than flat)")
    mid = h2.combine(p, q, 0.5)
    print(f"geodesic midpoint stays on the sheet: <m,m> = "
          f"{-mid[0]**2 + mid[1]**2 + mid[2]**2:+.2e}")
    defect = h2.cat0_defect(p, q, apex, 0.5)
    print(f"comparison defect at the midpoint: {defect:+.6f}  (strictly negative)")

    print("\n=== Spider tree (3 rays glued at an origin) ===")
    s3 = SpiderTreeSpace(3)
    a, b = TreePoint(0, 2.0), TreePoint(1, 1.0)
    print(f"d((ray0, 2), (ray1, 1)) = {s3.distance(a, b)}  (walks through the origin)")
    third = s3.combine(a, b, 2.0 / 3.0)
    print(f"two thirds of the way: {third}  (crossed onto the other ray)")
    tripod = s3.cat0_defect(TreePoint(0, 1.0), TreePoint(1, 1.0), TreePoint(2, 1.0), 0.5)
    print(f"tripod defect = {tripod}  (trees are 'infinitely negatively curved')")

    print("\n=== Sampled comparison inequality ===")
    rng = Xoshiro256StarStar(7)
    for label, space, sample in (
        ("euclidean", e2, lambda: np.array([rng.normal(), rng.normal()])),
        ("hyperbolic", h2, lambda: h2.random_point(rng)),
        ("tree", s3, lambda: TreePoint(rng.integer(3), rng.uniform(0, 2))),
    ):
        worst = max(space.cat0_defect(sample(), sample(), sample(), rng.random())
                    for _ in range(2000))
        print(f"{label:11s} worst defect over 2000 triples: {worst:+.3e}")


if __name__ == "__main__":
    main()
