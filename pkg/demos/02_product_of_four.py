"""
Products of four Cantor points near 1
=====================================

With all four factors in C ∩ [8/9, 1] the products fill [(8/9)^3, 8/9].
"""

import random
from fractions import Fraction

from cantorsum import decompose, image_at_stage, sensitivity
from cantorsum.problem import product_problem

p = product_problem(precision=30)
print("claimed interval:", p.claimed_interval)

# a flip of size 2/3^j moves the product by between alpha and beta times that
s = sensitivity(p)
print("sensitivity bracket:", s.alpha, "..", s.beta)

rng = random.Random(0)
lo, hi = p.claimed_interval
for _ in range(3):
    x = lo + (hi - lo) * Fraction(rng.randrange(3 ** 20), 3 ** 20)
    cert = decompose(p.with_target(x))
    print(f"target {float(x):.12f}: {cert.iterations:2d} flips, factors",
          ", ".join(f"{float(v):.6f}" for v in cert.values))

# (8/9)^2 is hit exactly by the starting points, no flips needed
print("64/81 ->", decompose(p.with_target(Fraction(64, 81))).iterations, "flips")

# the stage images agree: every one covers the claim
for k in (2, 4, 6):
    print("stage", k, image_at_stage(p, k))
