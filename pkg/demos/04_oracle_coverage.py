"""
Checking the claims against stage approximations
================================================

The image of C^t under a continuous map is the intersection of the images
of the stage sets K_k^t.  Each stage image is a finite union of closed
intervals computed exactly, so a claim that escapes one is refuted, and a
claim inside all of them has survived every test at that resolution.
"""

from cantorsum import coverage_sweep, image_at_stage, problem_by_name, stage_intervals
from cantorsum.oracle import rows_to_csv

print("K_2 =", stage_intervals(2))

# K_k + K_k is all of [0, 2] at every stage
avg = problem_by_name("average")
print("K_10 + K_10 =", image_at_stage(avg, 10))

for name in ("product4", "powersum_m2", "mixed_squares", "powersum_m2_full"):
    print(rows_to_csv(coverage_sweep(problem_by_name(name), range(1, 7))), end="")

# a claim that is too large is caught immediately
print(rows_to_csv(coverage_sweep(avg, [3], claim=(0, 3))))
