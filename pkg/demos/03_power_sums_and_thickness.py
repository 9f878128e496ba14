"""
Sums of m-th powers and the thickness comparison
================================================

t_m = 2 ceil((3/2)^(m-1)) Cantor points in [2/3, 1] give an interval of
sums of m-th powers.  Thickness arguments need 2^m terms instead.
"""

from cantorsum import decompose, thickness
from cantorsum.problem import power_sum_problem

print(thickness.format_table(range(1, 8), "md"))

for m in range(1, 6):
    p = power_sum_problem(m, precision=25)
    lo, hi = p.claimed_interval
    # the midpoint is often the starting sum itself; a third of the way is more telling
    x = lo + (hi - lo) / 3
    cert = decompose(p.with_target(x))
    print(f"m={m} t={p.t}: target {x} reached with {cert.iterations} flips, "
          f"|residual| = {float(abs(cert.residual)):.2e}")

# staying close to 1 needs fewer terms for a shorter interval
print("window [1 - 3^-3, 1], m=2:", thickness.windowed_prediction(2, 3))
