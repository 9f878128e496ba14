"""
A k-parametric family of four-squares intervals
===============================================

Small windows near 0 and a tiny window just above 2/3 give, for each k >= 2,
a short interval of sums of four squares.  The displayed endpoint formulas
are tested against stage images; a claim that escapes an image would be
reported as NOT CONFIRMED rather than passed.
"""

from cantorsum import check_family_claims
from cantorsum.problem import family_interval

for k in (2, 3, 4):
    lo, hi = family_interval(k)
    print(f"k={k}: [{lo}, {hi}]  length {float(hi - lo):.3e}")

for row in check_family_claims([2, 3]):
    print(row)

# too shallow a stage does not yet see the top window's structure
print(check_family_claims([2], max_stage=3)[0])
