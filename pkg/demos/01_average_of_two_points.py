"""
Every number in [0, 1] is the average of two Cantor points
==========================================================

Pick a triadic target, start from the endpoints of the gap around it and
let the greedy loop flip digits until the residual is tiny.
"""

from fractions import Fraction

from cantorsum import decompose, locate_gap, verify
from cantorsum.problem import average_problem

x = Fraction(4, 9)

# 4/9 = 0.11 in base 3, so it sits in the first removed gap (1/3, 2/3)
gap = locate_gap(x)
print("gap around", x, "->", (gap.left, gap.right), "removed at stage", gap.stage)

cert = decompose(average_problem(precision=12).with_target(x))
a, b = cert.values
print("a =", cert.final[0], "=", a)
print("b =", cert.final[1], "=", b)
print("(a + b) / 2 - x =", (a + b) / 2 - x)

# the trace: which variable moved, where, and how the residual shrank
for f in cert.flips[:5]:
    print(f"  var {f.variable} digit {f.position} {f.change}:  {f.delta_before} -> {f.delta_after}")
print("  ...", cert.iterations, "flips in total")

print(verify(cert))
