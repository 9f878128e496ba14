"""
Certificates are replayable and tamper-evident
==============================================

A certificate records every flip with the residual before and after.  The
checker rebuilds the start state from the document alone and replays it.
"""

import copy
import json
from fractions import Fraction

from cantorsum import decompose, scale_certificate, verify
from cantorsum.problem import mixed_squares_problem

cert = decompose(mixed_squares_problem(precision=15).with_target(Fraction(60, 81)))
doc = cert.to_dict()
print(json.dumps(doc, indent=1)[:600], "...")
print(verify(doc).ok)

# change one residual in the middle of the trace
bad = copy.deepcopy(doc)
bad["flips"][1]["delta_after"] = "1/3"
print(verify(bad))

# sums of squares scale by 1/9 when every point is divided by 3
small = scale_certificate(cert, 1)
print("scaled target:", small.problem.target, "valid:", verify(small).ok)
