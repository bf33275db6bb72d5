"""Walls for the class (1, h, 0) along the s-path on A2.

Candidates come from a bounded box, kept only if Q >= 0 and
0 <= Im Z(w) <= Im Z(v).  Each wall is a rational value of s where a
candidate's phase meets that of v.
"""
from __future__ import annotations

from fractions import Fraction

from adestab import Box, ChargeParams, SurfaceSpec, enumerate_candidates, find_beta, scan_walls

spec = SurfaceSpec.make("A2")
params = ChargeParams(find_beta(spec, Fraction(1, 3)), 1)
v = spec.make_class(ch0=1, h=1)
cands = enumerate_candidates(spec, params, v, Box(ch0=(-1, 1), e=(-2, 2), ch2=(-2, 2)), A=0, B=18)
print(len(cands), "candidates in the box")

report = scan_walls(spec, params, v, cands, "s", (1, 10))
for wall in report.walls:
    print(f"s = {wall.value}: {len(wall.witnesses)} witness(es), e.g. {wall.witnesses[0]}")
print(len(report.segments), "candidates parallel to v along the whole path")
