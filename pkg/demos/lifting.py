"""Lifting classes from the singular surface and the normalization walk.

A class on the singular surface has many preimages; the canonical lift is
the one whose exceptional part has projection coefficients in [0, 1).  The
walk reaches it by adding and removing shifted kernel simples one at a time.
"""
from __future__ import annotations

from adestab import SurfaceSpec, lift, normalize_walk, pr_kernel, pushforward

spec = SurfaceSpec.make("A2")
v = spec.make_class(ch0=2, h=1, e=(2, 1), ch2=3)
print("v           =", v)
print("kernel part =", [str(a) for a in pr_kernel(spec, v)[0]])
print("lift(push v)=", lift(spec, pushforward(spec, v)))

trace = normalize_walk(spec, v)
for st in trace.steps:
    print(f"  {st.op} s_{st.curve} -> {st.cls}")

w = spec.make_class(ch0=1, h=0, e=(-3, 4), ch2=-2)
end = normalize_walk(spec, w).end
print("\nwalk of", w, "ends at", end, "with coefficients", [str(a) for a in pr_kernel(spec, end)[0]])
