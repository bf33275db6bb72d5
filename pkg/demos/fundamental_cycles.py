"""Fundamental cycles of every ADE configuration up to rank 8.

Artin's algorithm starts from the reduced sum of the curves and adds a curve
whenever the cycle meets it positively.  The output is the minimal positive
anti-nef cycle, and for rational double points it always has self-intersection
-2.
"""
from __future__ import annotations

from adestab import build_ade, inverse_negativity_check
from adestab.root_data import all_types

print(f"{'type':>4}  {'fundamental cycle':<28}  Z^2  inverse < 0")
for t in all_types(8):
    data = build_ade(t)
    z = data.fund_cycle
    ok = inverse_negativity_check(data).all_negative
    print(f"{str(t):>4}  {str(z):<28}  {str(data.pair(z, z)):>3}  {ok}")

# For E8 the trivalent node carries the largest multiplicity.
e8 = build_ade("E8")
print("\nE8 neighbours of the trivalent node 1:", sorted(e8.neighbors(1)))
