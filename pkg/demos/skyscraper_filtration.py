"""Peeling the fundamental cycle of D4 down to a leaf.

Each step removes the curves that the current divisor meets negatively; the
quotients are shifted kernel simples.  With a small deformation eta > 0 the
phases of the pieces increase strictly up to the skyscraper, which sits at
phase 1 below all the kernel simples.
"""
from __future__ import annotations

from fractions import Fraction

from adestab import ChargeParams, SurfaceSpec, find_beta, phase_chain_check, skyscraper_filtration
from adestab.charge import phase_float

spec = SurfaceSpec.make("D4")
report = skyscraper_filtration(spec, target=2)
for d in report.divisors():
    print("D =", d)
print("factors:", report.factors, " telescopes:", report.telescoping_ok)

params = ChargeParams(find_beta(spec), 1)
for eta in (Fraction(1, 10), Fraction(0)):
    chain = phase_chain_check(spec, params.with_(eta=eta), report)
    print(f"\neta = {eta}: chain ok = {chain.ok}", chain.violation or "")
    for name, z in chain.charges:
        print(f"  {name:>5}  phase {phase_float(z):.6f}")
