"""The A1 running configuration: one (-2)-curve, h^2 = 2, beta = -e/4, z = 1.

We evaluate the charge on a few classes, certify the support property and
recover the constant B0 = 8 forced by the simple objects.
"""
from __future__ import annotations

from fractions import Fraction

from adestab import (
    ChargeParams,
    SurfaceSpec,
    certify_negative_definite,
    certify_negative_definite_X,
    charge,
    find_beta,
    q_form,
    simple_classes,
    support_constants,
    validate_params,
)

spec = SurfaceSpec.make("A1", h_square=2)
beta = find_beta(spec)  # beta.e_1 = 1/2, the largest admissible margin
params = ChargeParams(beta, z=1)
print("beta =", [str(b) for b in beta], " violations:", validate_params(spec, params))

sc = simple_classes(spec)
for name, v in [("O_X", spec.make_class(1)), ("O_Pi", sc.opi), ("s_1", sc.s[0]), ("O_x", sc.ox)]:
    z = charge(spec, params, v)
    print(f"Z({name}) = {z.re} + {z.im} i")

# The kernel simple loses its mass as epsilon -> 0.
for eps in (Fraction(1), Fraction(1, 2), Fraction(0)):
    print(f"eps = {eps}: Z(O_C(-1)) =", charge(spec, params.with_(epsilon=eps), spec.curve(1)).re)

A0, B0 = support_constants(spec, params, [], include_simples=True)
print("support constants from the simple classes:", A0, B0)
print("Q_{0,8} on the simples:", [str(q_form(spec, params, 0, 8, v)) for v in (sc.opi, *sc.s)])

cert = certify_negative_definite(spec, params, 0, B0)
print("Q on ker Z: inertia", cert.inertia, "pivots", [str(p) for p in cert.pivots])
print("Q_X on ker Z_X: inertia", certify_negative_definite_X(spec, params, 0).inertia)
