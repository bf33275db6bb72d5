"""Central charges, parameter validity, phases and support-property forms.

The family evaluated here is

    Z(v) = [-ch2 + eps*(beta.ch1) + s*z*ch0] + i[h.ch1 - alpha*ch0 + eta*(beta.ch1)]

with ``beta = sum beta_i e_i`` supported on the exceptional block.  With
``eps = s = 1`` and ``eta = alpha = 0`` this is the charge on the resolution;
``eps = 0`` is its massless endpoint, which factors through pushforward.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Iterable, Sequence

from . import exact
from .errors import BadMargin, NotDefinite, ZeroCharge
from .exact import Q, to_q
from .lattice import (
    NumClass,
    PushedClass,
    SurfaceSpec,
    discriminant,
    discriminant_X,
    h_dot,
    pushforward,
)


@dataclass(frozen=True)
class ChargeParams:
    beta: tuple[Fraction, ...]
    z: Fraction
    s: Fraction = Q(1)
    epsilon: Fraction = Q(1)
    eta: Fraction = Q(0)
    alpha: Fraction = Q(0)

    def __post_init__(self):
        object.__setattr__(self, "beta", exact.vec(self.beta))
        for name in ("z", "s", "epsilon", "eta", "alpha"):
            object.__setattr__(self, name, to_q(getattr(self, name)))

    def with_(self, **changes) -> "ChargeParams":
        return replace(self, **changes)


@dataclass(frozen=True)
class ChargeValue:
    re: Fraction
    im: Fraction

    def __add__(self, other: "ChargeValue") -> "ChargeValue":
        return ChargeValue(self.re + other.re, self.im + other.im)

    def scale(self, c) -> "ChargeValue":
        c = to_q(c)
        return ChargeValue(c * self.re, c * self.im)

    @property
    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def __complex__(self) -> complex:
        return complex(float(self.re), float(self.im))


def beta_dot(spec: SurfaceSpec, beta: Sequence, v: NumClass) -> Fraction:
    """``beta . ch1(v)``; beta lives in the exceptional block, so ``beta . h = 0``."""
    return spec.ade.pair(beta, v.e)


def charge(spec: SurfaceSpec, params: ChargeParams, v: NumClass) -> ChargeValue:
    spec.check_class(v)
    b = beta_dot(spec, params.beta, v)
    re = -v.ch2 + params.epsilon * b + params.s * params.z * v.ch0
    im = h_dot(spec, v) - params.alpha * v.ch0 + params.eta * b
    return ChargeValue(re, im)


def charge_X(spec: SurfaceSpec, params: ChargeParams, w: PushedClass) -> ChargeValue:
    """The induced charge on the singular surface (endpoint ``eps = 0``)."""
    re = -w.ch2 + params.s * params.z * w.ch0
    im = exact.dot(spec.extra_q[0], w.ch1) - params.alpha * w.ch0
    return ChargeValue(re, im)


# -- phases -----------------------------------------------------------------

def _sector(c: ChargeValue) -> int:
    # 0: phase in (0,1); 1: phase exactly 1 (incl. massless); 2: (1,2); 3: phase 2
    if c.im > 0:
        return 0
    if c.im < 0:
        return 2
    if c.re <= 0:
        return 1
    return 3


def compare_phase(a: ChargeValue, b: ChargeValue) -> int:
    """Sign of ``phase(a) - phase(b)`` for extended phases in ``(0, 2]``.

    Phases are ``arg/pi`` measured counterclockwise; the negative real axis
    has phase 1, the positive real axis phase 2 and a zero charge is treated
    as phase 1.  Comparisons are exact cross products.
    """
    sa, sb = _sector(a), _sector(b)
    if sa != sb:
        return -1 if sa < sb else 1
    if sa in (1, 3):
        return 0
    cross = a.re * b.im - b.re * a.im
    return (cross < 0) - (cross > 0)


def phase_float(c: ChargeValue) -> float:
    """Floating rendering of the extended phase, for reports only."""
    if c.is_zero:
        return 1.0
    ph = math.atan2(float(c.im), float(c.re)) / math.pi
    return ph + 2.0 if ph <= 0 else ph


# -- parameter choice and validity ---------------------------------------------

def beta_margin_bound(spec: SurfaceSpec) -> Fraction:
    return Q(1, 1 + sum(spec.ade.fund_cycle))


def find_beta(spec: SurfaceSpec, t=None) -> tuple[Fraction, ...]:
    """Solve ``G b = t (1, ..., 1)`` so that ``beta . e_j = t`` for every curve.

    ``t`` defaults to the largest admissible value ``1 / (1 + sum m_i)``.
    """
    bound = beta_margin_bound(spec)
    t = bound if t is None else to_q(t)
    if not 0 < t <= bound:
        raise BadMargin(f"t = {t} outside (0, {bound}]")
    return exact.solve(spec.ade.gram_q, [t] * spec.n)


def validate_params(spec: SurfaceSpec, params: ChargeParams,
                    require_positive_z: bool | None = None) -> list[str]:
    """Return the violated constraints; an empty list means the parameters are valid.

    ``z > 0`` is demanded when ``require_positive_z`` is true, or by default
    whenever the charge is deformed (``s != 1`` or ``epsilon != 1``).
    """
    out = []
    if len(params.beta) != spec.n:
        return [f"beta has {len(params.beta)} entries, expected {spec.n}"]
    pairs = exact.matvec(spec.ade.gram_q, params.beta)
    for i, p in enumerate(pairs, start=1):
        if p <= 0:
            out.append(f"beta.e_{i} = {exact.fmt_q(p)} <= 0")
    fund = spec.ade.pair(params.beta, spec.ade.fund_cycle)
    if fund >= 1:
        out.append(f"beta.Z_fund = {exact.fmt_q(fund)} >= 1")
    beta_sq = spec.ade.pair(params.beta, params.beta)
    lhs = params.z - params.alpha ** 2 / (2 * to_q(spec.h_square))
    if not lhs > -beta_sq / 2:
        out.append(f"z - alpha^2/(2d) = {exact.fmt_q(lhs)} <= -beta^2/2 = {exact.fmt_q(-beta_sq / 2)}")
    if require_positive_z is None:
        require_positive_z = params.s != 1 or params.epsilon != 1
    if require_positive_z and params.z <= 0:
        out.append(f"z = {exact.fmt_q(params.z)} <= 0")
    if params.s < 1:
        out.append(f"s = {exact.fmt_q(params.s)} < 1")
    if not 0 <= params.epsilon <= 1:
        out.append(f"epsilon = {exact.fmt_q(params.epsilon)} outside [0, 1]")
    if params.eta < 0:
        out.append(f"eta = {exact.fmt_q(params.eta)} < 0")
    return out


# -- quadratic forms ----------------------------------------------------------

def q_form(spec: SurfaceSpec, params: ChargeParams, A, B, v: NumClass) -> Fraction:
    """``Delta(v) + A (Im Z)^2 + B (Re Z)^2`` with the undeformed (``eta = 0``) charge."""
    z = charge(spec, params.with_(eta=Q(0)), v)
    return discriminant(spec, v) + to_q(A) * z.im ** 2 + to_q(B) * z.re ** 2


def q_form_X(spec: SurfaceSpec, params: ChargeParams, A, v: NumClass) -> Fraction:
    """``Delta_X(pushforward v) + A (Im Z)^2`` at the massless endpoint."""
    z = charge(spec, params.with_(epsilon=Q(0), eta=Q(0)), v)
    return discriminant_X(spec, pushforward(spec, v)) + to_q(A) * z.im ** 2


def _flat_delta_matrix(extra_and_ns: list[list[Fraction]]) -> list[list[Fraction]]:
    # coordinates (ch0, ch1.., ch2); Delta = ch1.ch1 - 2 ch0 ch2
    k = len(extra_and_ns)
    size = k + 2
    m = [[Q(0)] * size for _ in range(size)]
    for i in range(k):
        for j in range(k):
            m[1 + i][1 + j] = extra_and_ns[i][j]
    m[0][size - 1] = m[size - 1][0] = Q(-1)
    return m


def _add_outer(m: list[list[Fraction]], row: Sequence[Fraction], c: Fraction) -> None:
    if c == 0:
        return
    for i, a in enumerate(row):
        if a:
            for j, b in enumerate(row):
                m[i][j] += c * a * b


def charge_rows(spec: SurfaceSpec, params: ChargeParams) -> tuple[tuple[Fraction, ...], tuple[Fraction, ...]]:
    """Real and imaginary parts of ``Z`` as functionals on ``NumClass.coords()``."""
    gb = exact.matvec(spec.ade.gram_q, params.beta)
    hx = spec.extra_q[0]
    zeros_x = (Q(0),) * spec.r
    re = (params.s * params.z, Q(0), *zeros_x, *(params.epsilon * g for g in gb), Q(-1))
    im = (-params.alpha, *hx, *(params.eta * g for g in gb), Q(0))
    return re, im


@dataclass(frozen=True)
class DefinitenessCertificate:
    lattice: str
    kernel_basis: tuple[tuple[Fraction, ...], ...]
    restricted_gram: tuple[tuple[Fraction, ...], ...]
    pivots: tuple[Fraction, ...]
    inertia: tuple[int, int, int]

    @property
    def negative_definite(self) -> bool:
        return self.inertia[0] == 0 and self.inertia[2] == 0


def _certify(lattice: str, form: list[list[Fraction]], rows, to_witness) -> DefinitenessCertificate:
    basis = exact.nullspace([list(r) for r in rows], ncols=len(form))
    images = [exact.matvec(form, w) for w in basis]
    restricted = [[exact.dot(u, img) for img in images] for u in basis]
    pivots, p = exact.diagonalize(restricted) if basis else ((), [])
    inert = (sum(x > 0 for x in pivots), sum(x < 0 for x in pivots), sum(x == 0 for x in pivots))
    cert = DefinitenessCertificate(
        lattice,
        tuple(basis),
        tuple(tuple(r) for r in restricted),
        tuple(pivots),
        inert,
    )
    if not cert.negative_definite:
        j = next(k for k, d in enumerate(pivots) if d >= 0)
        coeffs = p[j]
        flat = tuple(sum((c * b[i] for c, b in zip(coeffs, basis)), Q(0)) for i in range(len(form)))
        raise NotDefinite(
            f"form is not negative definite on ker Z ({lattice}); inertia {inert}",
            witness=to_witness(flat), value=pivots[j], inertia=inert)
    return cert


def certify_negative_definite(spec: SurfaceSpec, params: ChargeParams, A=0, B=0) -> DefinitenessCertificate:
    """Certify ``Q_{A,B}`` is negative definite on ``ker Z`` inside the rational lattice.

    The kernel basis is exact; the restricted Gram matrix is diagonalized by
    congruence and its inertia returned.  On failure :class:`NotDefinite`
    carries a kernel vector ``v`` with ``Q(v) >= 0``.
    """
    params = params.with_(eta=Q(0))
    re, im = charge_rows(spec, params)
    form = _flat_delta_matrix(spec.gram)
    _add_outer(form, im, to_q(A))
    _add_outer(form, re, to_q(B))
    r, n = spec.r, spec.n

    def witness(flat):
        return NumClass(flat[0], flat[1], flat[2:2 + r], flat[2 + r:2 + r + n], flat[-1])

    return _certify("resolution", form, (re, im), witness)


def certify_negative_definite_X(spec: SurfaceSpec, params: ChargeParams, A=0) -> DefinitenessCertificate:
    """Same certificate for ``Delta_X + A (Im Z)^2`` on the kernel of the induced charge
    ``-ch2 + s z ch0 + i (H.ch1 - alpha ch0)`` on the singular surface's lattice."""
    hx = spec.extra_q[0]
    re = (params.s * params.z, *(Q(0),) * (1 + spec.r), Q(-1))
    im = (-params.alpha, *hx, Q(0))
    form = _flat_delta_matrix(spec.extra_q)
    _add_outer(form, im, to_q(A))

    def witness(flat):
        return PushedClass(flat[0], flat[1], flat[2:-1], flat[-1])

    return _certify("singular", form, (re, im), witness)


def support_constants(spec: SurfaceSpec, params: ChargeParams, candidates: Iterable[NumClass],
                      include_simples: bool = False) -> tuple[Fraction, Fraction]:
    """Smallest ``(A0, B0)`` making ``Q_{A0,B0}`` nonnegative on the given classes.

    Classes with ``Im Z != 0`` constrain ``A0`` via ``-Delta / (Im Z)^2``; real
    classes constrain ``B0`` via ``-Delta / (Re Z)^2``.  With
    ``include_simples`` the classes of ``O_Pi`` and the shifted kernel simples
    are added to the real classes.
    """
    cands = list(candidates)
    if include_simples:
        from .exceptional import simple_classes

        sc = simple_classes(spec)
        cands += [sc.opi, *sc.s]
    if not cands:
        raise ValueError("support_constants needs at least one class")
    p0 = params.with_(eta=Q(0))
    a0 = b0 = Q(0)
    for w in cands:
        z = charge(spec, p0, w)
        delta = discriminant(spec, w)
        if z.im != 0:
            a0 = max(a0, -delta / z.im ** 2)
        elif z.re != 0:
            b0 = max(b0, -delta / z.re ** 2)
        elif delta < 0:
            raise ZeroCharge(f"class {w} has Z = 0 and Delta = {delta} < 0")
    return a0, b0
