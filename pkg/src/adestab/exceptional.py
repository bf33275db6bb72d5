"""Class-level combinatorics of objects supported on the exceptional locus.

The finite-length objects supported on the fundamental cycle have simple
classes ``opi = (0, sum m_i e_i, 1)`` (the structure sheaf of the cycle) and
``s_i = (0, -e_i, 0)`` (the shifted sheaves ``O_{C_i}(-1)[1]``).  A skyscraper
at a point of the exceptional locus has class ``ox = (0, 0, 1)`` and admits
a filtration whose factors are ``opi`` once and ``s_i`` with multiplicity
``m_i``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .charge import ChargeParams, ChargeValue, charge, compare_phase
from .errors import NonTermination, NotExceptionalClass, Stuck
from .exact import Q
from .lattice import NumClass, SurfaceSpec, lift, pr_kernel, pushforward
from .root_data import cartan_select


@dataclass(frozen=True)
class SimpleClasses:
    opi: NumClass
    s: tuple[NumClass, ...]
    ox: NumClass


def simple_classes(spec: SurfaceSpec) -> SimpleClasses:
    m = spec.ade.fund_cycle
    opi = spec.make_class(e=m, ch2=1)
    s = tuple(spec.curve(i, -1) for i in range(1, spec.n + 1))
    ox = spec.make_class(ch2=1)
    total = opi
    for mi, si in zip(m, s):
        total = total + mi * si
    assert total == ox, "telescoping identity failed"
    return SimpleClasses(opi, s, ox)


def decompose(spec: SurfaceSpec, v: NumClass) -> tuple[int, tuple[int, ...]] | None:
    """Jordan-Holder multiplicities ``(n0; n_1..n_n)`` with ``v = n0 opi + sum n_i s_i``.

    Returns ``None`` if a multiplicity is negative or fractional.
    """
    spec.check_class(v)
    if v.ch0 != 0 or v.h != 0 or any(v.x):
        raise NotExceptionalClass("class must have ch0 = 0 and ch1 in the exceptional span")
    n0 = v.ch2
    ns = [n0 * m - c for m, c in zip(spec.ade.fund_cycle, v.e)]
    if any(q.denominator != 1 or q < 0 for q in (n0, *ns)):
        return None
    return int(n0), tuple(int(q) for q in ns)


# -- skyscraper filtration ------------------------------------------------------

@dataclass(frozen=True)
class PeelStep:
    curve: int
    multiplicity: int
    divisor: tuple[int, ...]  # D_k after removal


@dataclass(frozen=True)
class FiltrationReport:
    target: int
    fund_cycle: tuple[int, ...]
    steps: tuple[PeelStep, ...]
    factors: dict[str, int]
    telescoping_ok: bool

    def divisors(self) -> list[tuple[int, ...]]:
        """``D_0 = fundamental cycle, D_1, ..., D_K = e_target``."""
        return [self.fund_cycle, *(s.divisor for s in self.steps)]

    def multiplicities(self, n: int) -> tuple[int, ...]:
        return tuple(self.factors.get(f"s_{i}", 0) for i in range(1, n + 1))


def _connected(spec: SurfaceSpec, support: set[int]) -> bool:
    if not support:
        return False
    start = next(iter(support))
    seen = {start}
    stack = [start]
    while stack:
        u = stack.pop()
        for w in spec.ade.neighbors(u):
            if w in support and w not in seen:
                seen.add(w)
                stack.append(w)
    return seen == support


def skyscraper_filtration(spec: SurfaceSpec, target: int) -> FiltrationReport:
    """Peel the fundamental cycle down to the reduced target curve.

    Each step removes ``n = -D.e_a`` copies of a curve ``a`` with ``D.e_a < 0``,
    keeping ``D`` effective with connected support through the target; this
    preserves ``D^2 = -2`` and hence ``ch2 = 1`` of every intermediate class.
    Among admissible curves the one farthest from the target wins, then the
    smallest label.
    """
    spec.check_index(target)
    ade = spec.ade
    n = spec.n
    dist = ade.distances(target)
    goal = tuple(int(i == target) for i in range(1, n + 1))
    d = list(ade.fund_cycle)
    steps = []
    limit = sum(d)
    while tuple(d) != goal:
        if len(steps) > limit:
            raise Stuck(f"peeling did not finish within {limit} steps")
        pair = [sum(ade.gram[a][i] * d[i] for i in range(n)) for a in range(n)]
        options = []
        for a in range(n):
            if pair[a] >= 0:
                continue
            k = -pair[a]
            nd = list(d)
            nd[a] -= k
            support = {i + 1 for i in range(n) if nd[i] > 0}
            if nd[a] < 0 or target not in support or not _connected(spec, support):
                continue
            options.append((-dist[a + 1], a + 1, k, nd))
        if not options:
            raise Stuck(f"{ade.type}, target {target}: no admissible curve at D = {tuple(d)}")
        _, a, k, d = min(options)
        steps.append(PeelStep(a, k, tuple(d)))

    factors = {"opi": 1}
    for st in steps:
        factors[f"s_{st.curve}"] = factors.get(f"s_{st.curve}", 0) + st.multiplicity
    factors[f"s_{target}"] = factors.get(f"s_{target}", 0) + 1
    factors = {"opi": 1, **{f"s_{i}": factors[f"s_{i}"] for i in range(1, n + 1) if f"s_{i}" in factors}}

    sc = simple_classes(spec)
    total = sc.opi
    for st in steps:
        total = total + st.multiplicity * sc.s[st.curve - 1]
    ok = total == spec.make_class(e=goal, ch2=1)
    total = total + sc.s[target - 1]
    ok = ok and total == sc.ox
    return FiltrationReport(target, ade.fund_cycle, tuple(steps), factors, ok)


@dataclass(frozen=True)
class PhaseChain:
    ok: bool
    charges: tuple[tuple[str, ChargeValue], ...]
    violation: str | None = None


def phase_chain_check(spec: SurfaceSpec, params: ChargeParams, report: FiltrationReport) -> PhaseChain:
    """Check ``phi(opi) < phi(O_{D_1}) < ... < phi(ox) = 1 < phi(s_i)`` for all ``i``.

    ``params`` should carry the deformation ``eta > 0``; at ``eta = 0`` every
    class here is real and the chain collapses to phase 1.
    """
    labelled: list[tuple[str, NumClass]] = []
    for k, dv in enumerate(report.divisors()):
        labelled.append(("opi" if k == 0 else f"O_D{k}", spec.make_class(e=dv, ch2=1)))
    sc = simple_classes(spec)
    labelled.append(("ox", sc.ox))
    charges = [(name, charge(spec, params, v)) for name, v in labelled]
    simples = [(f"s_{i}", charge(spec, params, s)) for i, s in enumerate(sc.s, start=1)]
    allc = tuple(charges + simples)

    for (na, za), (nb, zb) in zip(charges, charges[1:]):
        if compare_phase(za, zb) >= 0:
            return PhaseChain(False, allc, f"phi({na}) < phi({nb}) fails")
    z_ox = charges[-1][1]
    if compare_phase(z_ox, ChargeValue(Q(-1), Q(0))) != 0:
        return PhaseChain(False, allc, "phi(ox) != 1")
    for name, zs in simples:
        if compare_phase(z_ox, zs) >= 0:
            return PhaseChain(False, allc, f"phi(ox) < phi({name}) fails")
    return PhaseChain(True, allc)


# -- normalization walk ---------------------------------------------------------

@dataclass(frozen=True)
class WalkStep:
    op: str  # "add" appends s_k (extension), "sub" removes s_k (kernel of a map)
    curve: int
    cls: NumClass


@dataclass(frozen=True)
class WalkTrace:
    start: NumClass
    steps: tuple[WalkStep, ...]

    @property
    def end(self) -> NumClass:
        return self.steps[-1].cls if self.steps else self.start


def normalize_walk(spec: SurfaceSpec, v: NumClass) -> WalkTrace:
    """Replay the class-level walk that moves kernel coefficients into ``[0, 1)``.

    If a coefficient is ``>= 1``, extensions by ``s_k`` lower positive
    coefficients (``k`` chosen by :func:`cartan_select` on the negated
    coefficients) until none is positive; then kernels of maps to ``s_l``
    raise negative coefficients (``l`` from :func:`cartan_select`) until none
    is negative.  The endpoint has the same pushforward as ``v``.
    """
    a, _ = pr_kernel(spec, v)
    b = list(a)
    if all(0 <= c < 1 for c in b):
        return WalkTrace(v, ())
    mass = sum(abs(c) for c in b)
    cap = (math.ceil(mass) + 1) * spec.n * 4
    sc = simple_classes(spec)
    cur = v
    steps = []

    def tick():
        if len(steps) >= cap:
            raise NonTermination(f"normalization walk exceeded {cap} steps")

    if any(c >= 1 for c in b):
        while any(c > 0 for c in b):
            tick()
            k = cartan_select(spec.ade, [-c for c in b])
            cur = cur + sc.s[k - 1]
            b[k - 1] -= 1
            steps.append(WalkStep("add", k, cur))
    while any(c < 0 for c in b):
        tick()
        k = cartan_select(spec.ade, b)
        cur = cur - sc.s[k - 1]
        b[k - 1] += 1
        steps.append(WalkStep("sub", k, cur))
    return WalkTrace(v, tuple(steps))


def walk_target(spec: SurfaceSpec, v: NumClass) -> NumClass:
    """``lift(pushforward(v))`` within the coset of ``v``; equals the walk's endpoint."""
    return lift(spec, pushforward(spec, v), offset=v.e)
