"""Wall location along the ``epsilon`` and ``s`` deformation paths.

Both parameters enter the charge affinely, so the alignment condition
``Re Z(w) Im Z(v) - Re Z(v) Im Z(w) = 0`` is a polynomial of degree at most
two in the parameter.  Roots are solved exactly; an irrational root of the
quadratic case is kept as a :class:`QuadSurd`.
"""
from __future__ import annotations

import itertools
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

from .charge import ChargeParams, ChargeValue, charge, q_form
from .errors import BoxTooLarge, EmptyRange
from .exact import Q, fmt_q, to_q
from .lattice import NumClass, SurfaceSpec

PARAMETERS = ("epsilon", "s")


def max_workers() -> int:
    try:
        return max(1, int(os.environ.get("ADESTAB_THREADS", "1")))
    except ValueError:
        return 1


@dataclass(frozen=True)
class QuadSurd:
    """The real number ``a + b*sqrt(r)`` with rational ``a, b`` and non-square ``r > 0``."""

    a: Fraction
    b: Fraction
    r: Fraction

    def sign(self) -> int:
        return _surd_sign(self.a, self.b, self.r)

    def __float__(self) -> float:
        return float(self.a) + float(self.b) * math.sqrt(self.r)

    def __str__(self) -> str:
        return f"{fmt_q(self.a)} + {fmt_q(self.b)}*sqrt({fmt_q(self.r)})"


Value = Union[Fraction, QuadSurd]


def _surd_sign(a: Fraction, b: Fraction, r: Fraction) -> int:
    # sign of a + b sqrt(r)
    sa = (a > 0) - (a < 0)
    sb = (b > 0) - (b < 0)
    if sb == 0 or sa == sb:
        return sa if sa else sb
    if sa == 0:
        return sb
    diff = a * a - b * b * r
    return sa if diff > 0 else (sb if diff < 0 else 0)


def _eval_sign(poly: Sequence[Fraction], x: Value) -> int:
    """Sign of ``poly[0] + poly[1] x + poly[2] x^2`` at ``x``."""
    if isinstance(x, Fraction):
        val = sum((c * x ** k for k, c in enumerate(poly)), Q(0))
        return (val > 0) - (val < 0)
    # arithmetic in Q(sqrt r): track (p, q) for p + q sqrt r
    p, qq = Q(0), Q(0)
    pw = (Q(1), Q(0))
    for c in poly:
        p += c * pw[0]
        qq += c * pw[1]
        pw = (pw[0] * x.a + pw[1] * x.b * x.r, pw[0] * x.b + pw[1] * x.a)
    return _surd_sign(p, qq, x.r)


def _less(x: Value, y: Fraction) -> int:
    """Sign of ``x - y``."""
    if isinstance(x, Fraction):
        return (x > y) - (x < y)
    return _surd_sign(x.a - y, x.b, x.r)


def _rational_sqrt(x: Fraction) -> Fraction | None:
    if x < 0:
        return None
    n, d = math.isqrt(x.numerator), math.isqrt(x.denominator)
    if n * n == x.numerator and d * d == x.denominator:
        return Q(n, d)
    return None


def solve_quadratic(c0: Fraction, c1: Fraction, c2: Fraction) -> list[Value] | None:
    """Real roots of ``c0 + c1 x + c2 x^2``; ``None`` for the zero polynomial."""
    if c2 == 0:
        if c1 == 0:
            return None if c0 == 0 else []
        return [-c0 / c1]
    disc = c1 * c1 - 4 * c2 * c0
    if disc < 0:
        return []
    root = _rational_sqrt(disc)
    if root is not None:
        return sorted({(-c1 - root) / (2 * c2), (-c1 + root) / (2 * c2)})
    a, b = -c1 / (2 * c2), Q(1) / (2 * c2)
    lo, hi = QuadSurd(a, -abs(b), disc), QuadSurd(a, abs(b), disc)
    return [lo, hi]


@dataclass(frozen=True)
class Interval:
    lo: Fraction
    hi: Fraction
    lo_closed: bool = False
    hi_closed: bool = True

    def __post_init__(self):
        object.__setattr__(self, "lo", to_q(self.lo))
        object.__setattr__(self, "hi", to_q(self.hi))
        if self.lo > self.hi or (self.lo == self.hi and not (self.lo_closed and self.hi_closed)):
            raise EmptyRange(f"empty parameter range {self}")

    def contains(self, x: Value) -> bool:
        a, b = _less(x, self.lo), _less(x, self.hi)
        return (a > 0 or (a == 0 and self.lo_closed)) and (b < 0 or (b == 0 and self.hi_closed))

    def __str__(self) -> str:
        return f"{'[' if self.lo_closed else '('}{fmt_q(self.lo)}, {fmt_q(self.hi)}{']' if self.hi_closed else ')'}"


@dataclass(frozen=True)
class Wall:
    value: Value
    witnesses: tuple[NumClass, ...]


@dataclass(frozen=True)
class WallSegment:
    """A candidate whose phase agrees with ``v`` on the whole range."""

    interval: Interval
    witness: NumClass


@dataclass(frozen=True)
class WallReport:
    parameter: str
    interval: Interval
    v: NumClass
    walls: tuple[Wall, ...]
    segments: tuple[WallSegment, ...]


def affine_charge(spec: SurfaceSpec, params: ChargeParams, parameter: str, w: NumClass):
    """``(Z at parameter 0, d Z / d parameter)`` for the affine family."""
    if parameter not in PARAMETERS:
        raise ValueError(f"parameter must be one of {PARAMETERS}, got {parameter!r}")
    z0 = charge(spec, params.with_(**{parameter: Q(0)}), w)
    z1 = charge(spec, params.with_(**{parameter: Q(1)}), w)
    return z0, ChargeValue(z1.re - z0.re, z1.im - z0.im)


def charge_at(spec: SurfaceSpec, params: ChargeParams, parameter: str, lam: Fraction, w: NumClass) -> ChargeValue:
    return charge(spec, params.with_(**{parameter: to_q(lam)}), w)


def _product(a0, a1, b0, b1) -> tuple[Fraction, Fraction, Fraction]:
    return (a0 * b0, a0 * b1 + a1 * b0, a1 * b1)


def _sub(p, q_):
    return tuple(x - y for x, y in zip(p, q_))


def _add(p, q_):
    return tuple(x + y for x, y in zip(p, q_))


def _walls_for(zv, zw, interval: Interval) -> tuple[list[Value], bool]:
    (v0, v1), (w0, w1) = zv, zw
    cross = _cross_poly(zv, zw)
    # alignment (not opposition): Re Re + Im Im > 0
    dot = _add(_product(w0.re, w1.re, v0.re, v1.re), _product(w0.im, w1.im, v0.im, v1.im))
    roots = solve_quadratic(*cross)
    if roots is None:
        return [], True
    return [r for r in roots if interval.contains(r) and _eval_sign(dot, r) > 0], False


def scan_walls(spec: SurfaceSpec, params: ChargeParams, v: NumClass, candidates: Iterable[NumClass],
               parameter: str, interval: Interval | tuple = (0, 1)) -> WallReport:
    """Parameter values in ``interval`` where some candidate's phase meets ``v``'s.

    A candidate whose charge stays parallel to ``Z(v)`` over the whole range is
    reported as a :class:`WallSegment` instead of as isolated walls.  The
    candidate equal to ``v`` itself is skipped.
    """
    if not isinstance(interval, Interval):
        interval = Interval(*interval)
    zv = affine_charge(spec, params, parameter, v)
    cands = [w for w in dict.fromkeys(candidates) if w != v]

    def one(w):
        return w, _walls_for(zv, affine_charge(spec, params, parameter, w), interval)

    workers = max_workers()
    if workers > 1 and len(cands) > 1:
        with ThreadPoolExecutor(max_workers=workers) as ex:
            results = list(ex.map(one, cands))
    else:
        results = [one(w) for w in cands]

    by_value: dict = {}
    segments = []
    for w, (roots, degenerate) in results:
        if degenerate:
            mid = (interval.lo + interval.hi) / 2
            a, b = charge_at(spec, params, parameter, mid, v), charge_at(spec, params, parameter, mid, w)
            if a.re * b.re + a.im * b.im > 0:
                segments.append(WallSegment(interval, w))
            continue
        for r in roots:
            by_value.setdefault(r, []).append(w)
    walls = [Wall(r, tuple(ws)) for r, ws in by_value.items()]
    walls.sort(key=lambda wl: float(wl.value))
    return WallReport(parameter, interval, v, tuple(walls), tuple(segments))


def verify_wall(spec: SurfaceSpec, params: ChargeParams, parameter: str, wall: Wall, v: NumClass) -> bool:
    """Exact re-evaluation of the alignment at a rational wall value."""
    if not isinstance(wall.value, Fraction):
        zv = affine_charge(spec, params, parameter, v)
        return all(_eval_sign(_cross_poly(zv, affine_charge(spec, params, parameter, w)), wall.value) == 0
                   for w in wall.witnesses)
    a = charge_at(spec, params, parameter, wall.value, v)
    for w in wall.witnesses:
        b = charge_at(spec, params, parameter, wall.value, w)
        if b.re * a.im != a.re * b.im:
            return False
    return True


def _cross_poly(zv, zw):
    (v0, v1), (w0, w1) = zv, zw
    return _sub(_product(w0.re, w1.re, v0.im, v1.im), _product(v0.re, v1.re, w0.im, w1.im))


# -- candidate enumeration --------------------------------------------------------

@dataclass(frozen=True)
class Box:
    """Inclusive integer ranges for candidate coordinates.

    ``e`` applies to every exceptional coefficient and ``x`` to every extra
    coordinate.  The ``h`` coefficient is not boxed: it is fixed by requiring
    ``0 <= Im Z(w) <= Im Z(v)``.
    """

    ch0: tuple[int, int] = (0, 0)
    e: tuple[int, int] = (0, 0)
    ch2: tuple[int, int] = (0, 0)
    x: tuple[int, int] = (0, 0)

    def cardinality(self, spec: SurfaceSpec) -> int:
        def size(r):
            return max(0, r[1] - r[0] + 1)

        return size(self.ch0) * size(self.ch2) * size(self.e) ** spec.n * size(self.x) ** spec.r


DEFAULT_CAP = 1_000_000


def enumerate_candidates(spec: SurfaceSpec, params: ChargeParams, v: NumClass, box: Box,
                         A=0, B=0, cap: int = DEFAULT_CAP) -> list[NumClass]:
    """Nonzero integral classes ``w`` in the box with ``0 <= Im Z(w) <= Im Z(v)``
    and ``Q_{A,B}(w) >= 0``."""
    size = box.cardinality(spec)
    if size > cap:
        raise BoxTooLarge(f"box has {size} points, cap is {cap}")
    d = to_q(spec.h_square)
    im_v = charge(spec, params, v).im
    out = []
    rng = lambda r: range(r[0], r[1] + 1)  # noqa: E731
    for ch0 in rng(box.ch0):
        for xs in itertools.product(rng(box.x), repeat=spec.r):
            for es in itertools.product(rng(box.e), repeat=spec.n):
                base = spec.make_class(ch0, 0, xs, es, 0)
                rest = charge(spec, params, base).im
                h_lo = math.ceil(-rest / d)
                h_hi = math.floor((im_v - rest) / d)
                for h in range(h_lo, h_hi + 1):
                    for ch2 in rng(box.ch2):
                        w = spec.make_class(ch0, h, xs, es, ch2)
                        if w == spec.zero():
                            continue
                        if q_form(spec, params, A, B, w) >= 0:
                            out.append(w)
    return out
