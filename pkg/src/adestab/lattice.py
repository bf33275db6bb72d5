"""Numerical Grothendieck lattices of the resolution and of the singular surface.

The Neron-Severi model of the resolution is ``Z h + (extra block) + sum Z e_i``
where ``h`` is the pulled-back polarization, the extra generators ``x_j`` pair
among themselves and with ``h`` through ``extra_gram``, and the exceptional
curves ``e_i`` span an orthogonal ADE block.  A class on the resolution is
``(ch0, ch1, ch2)`` with ``ch1`` written in the basis ``(h, x_1.., e_1..)``.
Pushing forward forgets the ``e`` coordinates.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Sequence

from . import exact
from .errors import BadBlock, BadSignature, DimensionMismatch, IndexOutOfRange
from .exact import to_q
from .root_data import AdeData, AdeType, build_ade


@dataclass(frozen=True)
class NumClass:
    """A class ``(ch0, h*h + sum x_j*x_j + sum e_i*e_i, ch2)`` on the resolution."""

    ch0: Fraction
    h: Fraction
    x: tuple[Fraction, ...]
    e: tuple[Fraction, ...]
    ch2: Fraction

    def __post_init__(self):
        object.__setattr__(self, "ch0", to_q(self.ch0))
        object.__setattr__(self, "h", to_q(self.h))
        object.__setattr__(self, "x", exact.vec(self.x))
        object.__setattr__(self, "e", exact.vec(self.e))
        object.__setattr__(self, "ch2", to_q(self.ch2))

    @property
    def ch1(self) -> tuple[Fraction, ...]:
        return (self.h, *self.x, *self.e)

    @property
    def integral(self) -> bool:
        return all(c.denominator == 1 for c in (self.ch0, self.ch2, *self.ch1))

    def _check(self, other: "NumClass") -> None:
        if len(self.x) != len(other.x) or len(self.e) != len(other.e):
            raise DimensionMismatch("classes live on different lattices")

    def __add__(self, other: "NumClass") -> "NumClass":
        self._check(other)
        return NumClass(
            self.ch0 + other.ch0,
            self.h + other.h,
            tuple(a + b for a, b in zip(self.x, other.x)),
            tuple(a + b for a, b in zip(self.e, other.e)),
            self.ch2 + other.ch2,
        )

    def __neg__(self) -> "NumClass":
        return self.scale(-1)

    def __sub__(self, other: "NumClass") -> "NumClass":
        return self + (-other)

    def scale(self, c) -> "NumClass":
        c = to_q(c)
        return NumClass(c * self.ch0, c * self.h, tuple(c * a for a in self.x),
                        tuple(c * a for a in self.e), c * self.ch2)

    __rmul__ = scale

    def coords(self) -> tuple[Fraction, ...]:
        """Flat coordinates ``(ch0, h, x.., e.., ch2)``."""
        return (self.ch0, *self.ch1, self.ch2)

    def __str__(self) -> str:
        terms = [(self.h, "h"), *((c, f"x{j}") for j, c in enumerate(self.x, 1)),
                 *((c, f"e{i}") for i, c in enumerate(self.e, 1))]
        return f"({exact.fmt_q(self.ch0)}, {_linear_str(terms)}, {exact.fmt_q(self.ch2)})"


def _linear_str(terms) -> str:
    out = ""
    for c, name in terms:
        if not c:
            continue
        mag = "" if abs(c) == 1 else exact.fmt_q(abs(c))
        if out:
            out += (" - " if c < 0 else " + ") + mag + name
        else:
            out = ("-" if c < 0 else "") + mag + name
    return out or "0"


@dataclass(frozen=True)
class PushedClass:
    """A class ``(ch0, H*H + sum x_j*xbar_j, ch2)`` on the singular surface."""

    ch0: Fraction
    h: Fraction
    x: tuple[Fraction, ...]
    ch2: Fraction

    def __post_init__(self):
        object.__setattr__(self, "ch0", to_q(self.ch0))
        object.__setattr__(self, "h", to_q(self.h))
        object.__setattr__(self, "x", exact.vec(self.x))
        object.__setattr__(self, "ch2", to_q(self.ch2))

    @property
    def ch1(self) -> tuple[Fraction, ...]:
        return (self.h, *self.x)

    def __add__(self, other: "PushedClass") -> "PushedClass":
        return PushedClass(self.ch0 + other.ch0, self.h + other.h,
                           tuple(a + b for a, b in zip(self.x, other.x)), self.ch2 + other.ch2)

    def scale(self, c) -> "PushedClass":
        c = to_q(c)
        return PushedClass(c * self.ch0, c * self.h, tuple(c * a for a in self.x), c * self.ch2)


@dataclass(frozen=True)
class SurfaceSpec:
    ade: AdeData
    h_square: int
    extra_rank: int = 0
    extra_gram: tuple[tuple[Fraction, ...], ...] = field(default=())

    def __post_init__(self):
        if not self.extra_gram:
            object.__setattr__(self, "extra_gram", ((to_q(self.h_square),),))
        object.__setattr__(self, "extra_gram", tuple(exact.vec(r) for r in self.extra_gram))

    @classmethod
    def make(cls, ade: str | AdeType | AdeData, h_square=2, extra_gram=None) -> "SurfaceSpec":
        """Build and validate a spec; ``extra_gram`` defaults to ``[[h_square]]``."""
        data = ade if isinstance(ade, AdeData) else build_ade(ade)
        eg = extra_gram if extra_gram is not None else [[h_square]]
        spec = cls(data, h_square, len(eg) - 1, tuple(tuple(r) for r in eg))
        validate_surface(spec)
        return spec

    @property
    def n(self) -> int:
        return self.ade.n

    @property
    def r(self) -> int:
        return self.extra_rank

    @cached_property
    def gram(self) -> list[list[Fraction]]:
        """Full Neron-Severi Gram matrix ``extra_gram (+) G``."""
        return exact.block_diag(self.extra_gram, self.ade.gram_q)

    @cached_property
    def extra_q(self) -> list[list[Fraction]]:
        return [list(r) for r in self.extra_gram]

    def zero(self) -> NumClass:
        return NumClass(0, 0, (0,) * self.r, (0,) * self.n, 0)

    def make_class(self, ch0=0, h=0, x=None, e=None, ch2=0) -> NumClass:
        x = tuple(x) if x is not None else (0,) * self.r
        e = tuple(e) if e is not None else (0,) * self.n
        v = NumClass(ch0, h, x, e, ch2)
        self.check_class(v)
        return v

    def curve(self, i: int, coeff=1) -> NumClass:
        """``(0, coeff*e_i, 0)``, the class of ``O_{C_i}(-1)`` when ``coeff == 1``."""
        self.check_index(i)
        e = [0] * self.n
        e[i - 1] = coeff
        return self.make_class(e=e)

    def check_class(self, v: NumClass) -> None:
        if len(v.x) != self.r or len(v.e) != self.n:
            raise DimensionMismatch(
                f"class has {len(v.x)} extra and {len(v.e)} exceptional coordinates; "
                f"spec expects {self.r} and {self.n}")

    def check_index(self, i: int) -> None:
        if not isinstance(i, int) or not 1 <= i <= self.n:
            raise IndexOutOfRange(f"curve index {i} outside 1..{self.n}")


@dataclass(frozen=True)
class SurfaceCertificate:
    inertia: tuple[int, int, int]
    h_square: Fraction


def validate_surface(spec: SurfaceSpec) -> SurfaceCertificate:
    eg = spec.extra_gram
    size = 1 + spec.extra_rank
    if len(eg) != size or any(len(row) != size for row in eg):
        raise BadBlock(f"extra_gram must be {size}x{size}")
    if not exact.is_symmetric(eg):
        raise BadBlock("extra_gram is not symmetric")
    d = to_q(spec.h_square)
    if eg[0][0] != d:
        raise BadBlock(f"extra_gram[0][0] = {eg[0][0]} differs from h_square = {d}")
    expected = (1, spec.n + spec.r, 0)
    if d <= 0:
        raise BadSignature(f"h^2 = {d} must be positive", inertia=None)
    got = exact.inertia(spec.gram)
    if got != expected:
        raise BadSignature(f"Neron-Severi inertia {got}, expected {expected}", inertia=got)
    return SurfaceCertificate(got, d)


def intersect(spec: SurfaceSpec, u: Sequence, v: Sequence) -> Fraction:
    """``u . v`` for ``ch1`` vectors in the basis ``(h, x.., e..)``."""
    k = 1 + spec.r + spec.n
    if len(u) != k or len(v) != k:
        raise DimensionMismatch(f"ch1 vectors must have length {k}")
    return exact.bilinear(spec.gram, exact.vec(u), exact.vec(v))


def _hx_pair(spec: SurfaceSpec, a: Sequence, b: Sequence) -> Fraction:
    return exact.bilinear(spec.extra_q, a, b)


def ch1_square(spec: SurfaceSpec, v: NumClass) -> Fraction:
    # blocks are orthogonal, so the two pieces add
    return _hx_pair(spec, (v.h, *v.x), (v.h, *v.x)) + spec.ade.pair(v.e, v.e)


def h_dot(spec: SurfaceSpec, v: NumClass) -> Fraction:
    """``h . ch1(v)``."""
    return exact.dot(spec.extra_q[0], (v.h, *v.x))


def discriminant(spec: SurfaceSpec, v: NumClass) -> Fraction:
    spec.check_class(v)
    return ch1_square(spec, v) - 2 * v.ch0 * v.ch2


def discriminant_X(spec: SurfaceSpec, w: PushedClass) -> Fraction:
    """Discriminant on the singular surface, using only the ``(H, xbar)`` block."""
    return _hx_pair(spec, w.ch1, w.ch1) - 2 * w.ch0 * w.ch2


def polar(spec: SurfaceSpec, u: NumClass, w: NumClass) -> Fraction:
    """Polarization ``b(u, w)`` of the discriminant, ``b(v, v) = discriminant(v)``."""
    return intersect(spec, u.ch1, w.ch1) - u.ch0 * w.ch2 - u.ch2 * w.ch0


def bogomolov_gieseker(spec: SurfaceSpec, w: PushedClass) -> bool:
    """``ch1^2 - 2 ch0 ch2 >= 0`` on the singular surface."""
    return discriminant_X(spec, w) >= 0


def pushforward(spec: SurfaceSpec, v: NumClass) -> PushedClass:
    spec.check_class(v)
    return PushedClass(v.ch0, v.h, v.x, v.ch2)


def pr_kernel(spec: SurfaceSpec, v: NumClass) -> tuple[tuple[Fraction, ...], NumClass]:
    """Orthogonal projection onto the kernel of pushforward.

    Solves ``G a = (e_i . ch1(v))_i``; the projection is ``sum a_i (0, e_i, 0)``
    and is orthogonal for the polarized discriminant.
    """
    spec.check_class(v)
    rhs = [kernel_pairing(spec, i, v) for i in range(1, spec.n + 1)]
    a = exact.solve(spec.ade.gram_q, rhs)
    return a, spec.make_class(e=a)


def kernel_pairing(spec: SurfaceSpec, i: int, v: NumClass) -> Fraction:
    """``e_i . ch1(v)``, the Euler pairing of ``O_{C_i}(-1)[1]`` against ``v``."""
    spec.check_index(i)
    spec.check_class(v)
    return exact.dot(spec.ade.gram_q[i - 1], v.e)


def canonical_preimage(spec: SurfaceSpec, w: PushedClass) -> NumClass:
    return spec.make_class(w.ch0, w.h, w.x, None, w.ch2)


def lift(spec: SurfaceSpec, w: PushedClass, offset: Sequence | None = None) -> NumClass:
    """The preimage of ``w`` whose kernel coefficients all lie in ``[0, 1)``.

    ``offset`` (exceptional coefficients) selects the coset
    ``canonical + offset + integral kernel``; by default the canonical preimage
    with no exceptional part is used.
    """
    if len(w.x) != spec.r:
        raise DimensionMismatch(f"pushed class has {len(w.x)} extra coordinates, expected {spec.r}")
    v = canonical_preimage(spec, w)
    if offset is not None:
        v = v + spec.make_class(e=offset)
    a, _ = pr_kernel(spec, v)
    floors = [math.floor(c) for c in a]
    return v - spec.make_class(e=floors)


@dataclass(frozen=True)
class DeltaCheck:
    delta: Fraction
    delta_pushed: Fraction
    ok: bool


def delta_push_check(spec: SurfaceSpec, v: NumClass) -> DeltaCheck:
    d = discriminant(spec, v)
    dp = discriminant_X(spec, pushforward(spec, v))
    return DeltaCheck(d, dp, dp >= d)
