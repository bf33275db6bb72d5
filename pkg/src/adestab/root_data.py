"""ADE configurations of exceptional (-2)-curves.

Curves are labelled 1..n.  The numbering per series is fixed:

* ``A_n``: along the path, ``1 - 2 - ... - n``.
* ``D_n``: curve 1 is the trivalent node, curves ``2..n-2`` run along the
  long tail away from it, and ``n-1``, ``n`` are the two short legs.
* ``E_n``: curve 1 is the trivalent node, followed by the arms from longest
  to shortest, each listed outward from the node.

Vectors indexed by curves (coefficients, multiplicities) are ordinary 0-based
Python sequences, so curve ``k`` sits at position ``k - 1``.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import cached_property
from fractions import Fraction
from typing import Sequence

from . import exact
from .errors import InternalContradiction, InvalidRank, NonTerminating, SingularMatrix

SERIES = ("A", "D", "E")

# Arm lengths (excluding the trivalent node) for the branched diagrams.
_E_ARMS = {6: (2, 2, 1), 7: (3, 2, 1), 8: (4, 2, 1)}


@dataclass(frozen=True, order=True)
class AdeType:
    series: str
    rank: int

    def __post_init__(self):
        if self.series not in SERIES:
            raise InvalidRank(f"unknown series {self.series!r}")
        if not isinstance(self.rank, int) or isinstance(self.rank, bool):
            raise InvalidRank(f"rank must be an integer, got {self.rank!r}")
        ok = {
            "A": self.rank >= 1,
            "D": self.rank >= 4,
            "E": self.rank in (6, 7, 8),
        }[self.series]
        if not ok:
            raise InvalidRank(f"no Dynkin diagram {self.series}{self.rank}")

    @classmethod
    def parse(cls, text: str) -> "AdeType":
        m = re.fullmatch(r"\s*([ADEade])\s*_?\s*(\d+)\s*", text)
        if not m:
            raise InvalidRank(f"cannot parse ADE type {text!r}; expected e.g. 'D4'")
        return cls(m.group(1).upper(), int(m.group(2)))

    def __str__(self) -> str:
        return f"{self.series}{self.rank}"


@dataclass(frozen=True)
class AdeData:
    type: AdeType
    gram: tuple[tuple[int, ...], ...]
    adjacency: tuple[tuple[int, int], ...]
    fund_cycle: tuple[int, ...] = field(default=())

    @property
    def n(self) -> int:
        return self.type.rank

    @cached_property
    def gram_q(self) -> list[list[Fraction]]:
        return exact.mat(self.gram)

    def pair(self, a: Sequence, b: Sequence) -> Fraction:
        """``(sum a_i C_i) . (sum b_i C_i)``."""
        return exact.bilinear(self.gram_q, exact.vec(a), exact.vec(b))

    def neighbors(self, k: int) -> list[int]:
        return sorted({j for i, j in self.adjacency if i == k} | {i for i, j in self.adjacency if j == k})

    def distances(self, source: int) -> dict[int, int]:
        """Tree distance from curve ``source`` to every curve."""
        dist = {source: 0}
        frontier = [source]
        while frontier:
            nxt = []
            for u in frontier:
                for w in self.neighbors(u):
                    if w not in dist:
                        dist[w] = dist[u] + 1
                        nxt.append(w)
            frontier = nxt
        return dist


def _edges(t: AdeType) -> list[tuple[int, int]]:
    n = t.rank
    if t.series == "A":
        return [(i, i + 1) for i in range(1, n)]
    if t.series == "D":
        arms = (n - 3, 1, 1)
    else:
        arms = _E_ARMS[n]
    edges = []
    nxt = 2
    for length in arms:
        prev = 1
        for _ in range(length):
            edges.append((prev, nxt))
            prev = nxt
            nxt += 1
    return edges


def _gram_from_edges(n: int, edges: Sequence[tuple[int, int]]) -> tuple[tuple[int, ...], ...]:
    g = [[0] * n for _ in range(n)]
    for i in range(n):
        g[i][i] = -2
    for a, b in edges:
        g[a - 1][b - 1] = g[b - 1][a - 1] = 1
    return tuple(tuple(row) for row in g)


def iteration_cap(n: int) -> int:
    return 8 * n * 8


def fundamental_cycle(gram: Sequence[Sequence[int]]) -> tuple[int, ...]:
    """Artin's minimal cycle: the least positive ``m`` with ``Z . C_j <= 0``.

    Start from ``m = (1, ..., 1)`` and bump any ``m_j`` with ``Z . C_j > 0``
    until none is left.
    """
    n = len(gram)
    m = [1] * n
    for _ in range(iteration_cap(n) + 1):
        bad = next((j for j in range(n) if sum(gram[j][i] * m[i] for i in range(n)) > 0), None)
        if bad is None:
            break
        m[bad] += 1
    else:
        raise NonTerminating(f"Artin's algorithm exceeded {iteration_cap(n)} increments")
    z_sq = sum(m[i] * gram[i][j] * m[j] for i in range(n) for j in range(n))
    if z_sq != -2:
        raise NonTerminating(f"fundamental cycle has self-intersection {z_sq}, expected -2")
    return tuple(m)


def build_ade(t: AdeType | str) -> AdeData:
    if isinstance(t, str):
        t = AdeType.parse(t)
    edges = tuple(_edges(t))
    gram = _gram_from_edges(t.rank, edges)
    return AdeData(type=t, gram=gram, adjacency=edges, fund_cycle=fundamental_cycle(gram))


def all_types(max_rank: int = 8) -> list[AdeType]:
    out = [AdeType("A", n) for n in range(1, max_rank + 1)]
    out += [AdeType("D", n) for n in range(4, max_rank + 1)]
    out += [AdeType("E", n) for n in (6, 7, 8) if n <= max_rank]
    return out


@dataclass(frozen=True)
class InverseCertificate:
    inverse: list[list[Fraction]]
    all_negative: bool


def inverse_negativity_check(data: AdeData) -> InverseCertificate:
    try:
        inv = exact.inverse(data.gram_q)
    except SingularMatrix as exc:
        raise SingularMatrix(f"{data.type}: intersection matrix is singular") from exc
    return InverseCertificate(inv, all(x < 0 for row in inv for x in row))


def cartan_select(data: AdeData, a: Sequence) -> int | None:
    """Smallest curve ``k`` with ``a_k < 0`` and ``C_k . sum a_i C_i > 0``.

    Returns ``None`` when no coefficient is negative.
    """
    a = exact.vec(a)
    if len(a) != data.n:
        raise exact.DimensionMismatch(f"expected {data.n} coefficients, got {len(a)}")
    if all(x >= 0 for x in a):
        return None
    pairing = exact.matvec(data.gram_q, a)
    for k in range(data.n):
        if a[k] < 0 and pairing[k] > 0:
            return k + 1
    raise InternalContradiction(f"no admissible index for {a} on {data.type}")
