"""Exact rational linear algebra on small dense matrices.

Matrices are lists of rows of :class:`fractions.Fraction`.  Sizes here never
exceed a few dozen, so plain Gauss-Jordan elimination is adequate and keeps
every result exact.
"""
from __future__ import annotations

from fractions import Fraction
from numbers import Rational
from typing import Iterable, Sequence

from .errors import DimensionMismatch, SingularMatrix

Q = Fraction
Vector = tuple[Fraction, ...]
Matrix = list[list[Fraction]]


def to_q(x) -> Fraction:
    """Coerce an int, Fraction or ``"p/q"`` string to a Fraction.

    Floats are refused: silently converting them would break exactness.
    """
    if isinstance(x, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"expected an exact rational, got {type(x).__name__}: {x!r}")


def fmt_q(x: Fraction) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def vec(xs: Iterable) -> Vector:
    return tuple(to_q(x) for x in xs)


def mat(rows: Iterable[Iterable]) -> Matrix:
    return [[to_q(x) for x in row] for row in rows]


def identity(n: int) -> Matrix:
    return [[Q(int(i == j)) for j in range(n)] for i in range(n)]


def dot(u: Sequence, v: Sequence) -> Fraction:
    if len(u) != len(v):
        raise DimensionMismatch(f"length {len(u)} vs {len(v)}")
    # lattice vectors are mostly zeros; skipping them keeps Fraction arithmetic cheap
    return sum((a * b for a, b in zip(u, v) if a and b), Q(0))


def matvec(m: Sequence[Sequence], v: Sequence) -> Vector:
    return tuple(dot(row, v) for row in m)


def bilinear(m: Sequence[Sequence], u: Sequence, v: Sequence) -> Fraction:
    return dot(u, matvec(m, v))


def transpose(m: Sequence[Sequence]) -> Matrix:
    return [list(col) for col in zip(*m)]


def matmul(a: Sequence[Sequence], b: Sequence[Sequence]) -> Matrix:
    bt = transpose(b)
    return [[dot(row, col) for col in bt] for row in a]


def is_symmetric(m: Sequence[Sequence]) -> bool:
    n = len(m)
    return all(len(row) == n for row in m) and all(
        m[i][j] == m[j][i] for i in range(n) for j in range(i + 1, n)
    )


def block_diag(*blocks: Sequence[Sequence]) -> Matrix:
    n = sum(len(b) for b in blocks)
    out = [[Q(0)] * n for _ in range(n)]
    off = 0
    for b in blocks:
        k = len(b)
        for i in range(k):
            for j in range(k):
                out[off + i][off + j] = to_q(b[i][j])
        off += k
    return out


def _rref(m: Matrix) -> tuple[Matrix, list[int]]:
    a = [list(row) for row in m]
    rows = len(a)
    cols = len(a[0]) if rows else 0
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        p = next((i for i in range(r, rows) if a[i][c] != 0), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        piv = a[r][c]
        a[r] = [x / piv for x in a[r]]
        for i in range(rows):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return a, pivots


def solve(m: Sequence[Sequence], b: Sequence) -> Vector:
    """Solve the square system ``m x = b`` exactly."""
    n = len(m)
    if len(b) != n or any(len(row) != n for row in m):
        raise DimensionMismatch("solve needs a square matrix and matching rhs")
    aug = [[to_q(x) for x in row] + [to_q(bi)] for row, bi in zip(m, b)]
    red, pivots = _rref(aug)
    if pivots[:n] != list(range(n)):
        raise SingularMatrix("matrix is singular")
    return tuple(red[i][n] for i in range(n))


def inverse(m: Sequence[Sequence]) -> Matrix:
    n = len(m)
    aug = [[to_q(x) for x in row] + [Q(int(i == j)) for j in range(n)] for i, row in enumerate(m)]
    red, pivots = _rref(aug)
    if pivots[:n] != list(range(n)):
        raise SingularMatrix("matrix is singular")
    return [row[n:] for row in red]


def determinant(m: Sequence[Sequence]) -> Fraction:
    a = [[to_q(x) for x in row] for row in m]
    n = len(a)
    det = Q(1)
    for c in range(n):
        p = next((i for i in range(c, n) if a[i][c] != 0), None)
        if p is None:
            return Q(0)
        if p != c:
            a[c], a[p] = a[p], a[c]
            det = -det
        det *= a[c][c]
        for i in range(c + 1, n):
            f = a[i][c] / a[c][c]
            if f:
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return det


def nullspace(m: Sequence[Sequence], ncols: int | None = None) -> list[Vector]:
    """Basis of ``{x : m x = 0}`` from the reduced row echelon form."""
    a = [[to_q(x) for x in row] for row in m]
    if ncols is None:
        ncols = len(a[0]) if a else 0
    if not a:
        return [tuple(Q(int(i == j)) for j in range(ncols)) for i in range(ncols)]
    red, pivots = _rref(a)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        x = [Q(0)] * ncols
        x[f] = Q(1)
        for r, pc in enumerate(pivots):
            x[pc] = -red[r][f]
        basis.append(tuple(x))
    return basis


def diagonalize(m: Sequence[Sequence]) -> tuple[Vector, Matrix]:
    """Congruence-diagonalize a symmetric matrix.

    Returns ``(d, P)`` with ``P m P^T = diag(d)`` and ``P`` invertible.  This is
    symmetric Gaussian elimination (LDL^T with pivoting); a zero diagonal with a
    nonzero off-diagonal entry is repaired by adding the partner row and column,
    which turns ``[[0, b], [b, 0]]`` into a pivot ``2b``.

    Row ``k`` of ``P`` is a vector ``x`` with ``x^T m x = d[k]``; this is how
    witnesses are produced.
    """
    if not is_symmetric(m):
        raise DimensionMismatch("diagonalize needs a square symmetric matrix")
    a = [[to_q(x) for x in row] for row in m]
    n = len(a)
    p = identity(n)

    def swap(i: int, j: int) -> None:
        a[i], a[j] = a[j], a[i]
        for row in a:
            row[i], row[j] = row[j], row[i]
        p[i], p[j] = p[j], p[i]

    def add_to(k: int, j: int) -> None:
        # row_k += row_j, col_k += col_j
        a[k] = [x + y for x, y in zip(a[k], a[j])]
        for row in a:
            row[k] += row[j]
        p[k] = [x + y for x, y in zip(p[k], p[j])]

    for k in range(n):
        if a[k][k] == 0:
            j = next((j for j in range(k + 1, n) if a[j][j] != 0), None)
            if j is not None:
                swap(k, j)
            else:
                j = next((j for j in range(k + 1, n) if a[k][j] != 0), None)
                if j is None:
                    continue
                add_to(k, j)
        piv = a[k][k]
        for i in range(k + 1, n):
            f = a[i][k] / piv
            if f:
                a[i] = [x - f * y for x, y in zip(a[i], a[k])]
                for row in a:
                    row[i] -= f * row[k]
                p[i] = [x - f * y for x, y in zip(p[i], p[k])]
    return tuple(a[i][i] for i in range(n)), p


def inertia(m: Sequence[Sequence]) -> tuple[int, int, int]:
    """``(n_plus, n_minus, n_zero)`` of a symmetric rational matrix (Sylvester)."""
    d, _ = diagonalize(m)
    return (sum(x > 0 for x in d), sum(x < 0 for x in d), sum(x == 0 for x in d))
