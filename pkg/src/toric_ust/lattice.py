"""Exact integer linear algebra.

Vectors are plain tuples of Python ints and matrices are tuples of row
tuples, so every value is hashable, immutable and arbitrary precision.
Rational intermediate results use :class:`fractions.Fraction`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import DegenerateInputError, DimensionError

Vector = tuple[int, ...]
Matrix = tuple[Vector, ...]


def vec(coords: Iterable[int]) -> Vector:
    out = tuple(int(c) for c in coords)
    return out


def pairing(m: Sequence[int], v: Sequence[int]) -> int:
    """Dot product of a character ``m`` with a cocharacter ``v``."""
    if len(m) != len(v):
        raise DimensionError(f"rank mismatch: {len(m)} vs {len(v)}")
    return sum(a * b for a, b in zip(m, v))


def add(a: Sequence[int], b: Sequence[int]) -> Vector:
    if len(a) != len(b):
        raise DimensionError(f"rank mismatch: {len(a)} vs {len(b)}")
    return tuple(x + y for x, y in zip(a, b))


def sub(a: Sequence[int], b: Sequence[int]) -> Vector:
    if len(a) != len(b):
        raise DimensionError(f"rank mismatch: {len(a)} vs {len(b)}")
    return tuple(x - y for x, y in zip(a, b))


def scale(k: int, a: Sequence[int]) -> Vector:
    return tuple(k * x for x in a)


def vsum(vectors: Iterable[Sequence[int]], rank: int) -> Vector:
    total = [0] * rank
    for v in vectors:
        if len(v) != rank:
            raise DimensionError(f"rank mismatch: {len(v)} vs {rank}")
        for i, x in enumerate(v):
            total[i] += x
    return tuple(total)


def zero(rank: int) -> Vector:
    return (0,) * rank


def primitivize(v: Sequence[int]) -> Vector:
    """Divide ``v`` by the gcd of its coordinates (sign is preserved)."""
    g = math.gcd(*v) if len(v) else 0
    if g == 0:
        raise DegenerateInputError("cannot primitivize the zero vector")
    return tuple(x // g for x in v)


# -- matrices ---------------------------------------------------------------

def as_matrix(rows: Iterable[Iterable[int]]) -> Matrix:
    m = tuple(vec(r) for r in rows)
    if m and any(len(r) != len(m[0]) for r in m):
        raise DimensionError("ragged matrix")
    return m


def identity(n: int) -> Matrix:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def transpose(a: Sequence[Sequence[int]], ncols: int | None = None) -> Matrix:
    if not a:
        return tuple(() for _ in range(ncols or 0))
    return tuple(zip(*a))


def matmul(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]]) -> Matrix:
    if a and b and len(a[0]) != len(b):
        raise DimensionError(f"cannot multiply {len(a)}x{len(a[0])} by {len(b)}x{len(b[0])}")
    bt = transpose(b)
    return tuple(tuple(sum(x * y for x, y in zip(row, col)) for col in bt) for row in a)


def matvec(a: Sequence[Sequence[int]], v: Sequence[int]) -> Vector:
    return tuple(pairing(row, v) for row in a)


def determinant(a: Sequence[Sequence[int]]) -> int:
    """Bareiss fraction-free determinant of a square integer matrix."""
    n = len(a)
    if any(len(r) != n for r in a):
        raise DimensionError("determinant of a non-square matrix")
    if n == 0:
        return 1
    m = [list(r) for r in a]
    sign, prev = 1, 1
    for k in range(n - 1):
        if m[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if m[i][k] != 0), None)
            if swap is None:
                return 0
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def _rref(rows: Sequence[Sequence], ncols: int) -> tuple[list[list[Fraction]], list[int]]:
    m = [[Fraction(x) for x in r] for r in rows]
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(vectors: Sequence[Sequence[int]], ncols: int | None = None) -> int:
    if not vectors:
        return 0
    return len(_rref(vectors, ncols if ncols is not None else len(vectors[0]))[1])


def nullspace(rows: Sequence[Sequence[int]], ncols: int) -> list[Vector]:
    """Primitive integer basis of the rational kernel ``{x : rows . x = 0}``."""
    red, pivots = _rref(rows, ncols) if rows else ([], [])
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        x = [Fraction(0)] * ncols
        x[f] = Fraction(1)
        for row, p in zip(red, pivots):
            x[p] = -row[f]
        den = math.lcm(*(q.denominator for q in x))
        basis.append(primitivize([int(q * den) for q in x]))
    return basis


def solve(a: Sequence[Sequence[int]], b: Sequence) -> tuple[Fraction, ...] | None:
    """Unique rational solution of the square system ``a x = b``, or None if
    ``a`` is singular."""
    n = len(a)
    aug = [list(r) + [b[i]] for i, r in enumerate(a)]
    red, pivots = _rref(aug, n + 1)
    if pivots != list(range(n)):
        return None
    return tuple(row[n] for row in red)


def inverse(a: Sequence[Sequence[int]]) -> tuple[tuple[Fraction, ...], ...]:
    n = len(a)
    aug = [list(r) + [int(i == j) for j in range(n)] for i, r in enumerate(a)]
    red, pivots = _rref(aug, 2 * n)
    if pivots[:n] != list(range(n)) or len(pivots) < n:
        raise DegenerateInputError("matrix is singular")
    return tuple(tuple(row[n:]) for row in red)


def integer_inverse(a: Sequence[Sequence[int]]) -> Matrix:
    """Inverse of a unimodular matrix."""
    inv = inverse(a)
    if any(q.denominator != 1 for row in inv for q in row):
        raise DegenerateInputError("matrix is not unimodular")
    return tuple(tuple(int(q) for q in row) for row in inv)


# -- normal forms -----------------------------------------------------------

def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, x, y) with a*x + b*y = g = gcd(a, b) >= 0."""
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


def hermite_normal_form(rows: Sequence[Sequence[int]]) -> Matrix:
    """Row-style Hermite normal form with zero rows dropped.

    The result spans the same lattice as ``rows``; it is in row echelon form
    with positive pivots and entries above each pivot reduced into
    ``[0, pivot)``.
    """
    if not rows:
        return ()
    m = [list(r) for r in rows]
    ncols = len(m[0])
    r = 0
    for c in range(ncols):
        for i in range(r + 1, len(m)):
            if m[i][c] == 0:
                continue
            a, b = m[r][c], m[i][c]
            g, x, y = _xgcd(a, b)
            ra, rb = m[r], m[i]
            m[r] = [x * p + y * q for p, q in zip(ra, rb)]
            m[i] = [(a // g) * q - (b // g) * p for p, q in zip(ra, rb)]
        if m[r][c] == 0:
            continue
        if m[r][c] < 0:
            m[r] = [-x for x in m[r]]
        for i in range(r):
            q = m[i][c] // m[r][c]
            if q:
                m[i] = [p - q * s for p, s in zip(m[i], m[r])]
        r += 1
        if r == len(m):
            break
    return tuple(tuple(row) for row in m[:r] if any(row))


@dataclass(frozen=True)
class SmithDecomposition:
    """``left @ original @ right`` is diagonal with entries ``diag`` (then zeros).

    ``diag`` holds only the nonzero invariant factors, each dividing the next.
    ``left_inv`` is the inverse of ``left`` and is kept for lifting cokernel
    generators back to the original coordinates.
    """

    diag: tuple[int, ...]
    left: Matrix
    right: Matrix
    original: Matrix
    left_inv: Matrix

    @property
    def rank(self) -> int:
        return len(self.diag)

    def diagonal_matrix(self) -> Matrix:
        m, n = len(self.original), len(self.right)
        return tuple(tuple(self.diag[i] if i == j and i < len(self.diag) else 0
                           for j in range(n)) for i in range(m))


def smith_normal_form(a: Sequence[Sequence[int]], ncols: int | None = None) -> SmithDecomposition:
    """Smith normal form with unimodular transforms.

    ``ncols`` is only needed when ``a`` has no rows.
    """
    original = as_matrix(a)
    m = len(original)
    n = len(original[0]) if m else (ncols or 0)
    d = [list(r) for r in original]
    left = [list(r) for r in identity(m)]
    left_inv = [list(r) for r in identity(m)]
    right = [list(r) for r in identity(n)]

    # Row ops act on d and left; left_inv receives the inverse column op.
    def row_swap(i, j):
        d[i], d[j] = d[j], d[i]
        left[i], left[j] = left[j], left[i]
        for row in left_inv:
            row[i], row[j] = row[j], row[i]

    def row_addmul(dst, src, k):
        # row[dst] += k * row[src]
        d[dst] = [x + k * y for x, y in zip(d[dst], d[src])]
        left[dst] = [x + k * y for x, y in zip(left[dst], left[src])]
        for row in left_inv:
            row[src] -= k * row[dst]

    def row_neg(i):
        d[i] = [-x for x in d[i]]
        left[i] = [-x for x in left[i]]
        for row in left_inv:
            row[i] = -row[i]

    def col_swap(i, j):
        for row in d:
            row[i], row[j] = row[j], row[i]
        for row in right:
            row[i], row[j] = row[j], row[i]

    def col_addmul(dst, src, k):
        for row in d:
            row[dst] += k * row[src]
        for row in right:
            row[dst] += k * row[src]

    t = 0
    while t < min(m, n):
        entries = [(abs(d[i][j]), i, j) for i in range(t, m) for j in range(t, n) if d[i][j]]
        if not entries:
            break
        _, pi, pj = min(entries)
        if pi != t:
            row_swap(t, pi)
        if pj != t:
            col_swap(t, pj)
        while True:
            done = True
            for i in range(t + 1, m):
                if d[i][t]:
                    q = d[i][t] // d[t][t]
                    row_addmul(i, t, -q)
                    if d[i][t]:
                        row_swap(t, i)
                        done = False
            for j in range(t + 1, n):
                if d[t][j]:
                    q = d[t][j] // d[t][t]
                    col_addmul(j, t, -q)
                    if d[t][j]:
                        col_swap(t, j)
                        done = False
            if not done:
                continue
            bad = next((i for i in range(t + 1, m) for j in range(t + 1, n)
                        if d[i][j] % d[t][t]), None)
            if bad is None:
                break
            row_addmul(t, bad, 1)
        if d[t][t] < 0:
            row_neg(t)
        t += 1

    diag = tuple(d[i][i] for i in range(min(m, n)) if d[i][i])
    return SmithDecomposition(
        diag=diag,
        left=as_matrix(left),
        right=as_matrix(right) if n else (),
        original=original,
        left_inv=as_matrix(left_inv),
    )


def invariant_factors(a: Sequence[Sequence[int]]) -> tuple[int, ...]:
    return smith_normal_form(a).diag


def saturate_span(vectors: Sequence[Sequence[int]], ambient_rank: int) -> tuple[list[Vector], int]:
    """Lattice basis of ``span_R(vectors) ∩ Z^ambient_rank``.

    The basis is returned in Hermite normal form so the result does not
    depend on the order or scaling of the input.
    """
    if any(len(v) != ambient_rank for v in vectors):
        raise DimensionError("vector of the wrong rank")
    nonzero = [v for v in vectors if any(v)]
    if not nonzero:
        return [], 0
    # Columns of A are the input vectors; the saturation is spanned by the
    # first r columns of left^{-1}.
    a = transpose(nonzero)
    snf = smith_normal_form(a)
    r = snf.rank
    basis = [tuple(snf.left_inv[i][j] for i in range(ambient_rank)) for j in range(r)]
    return list(hermite_normal_form(basis)), r


def coordinates_in_basis(v: Sequence[int], basis: Sequence[Sequence[int]]) -> Vector:
    """Integer coordinates of ``v`` in a lattice basis (raises if ``v`` is
    not in the lattice the basis spans)."""
    k = len(basis)
    if k == 0:
        if any(v):
            raise DimensionError("nonzero vector in the zero lattice")
        return ()
    # Least-squares free: pick k independent coordinates via RREF of basis^T.
    bt = transpose(basis)
    aug = [list(row) + [v[i]] for i, row in enumerate(bt)]
    red, pivots = _rref(aug, k + 1)
    if k in pivots or pivots != list(range(k)):
        raise DimensionError(f"{tuple(v)} is not in the span of the basis")
    x = [row[k] for row in red[:k]]
    if any(q.denominator != 1 for q in x):
        raise DimensionError(f"{tuple(v)} is not in the lattice spanned by the basis")
    return tuple(int(q) for q in x)
