"""Exact integer matrix utilities: determinants, inverses, Hermite normal form.

Everything here works on plain nested sequences of Python ints and returns
tuples, so results are hashable and safe to share between threads.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product
from typing import Iterator, Sequence

IntMatrix = tuple[tuple[int, ...], ...]


def as_int_matrix(rows: Sequence[Sequence[int]]) -> IntMatrix:
    out = tuple(tuple(int(v) for v in row) for row in rows)
    if not out:
        raise ValueError("empty matrix")
    n = len(out[0])
    if any(len(r) != n for r in out):
        raise ValueError("ragged matrix")
    return out


def identity(n: int) -> IntMatrix:
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def mat_mul(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]]) -> IntMatrix:
    n, k, m = len(a), len(b), len(b[0])
    if len(a[0]) != k:
        raise ValueError("shape mismatch")
    bt = list(zip(*b))
    return tuple(
        tuple(sum(a[i][t] * bt[j][t] for t in range(k)) for j in range(m))
        for i in range(n)
    )


def mat_vec(a: Sequence[Sequence[int]], x: Sequence[int]) -> tuple[int, ...]:
    if len(a[0]) != len(x):
        raise ValueError("shape mismatch")
    return tuple(sum(row[j] * x[j] for j in range(len(x))) for row in a)


def transpose(a: Sequence[Sequence[int]]) -> IntMatrix:
    return tuple(zip(*a))


def det_bareiss(rows: Sequence[Sequence[int]]) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise ValueError("matrix not square")
    m = [list(r) for r in rows]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def is_unimodular(rows: Sequence[Sequence[int]]) -> bool:
    return abs(det_bareiss(rows)) == 1


def inverse_rational(rows: Sequence[Sequence[int]]) -> tuple[tuple[Fraction, ...], ...]:
    """Exact inverse of a nonsingular integer matrix, as Fractions."""
    n = len(rows)
    aug = [[Fraction(v) for v in row] + [Fraction(int(i == j)) for j in range(n)]
           for i, row in enumerate(rows)]
    for col in range(n):
        piv = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if piv is None:
            raise ValueError("matrix is singular")
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = Fraction(1) / aug[col][col]
        aug[col] = [v * inv for v in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [a - f * b for a, b in zip(aug[r], aug[col])]
    return tuple(tuple(row[n:]) for row in aug)


def row_hnf(rows: Sequence[Sequence[int]]) -> IntMatrix:
    """Row-style Hermite normal form of an integer matrix.

    Returns the nonzero rows of the upper-triangular HNF of the row span:
    pivots positive, entries above a pivot reduced into [0, pivot).
    """
    m = [list(r) for r in rows]
    nrows, ncols = len(m), len(m[0])
    rank = 0
    for col in range(ncols):
        piv = None
        for r in range(rank, nrows):
            if m[r][col] != 0:
                piv = r
                break
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        # Euclidean elimination below the pivot.
        for r in range(rank + 1, nrows):
            while m[r][col] != 0:
                q = m[rank][col] // m[r][col]
                m[rank] = [a - q * b for a, b in zip(m[rank], m[r])]
                m[rank], m[r] = m[r], m[rank]
        if m[rank][col] < 0:
            m[rank] = [-v for v in m[rank]]
        for r in range(rank):
            q = m[r][col] // m[rank][col]
            if q:
                m[r] = [a - q * b for a, b in zip(m[r], m[rank])]
        rank += 1
        if rank == nrows:
            break
    return tuple(tuple(r) for r in m[:rank])


def hnf_basis(generators: Sequence[Sequence[int]], n: int) -> IntMatrix:
    """Basis (as rows) of the lattice spanned by integer generator rows.

    Raises if the generators do not span a rank-``n`` lattice.
    """
    h = row_hnf(generators)
    if len(h) != n:
        raise ValueError(f"generators have rank {len(h)}, expected {n}")
    return h


def enumerate_sublattice_hnf(d: int, index: int) -> Iterator[IntMatrix]:
    """All sublattices of Z^d of the given index, one HNF matrix each.

    Column-style HNF: lower-triangular, positive diagonal with product equal
    to ``index``, off-diagonal entries of row i reduced modulo the diagonal.
    Columns of each matrix generate the sublattice.
    """
    if d < 1 or index < 1:
        raise ValueError("d and index must be positive")

    def diagonals(dim: int, target: int) -> Iterator[tuple[int, ...]]:
        if dim == 1:
            yield (target,)
            return
        for first in divisors(target):
            for rest in diagonals(dim - 1, target // first):
                yield (first,) + rest

    for diag in diagonals(d, index):
        # Entries below the diagonal in column j live in row i > j and are
        # reduced modulo diag[i].
        slots = [(i, j) for j in range(d) for i in range(j + 1, d)]
        ranges = [range(diag[i]) for i, _ in slots]
        for combo in product(*ranges):
            mat = [[0] * d for _ in range(d)]
            for k in range(d):
                mat[k][k] = diag[k]
            for (i, j), v in zip(slots, combo):
                mat[i][j] = v
            yield tuple(tuple(r) for r in mat)


def divisors(n: int) -> list[int]:
    small = [k for k in range(1, int(n ** 0.5) + 1) if n % k == 0]
    large = [n // k for k in reversed(small) if k * k != n]
    return small + large
