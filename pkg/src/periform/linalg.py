"""Exact rational linear algebra for symmetric forms and tangent vectors.

All certificate-bearing arithmetic in the package goes through this module
and stays in ``fractions.Fraction``; floating point never enters here.
Symmetric matrices are stored as their upper triangle, so symmetry holds by
construction and the inner product doubles off-diagonal contributions.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Iterable, Sequence, Union

Rat = Fraction
RatLike = Union[int, Fraction]

__all__ = [
    "SymForm",
    "PQF",
    "TangentVector",
    "LDLResult",
    "ldl",
    "det_and_inverse",
    "inner",
    "rank_span",
    "ambient_dim",
]


def _frac(v: RatLike) -> Fraction:
    if isinstance(v, Fraction):
        return v
    if isinstance(v, int):
        return Fraction(v)
    raise TypeError(f"expected int or Fraction, got {type(v).__name__}")


def _tri_index(d: int, i: int, j: int) -> int:
    # Row-major position of (i, j), i <= j, inside the packed upper triangle.
    return i * d - i * (i - 1) // 2 + (j - i)


@dataclass(frozen=True)
class SymForm:
    """A d x d symmetric matrix of rationals, upper triangle only."""

    d: int
    upper: tuple[Fraction, ...]

    def __post_init__(self):
        if self.d < 1:
            raise ValueError("dimension must be >= 1")
        if len(self.upper) != self.d * (self.d + 1) // 2:
            raise ValueError("wrong number of upper-triangle entries")

    @staticmethod
    def from_rows(rows: Sequence[Sequence[RatLike]]) -> "SymForm":
        d = len(rows)
        if any(len(r) != d for r in rows):
            raise ValueError("matrix not square")
        for i in range(d):
            for j in range(i + 1, d):
                if _frac(rows[i][j]) != _frac(rows[j][i]):
                    raise ValueError(f"matrix not symmetric at ({i},{j})")
        upper = tuple(_frac(rows[i][j]) for i in range(d) for j in range(i, d))
        return SymForm(d, upper)

    @staticmethod
    def zero(d: int) -> "SymForm":
        return SymForm(d, (Fraction(0),) * (d * (d + 1) // 2))

    @staticmethod
    def identity(d: int) -> "SymForm":
        return SymForm.from_rows(
            [[1 if i == j else 0 for j in range(d)] for i in range(d)]
        )

    @staticmethod
    def outer(x: Sequence[RatLike]) -> "SymForm":
        """The rank-1 form x x^t."""
        xs = [_frac(v) for v in x]
        d = len(xs)
        return SymForm(d, tuple(xs[i] * xs[j] for i in range(d) for j in range(i, d)))

    def entry(self, i: int, j: int) -> Fraction:
        if i > j:
            i, j = j, i
        return self.upper[_tri_index(self.d, i, j)]

    def rows(self) -> tuple[tuple[Fraction, ...], ...]:
        return tuple(
            tuple(self.entry(i, j) for j in range(self.d)) for i in range(self.d)
        )

    def matvec(self, x: Sequence[RatLike]) -> tuple[Fraction, ...]:
        xs = [_frac(v) for v in x]
        if len(xs) != self.d:
            raise ValueError("vector length mismatch")
        return tuple(
            sum((self.entry(i, j) * xs[j] for j in range(self.d)), Fraction(0))
            for i in range(self.d)
        )

    def value(self, x: Sequence[RatLike]) -> Fraction:
        """Q[x] = x^t Q x."""
        xs = [_frac(v) for v in x]
        acc = Fraction(0)
        for i in range(self.d):
            acc += self.entry(i, i) * xs[i] * xs[i]
            for j in range(i + 1, self.d):
                acc += 2 * self.entry(i, j) * xs[i] * xs[j]
        return acc

    def bilinear(self, x: Sequence[RatLike], y: Sequence[RatLike]) -> Fraction:
        qy = self.matvec(y)
        return sum((_frac(a) * b for a, b in zip(x, qy)), Fraction(0))

    def trace_inner(self, other: "SymForm") -> Fraction:
        """<Q, Q'> = trace(Q Q'): off-diagonal entries count twice."""
        if self.d != other.d:
            raise ValueError("dimension mismatch")
        acc = Fraction(0)
        k = 0
        for i in range(self.d):
            acc += self.upper[k] * other.upper[k]
            k += 1
            for _ in range(i + 1, self.d):
                acc += 2 * self.upper[k] * other.upper[k]
                k += 1
        return acc

    def scale(self, c: RatLike) -> "SymForm":
        cf = _frac(c)
        return SymForm(self.d, tuple(cf * v for v in self.upper))

    def add(self, other: "SymForm") -> "SymForm":
        if self.d != other.d:
            raise ValueError("dimension mismatch")
        return SymForm(self.d, tuple(a + b for a, b in zip(self.upper, other.upper)))

    def sub(self, other: "SymForm") -> "SymForm":
        return self.add(other.scale(-1))

    def is_zero(self) -> bool:
        return all(v == 0 for v in self.upper)

    def congruent(self, u_cols: Sequence[Sequence[int]]) -> "SymForm":
        """U^t Q U for an integer matrix U given by columns."""
        d = self.d
        if len(u_cols) == 0 or any(len(c) != d for c in u_cols):
            raise ValueError("column length mismatch")
        n = len(u_cols)
        qu = [self.matvec(c) for c in u_cols]
        rows = [
            [sum((_frac(u_cols[i][k]) * qu[j][k] for k in range(d)), Fraction(0))
             for j in range(n)]
            for i in range(n)
        ]
        return SymForm.from_rows(rows)


@dataclass(frozen=True)
class LDLResult:
    """Outcome of the exact LDL^t decomposition attempt."""

    lower: tuple[tuple[Fraction, ...], ...]
    pivots: tuple[Fraction, ...]
    perm: tuple[int, ...]
    is_positive_definite: bool


def ldl(q: SymForm) -> LDLResult:
    """Exact LDL^t of a symmetric rational matrix.

    For positive definite input, P Q P^t = L diag(D) L^t holds exactly with
    the identity permutation.  A pivot <= 0 stops the decomposition with
    ``is_positive_definite = False``; a zero pivot with nonzero remainder
    triggers a symmetric pivot search so degenerate inputs still terminate
    deterministically.
    """
    d = q.d
    a = [list(row) for row in q.rows()]
    perm = list(range(d))
    lower = [[Fraction(0)] * d for _ in range(d)]
    pivots: list[Fraction] = []
    for k in range(d):
        if a[k][k] == 0:
            swap = next((j for j in range(k + 1, d) if a[j][j] != 0), None)
            if swap is None:
                # No usable diagonal pivot left: singular (zero remainder) or
                # indefinite (nonzero remainder with zero diagonal).
                return LDLResult(
                    tuple(tuple(r) for r in lower),
                    tuple(pivots),
                    tuple(perm),
                    False,
                )
            a[k], a[swap] = a[swap], a[k]
            for row in a:
                row[k], row[swap] = row[swap], row[k]
            lower[k], lower[swap] = lower[swap], lower[k]
            perm[k], perm[swap] = perm[swap], perm[k]
        piv = a[k][k]
        pivots.append(piv)
        lower[k][k] = Fraction(1)
        if piv <= 0:
            return LDLResult(
                tuple(tuple(r) for r in lower), tuple(pivots), tuple(perm), False
            )
        for i in range(k + 1, d):
            lower[i][k] = a[i][k] / piv
        for i in range(k + 1, d):
            lik = lower[i][k]
            if lik == 0:
                continue
            for j in range(k + 1, i + 1):
                a[i][j] -= lik * piv * lower[j][k]
            for j in range(i + 1, d):
                a[i][j] -= lik * a[k][j]
        for i in range(k + 1, d):
            a[k][i] = Fraction(0)
            a[i][k] = Fraction(0)
    return LDLResult(
        tuple(tuple(r) for r in lower), tuple(pivots), tuple(perm), True
    )


class PQF:
    """A positive definite quadratic form, carrying its LDL certificate."""

    __slots__ = ("form", "ldl_pivots", "_ldl")

    def __init__(self, form: SymForm):
        res = ldl(form)
        if not res.is_positive_definite:
            raise ValueError("form is not positive definite")
        self.form = form
        self.ldl_pivots = res.pivots
        self._ldl = res

    @staticmethod
    def from_rows(rows: Sequence[Sequence[RatLike]]) -> "PQF":
        return PQF(SymForm.from_rows(rows))

    @property
    def d(self) -> int:
        return self.form.d

    @property
    def ldl_lower(self) -> tuple[tuple[Fraction, ...], ...]:
        return self._ldl.lower

    def det(self) -> Fraction:
        out = Fraction(1)
        for p in self.ldl_pivots:
            out *= p
        return out

    def value(self, x: Sequence[RatLike]) -> Fraction:
        return self.form.value(x)

    def matvec(self, x: Sequence[RatLike]) -> tuple[Fraction, ...]:
        return self.form.matvec(x)

    def solve(self, b: Sequence[RatLike]) -> tuple[Fraction, ...]:
        """Solve Q x = b exactly via the stored LDL factors."""
        d = self.d
        y = [_frac(v) for v in b]
        low = self._ldl.lower
        # Forward: L z = b
        for i in range(d):
            for j in range(i):
                y[i] -= low[i][j] * y[j]
        for i in range(d):
            y[i] /= self.ldl_pivots[i]
        # Back: L^t x = z
        for i in reversed(range(d)):
            for j in range(i + 1, d):
                y[i] -= low[j][i] * y[j]
        return tuple(y)

    def inverse(self) -> SymForm:
        cols = [self.solve([int(i == j) for i in range(self.d)]) for j in range(self.d)]
        return SymForm.from_rows([[cols[j][i] for j in range(self.d)] for i in range(self.d)])

    def scale(self, c: RatLike) -> "PQF":
        cf = _frac(c)
        if cf <= 0:
            raise ValueError("scale factor must be positive")
        return PQF(self.form.scale(cf))

    def __eq__(self, other) -> bool:
        return isinstance(other, PQF) and self.form == other.form

    def __hash__(self) -> int:
        return hash(self.form)

    def __repr__(self) -> str:
        return f"PQF({self.form.rows()!r})"


def det_and_inverse(q: PQF) -> tuple[Fraction, SymForm]:
    """Exact determinant and inverse; the inverse is the det-gradient direction."""
    return q.det(), q.inverse()


@dataclass(frozen=True)
class TangentVector:
    """An element (Q^N, t^N) of the tangent space of d x (m) periodic forms.

    ``tcols`` holds the m-1 translation columns; the last translate is pinned
    to the origin and never stored.
    """

    qpart: SymForm
    tcols: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        if any(len(c) != self.qpart.d for c in self.tcols):
            raise ValueError("translation column length mismatch")

    @staticmethod
    def make(qpart: SymForm, tcols: Iterable[Sequence[RatLike]] = ()) -> "TangentVector":
        cols = tuple(tuple(_frac(v) for v in c) for c in tcols)
        return TangentVector(qpart, cols)

    @property
    def d(self) -> int:
        return self.qpart.d

    @property
    def m(self) -> int:
        return len(self.tcols) + 1

    def scale(self, c: RatLike) -> "TangentVector":
        cf = _frac(c)
        return TangentVector(
            self.qpart.scale(cf),
            tuple(tuple(cf * v for v in col) for col in self.tcols),
        )

    def add(self, other: "TangentVector") -> "TangentVector":
        _check_same_space(self, other)
        return TangentVector(
            self.qpart.add(other.qpart),
            tuple(
                tuple(a + b for a, b in zip(c1, c2))
                for c1, c2 in zip(self.tcols, other.tcols)
            ),
        )

    def sub(self, other: "TangentVector") -> "TangentVector":
        return self.add(other.scale(-1))

    def is_zero(self) -> bool:
        return self.qpart.is_zero() and all(
            v == 0 for col in self.tcols for v in col
        )

    def flatten(self, weighted: bool = False) -> tuple[Fraction, ...]:
        """Coordinates: packed upper triangle, then translation columns.

        With ``weighted=True`` the off-diagonal entries are doubled, so the
        plain dot product of a weighted and an unweighted flattening equals
        the inner product on the space.
        """
        out: list[Fraction] = []
        d = self.qpart.d
        k = 0
        for i in range(d):
            out.append(self.qpart.upper[k])
            k += 1
            for _ in range(i + 1, d):
                out.append(2 * self.qpart.upper[k] if weighted else self.qpart.upper[k])
                k += 1
        for col in self.tcols:
            out.extend(col)
        return tuple(out)

    @staticmethod
    def unflatten(coords: Sequence[RatLike], d: int, m: int) -> "TangentVector":
        need = d * (d + 1) // 2 + (m - 1) * d
        if len(coords) != need:
            raise ValueError("coordinate count mismatch")
        tri = tuple(_frac(v) for v in coords[: d * (d + 1) // 2])
        cols = []
        pos = d * (d + 1) // 2
        for _ in range(m - 1):
            cols.append(tuple(_frac(v) for v in coords[pos : pos + d]))
            pos += d
        return TangentVector(SymForm(d, tri), tuple(cols))


def _check_same_space(x: TangentVector, y: TangentVector) -> None:
    if x.d != y.d or x.m != y.m:
        raise ValueError(
            f"tangent vectors live in different spaces: "
            f"(d={x.d}, m={x.m}) vs (d={y.d}, m={y.m})"
        )


def inner(x: TangentVector, y: TangentVector) -> Fraction:
    """<X, X'> = trace(Q Q') + sum_i t_i^t t'_i."""
    _check_same_space(x, y)
    acc = x.qpart.trace_inner(y.qpart)
    for c1, c2 in zip(x.tcols, y.tcols):
        acc += sum((a * b for a, b in zip(c1, c2)), Fraction(0))
    return acc


def ambient_dim(d: int, m: int) -> int:
    """dim S^{d,m} = (d+1 choose 2) + (m-1) d."""
    return comb(d + 1, 2) + (m - 1) * d


def _row_echelon(rows: list[list[Fraction]]) -> tuple[int, list[int], list[list[Fraction]]]:
    """In-place reduced echelon form; returns (rank, pivot columns, matrix)."""
    if not rows:
        return 0, [], rows
    ncols = len(rows[0])
    rank = 0
    pivcols: list[int] = []
    for col in range(ncols):
        piv = next((r for r in range(rank, len(rows)) if rows[r][col] != 0), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = Fraction(1) / rows[rank][col]
        rows[rank] = [v * inv for v in rows[rank]]
        for r in range(len(rows)):
            if r != rank and rows[r][col] != 0:
                f = rows[r][col]
                rows[r] = [a - f * b for a, b in zip(rows[r], rows[rank])]
        pivcols.append(col)
        rank += 1
        if rank == len(rows):
            break
    return rank, pivcols, rows


def rank_span(vectors: Sequence[TangentVector]) -> tuple[int, tuple[TangentVector, ...]]:
    """Exact rank of the span and a basis of its orthogonal complement.

    Orthogonality is with respect to the inner product on S^{d,m}; an empty
    input is allowed only through the typed helpers that know (d, m), so here
    it yields rank 0 with no basis information.
    """
    if not vectors:
        return 0, ()
    d, m = vectors[0].d, vectors[0].m
    for v in vectors[1:]:
        _check_same_space(vectors[0], v)
    rows = [list(v.flatten(weighted=True)) for v in vectors]
    rank, pivcols, rows = _row_echelon(rows)
    ncols = ambient_dim(d, m)
    free = [c for c in range(ncols) if c not in pivcols]
    basis = []
    for fc in free:
        coords = [Fraction(0)] * ncols
        coords[fc] = Fraction(1)
        for r, pc in enumerate(pivcols):
            coords[pc] = -rows[r][fc]
        basis.append(TangentVector.unflatten(coords, d, m))
    return rank, tuple(basis)


def nullspace_dim(d: int, m: int, rank: int) -> int:
    return ambient_dim(d, m) - rank


def solve_exact(
    matrix: Sequence[Sequence[Fraction]], rhs: Sequence[Fraction]
) -> tuple[Fraction, ...] | None:
    """Solve a square or rectangular rational system; None if inconsistent.

    For underdetermined systems an arbitrary solution (free vars = 0) comes
    back, which is all the cone code needs.
    """
    nrows = len(matrix)
    if nrows == 0:
        return ()
    ncols = len(matrix[0])
    aug = [list(row) + [rhs[i]] for i, row in enumerate(matrix)]
    rank, pivcols, aug = _row_echelon(aug)
    for r in range(rank, nrows):
        if aug[r][ncols] != 0:
            return None
    if ncols in pivcols:
        return None
    x = [Fraction(0)] * ncols
    for r, pc in enumerate(pivcols):
        x[pc] = aug[r][ncols]
    return tuple(x)
