"""Lattice algorithmics: LLL reduction and shortest/closest vector enumeration.

Enumeration prunes with floating-point bounds (radii inflated by 1 + 2^-20)
but accepts a vector only after exact rational evaluation, so the returned
minima and minimizer sets are exact and complete.  A numba-compiled kernel
handles large dimensions when available; the pure-Python walker is the
reference and the fallback.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import floor, gcd, sqrt
from typing import Sequence

import numpy as np

from .intmat import det_bareiss, inverse_rational
from .linalg import PQF, SymForm, RatLike, ldl

try:  # pragma: no cover - exercised indirectly
    from . import _enumkernel

    _HAVE_NUMBA = _enumkernel.AVAILABLE
except Exception:  # pragma: no cover
    _enumkernel = None
    _HAVE_NUMBA = False

__all__ = [
    "Unimodular",
    "ShortVecResult",
    "CloseVecResult",
    "lll_reduce",
    "shortest_vectors",
    "closest_vectors",
]

RADIUS_INFLATION = 1.0 + 2.0 ** -20
# Dimension at which the compiled kernel starts paying for its dispatch cost.
_KERNEL_MIN_DIM = 10


@dataclass(frozen=True)
class Unimodular:
    """An integer basis change; rows form the matrix, |det| = 1."""

    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if abs(det_bareiss(self.rows)) != 1:
            raise ValueError("matrix is not unimodular")

    @property
    def d(self) -> int:
        return len(self.rows)

    def column(self, j: int) -> tuple[int, ...]:
        return tuple(row[j] for row in self.rows)

    def apply(self, x: Sequence[int]) -> tuple[int, ...]:
        """U x for a column vector x."""
        return tuple(sum(row[j] * x[j] for j in range(self.d)) for row in self.rows)

    def inverse(self) -> "Unimodular":
        inv = inverse_rational(self.rows)
        return Unimodular(tuple(tuple(int(v) for v in row) for row in inv))


@dataclass(frozen=True)
class ShortVecResult:
    """Arithmetical minimum and all minimizers, one per +/- pair."""

    min: Fraction
    vectors: tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class CloseVecResult:
    """Minimal value of Q[x - c] over Z^d and every x attaining it."""

    min: Fraction
    vectors: tuple[tuple[int, ...], ...]


# ---------------------------------------------------------------------------
# LLL on the Gram matrix, exact rational arithmetic.
# ---------------------------------------------------------------------------


def lll_reduce(q: PQF, delta: RatLike = Fraction(3, 4)) -> tuple[PQF, Unimodular]:
    """delta-LLL-reduce a positive definite Gram matrix.

    Returns (Qred, U) with Qred = U^t Q U, size-reduced and satisfying the
    Lovasz condition on the exact rational Gram-Schmidt data.
    """
    delta = Fraction(delta)
    if not Fraction(1, 4) < delta < 1:
        raise ValueError("delta must lie in (1/4, 1)")
    d = q.d
    g = [[q.form.entry(i, j) for j in range(d)] for i in range(d)]
    ucols = [[int(i == j) for i in range(d)] for j in range(d)]
    if d == 1:
        return q, Unimodular(((1,),))

    mu = [[Fraction(0)] * d for _ in range(d)]
    bstar = [Fraction(0)] * d

    def compute_gso(k: int) -> None:
        bstar[k] = g[k][k]
        for j in range(k):
            u = g[k][j]
            for i in range(j):
                u -= mu[j][i] * mu[k][i] * bstar[i]
            mu[k][j] = u / bstar[j]
            bstar[k] -= mu[k][j] * mu[k][j] * bstar[j]

    def translate(k: int, j: int, r: int) -> None:
        # b_k <- b_k - r b_j, applied to Gram, transform and mu rows.
        if r == 0:
            return
        gkk = g[k][k] - 2 * r * g[k][j] + r * r * g[j][j]
        for i in range(d):
            if i != k:
                v = g[k][i] - r * g[j][i]
                g[k][i] = v
                g[i][k] = v
        g[k][k] = gkk
        for i in range(d):
            ucols[k][i] -= r * ucols[j][i]
        for i in range(j):
            mu[k][i] -= r * mu[j][i]
        mu[k][j] -= r

    def size_reduce(k: int, j: int) -> None:
        mukj = mu[k][j]
        if 2 * abs(mukj) > 1:
            r = floor(mukj + Fraction(1, 2))
            translate(k, j, r)

    def swap(k: int) -> None:
        g[k], g[k - 1] = g[k - 1], g[k]
        for row in g:
            row[k], row[k - 1] = row[k - 1], row[k]
        ucols[k], ucols[k - 1] = ucols[k - 1], ucols[k]
        for j in range(k - 1):
            mu[k][j], mu[k - 1][j] = mu[k - 1][j], mu[k][j]
        muu = mu[k][k - 1]
        bnew = bstar[k] + muu * muu * bstar[k - 1]
        mu[k][k - 1] = muu * bstar[k - 1] / bnew
        bstar[k] = bstar[k - 1] * bstar[k] / bnew
        bstar[k - 1] = bnew
        for i in range(k + 1, kmax + 1):
            t = mu[i][k]
            mu[i][k] = mu[i][k - 1] - muu * t
            mu[i][k - 1] = t + mu[k][k - 1] * mu[i][k]

    compute_gso(0)
    kmax = 0
    k = 1
    while k < d:
        if k > kmax:
            kmax = k
            compute_gso(k)
        size_reduce(k, k - 1)
        if bstar[k] < (delta - mu[k][k - 1] * mu[k][k - 1]) * bstar[k - 1]:
            swap(k)
            k = max(k - 1, 1)
        else:
            for j in range(k - 2, -1, -1):
                size_reduce(k, j)
            k += 1

    qred = PQF(SymForm.from_rows(g))
    urows = tuple(tuple(ucols[j][i] for j in range(d)) for i in range(d))
    return qred, Unimodular(urows)


# ---------------------------------------------------------------------------
# Enumeration.
# ---------------------------------------------------------------------------


def _frac_to_float(v: Fraction) -> float:
    try:
        return float(v)
    except OverflowError:
        # Scale down exactly; only reachable for pathological heights.
        n, den = v.numerator, v.denominator
        shift = max(n.bit_length(), den.bit_length()) - 500
        return float(n >> shift) / float(den >> shift)


def _enumerate_python(
    dvec: list[float],
    lmat: list[list[float]],
    center: list[float],
    radius: float,
    half: bool,
) -> list[tuple[int, ...]]:
    """Collect integer points with float value <= radius (dynamically shrunk).

    ``half`` keeps only one representative per +/- pair when the center is
    zero, by forcing the highest not-yet-zero level nonnegative; the all-zero
    point is skipped in that mode.  Mirrors the compiled kernel exactly.
    """
    d = len(dvec)
    centered = any(c != 0.0 for c in center)
    out: list[tuple[int, ...]] = []
    x = [0] * d
    acc = [0.0] * (d + 1)  # acc[k]: value contributed by levels >= k
    lo = [0] * d
    hi = [0] * d
    ck = [0.0] * d
    best = radius

    def init_level(k: int) -> None:
        s = center[k]
        for i in range(k + 1, d):
            s -= lmat[i][k] * (x[i] - center[i])
        ck[k] = s
        rem = best - acc[k + 1]
        if rem < 0.0:
            lo[k], hi[k] = 0, -1
        else:
            spread = sqrt(rem / dvec[k]) if dvec[k] > 0 else 0.0
            lo[k] = int(np.ceil(s - spread - 1e-9))
            hi[k] = int(np.floor(s + spread + 1e-9))
            if (
                half
                and not centered
                and lo[k] < 0
                and all(x[i] == 0 for i in range(k + 1, d))
            ):
                lo[k] = 0
        x[k] = lo[k]

    k = d - 1
    init_level(k)
    while True:
        if x[k] > hi[k]:
            k += 1
            if k >= d:
                break
            x[k] += 1
            continue
        diff = x[k] - ck[k]
        val = acc[k + 1] + dvec[k] * diff * diff
        if val > best:
            x[k] += 1
            continue
        if k == 0:
            if not (half and not centered and not any(x)):
                out.append(tuple(x))
                nb = val * RADIUS_INFLATION
                if nb < best:
                    best = nb
            x[0] += 1
            continue
        acc[k] = val
        k -= 1
        init_level(k)
    return out


def _exact_int_matrix(q: PQF) -> tuple[list[list[int]], int]:
    den = 1
    for v in q.form.upper:
        den = den * v.denominator // gcd(den, v.denominator)
    rows = [
        [int(q.form.entry(i, j) * den) for j in range(q.d)] for i in range(q.d)
    ]
    return rows, int(den)


def _exact_values(
    m_rows: list[list[int]], xs: Sequence[Sequence[int]]
) -> list[int]:
    """x^t M x for integer vectors, exactly (numpy fast path when safe)."""
    if not xs:
        return []
    d = len(m_rows)
    max_x = max(abs(v) for row in xs for v in row)
    max_m = max(abs(v) for row in m_rows for v in row)
    bound = d * d * max_x * max_x * max_m
    if bound < 2 ** 62:
        xa = np.array(xs, dtype=np.int64)
        ma = np.array(m_rows, dtype=np.int64)
        vals = np.einsum("ij,jk,ik->i", xa, ma, xa)
        return [int(v) for v in vals]
    out = []
    for x in xs:
        mx = [sum(m_rows[i][j] * x[j] for j in range(d)) for i in range(d)]
        out.append(sum(x[i] * mx[i] for i in range(d)))
    return out


def _run_enumeration(
    qred: PQF,
    center: Sequence[Fraction],
    initial_radius: Fraction,
    half: bool,
) -> list[tuple[int, ...]]:
    """Integer points x (in reduced coordinates) with Q[x-c] possibly minimal."""
    d = qred.d
    res = ldl(qred.form)
    assert res.perm == tuple(range(d))
    dvec = [_frac_to_float(p) for p in res.pivots]
    lmat = [[_frac_to_float(res.lower[i][k]) for k in range(d)] for i in range(d)]
    cf = [_frac_to_float(v) for v in center]
    radius = _frac_to_float(initial_radius) * RADIUS_INFLATION + 1e-12

    use_kernel = _HAVE_NUMBA and d >= _KERNEL_MIN_DIM
    if use_kernel:
        xs = _enumkernel.enumerate_points(
            np.array(dvec), np.array(lmat), np.array(cf), radius, half
        )
        return [tuple(int(v) for v in row) for row in xs]
    return _enumerate_python(dvec, lmat, cf, radius, half)


def shortest_vectors(q: PQF) -> ShortVecResult:
    """Exact arithmetical minimum lambda(Q) and the full Min Q up to sign.

    Canonical representatives have their first nonzero coordinate positive;
    vectors come back lexicographically sorted.
    """
    qred, u = lll_reduce(q)
    d = q.d
    init = min(qred.form.entry(i, i) for i in range(d))
    zero = [Fraction(0)] * d
    cands = _run_enumeration(qred, zero, init, half=True)
    cands = [x for x in cands if any(x)]
    m_rows, den = _exact_int_matrix(qred)
    vals = _exact_values(m_rows, cands)
    best = min(vals)
    out = set()
    for x, v in zip(cands, vals):
        if v == best:
            y = u.apply(x)
            first = next(vv for vv in y if vv != 0)
            if first < 0:
                y = tuple(-vv for vv in y)
            out.add(y)
    return ShortVecResult(Fraction(best, den), tuple(sorted(out)))


def closest_vectors(q: PQF, c: Sequence[RatLike]) -> CloseVecResult:
    """Exact minimum of Q[x - c] over x in Z^d, with all minimizers (ties kept)."""
    d = q.d
    cvec = [Fraction(v) for v in c]
    if len(cvec) != d:
        raise ValueError("target length mismatch")
    qred, u = lll_reduce(q)
    uinv = u.inverse()
    cred = [
        sum((Fraction(uinv.rows[i][j]) * cvec[j] for j in range(d)), Fraction(0))
        for i in range(d)
    ]
    babai = [int(floor(v + Fraction(1, 2))) for v in cred]
    init = qred.form.value([b - v for b, v in zip(babai, cred)])
    cands = _run_enumeration(qred, cred, init, half=False)
    if not cands:  # the Babai point itself is always inside the radius
        cands = [tuple(babai)]

    # Exact evaluation of Q[x - c] through an integer rescaling.
    cden = 1
    for v in cred:
        cden = cden * v.denominator // gcd(cden, v.denominator)
    cnum = [int(v * cden) for v in cred]
    m_rows, den = _exact_int_matrix(qred)
    shifted = [tuple(cden * xi - ci for xi, ci in zip(x, cnum)) for x in cands]
    vals = _exact_values(m_rows, shifted)
    best = min(vals)
    out = {u.apply(x) for x, v in zip(cands, vals) if v == best}
    return CloseVecResult(
        Fraction(best, den * cden * cden), tuple(sorted(out))
    )
