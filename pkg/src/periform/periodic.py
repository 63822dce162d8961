"""Periodic forms: the parameter space of m-translate lattice packings.

A periodic form X = (Q, t) is a positive definite Gram matrix Q together
with m-1 translation columns in fractional coordinates; the m-th translate
sits at the origin and is never stored.  This module computes the
generalized arithmetical minimum, packing density, and the first and second
order data of the minimum constraints.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import floor, isqrt, pi
from typing import Sequence

from .lattices import closest_vectors, shortest_vectors
from .linalg import PQF, RatLike, SymForm, TangentVector

__all__ = [
    "PeriodicForm",
    "MinRep",
    "GenMinResult",
    "DensityReport",
    "OverlapError",
    "generalized_min",
    "density",
    "eval_p",
    "gradient_p",
    "hessian_quadratic",
    "rescale_to_min_one",
    "unit_ball_volume",
]


class OverlapError(ValueError):
    """Raised where a computation requires lambda(X) > 0 but translates meet."""


def _fractional(v: Fraction) -> Fraction:
    return v - floor(v)


@dataclass(frozen=True)
class PeriodicForm:
    """X = (Q, t) with translations reduced mod 1 on ingestion."""

    q: PQF
    tcols: tuple[tuple[Fraction, ...], ...]

    @staticmethod
    def make(q: PQF, tcols: Sequence[Sequence[RatLike]] = ()) -> "PeriodicForm":
        cols = tuple(
            tuple(_fractional(Fraction(v)) for v in col) for col in tcols
        )
        if any(len(c) != q.d for c in cols):
            raise ValueError("translation column length mismatch")
        return PeriodicForm(q, cols)

    @staticmethod
    def lattice(q: PQF) -> "PeriodicForm":
        return PeriodicForm(q, ())

    @property
    def d(self) -> int:
        return self.q.d

    @property
    def m(self) -> int:
        return len(self.tcols) + 1

    def translate(self, i: int) -> tuple[Fraction, ...]:
        """t_i for 1 <= i <= m; t_m is the implicit origin."""
        if not 1 <= i <= self.m:
            raise IndexError(f"translate index {i} out of range 1..{self.m}")
        if i == self.m:
            return (Fraction(0),) * self.d
        return self.tcols[i - 1]

    def with_q(self, q: PQF) -> "PeriodicForm":
        return PeriodicForm(q, self.tcols)

    def add_tangent(self, n: TangentVector, eps: RatLike = 1) -> "PeriodicForm":
        """X + eps N; raises ValueError if the Q-part leaves the PD cone.

        Translations are deliberately not wrapped mod 1 here: a tangent step
        must stay on the chart of X, or derivative checks along it break.
        """
        if n.d != self.d or n.m != self.m:
            raise ValueError("tangent vector lives in a different space")
        epsf = Fraction(eps)
        q_new = PQF(self.q.form.add(n.qpart.scale(epsf)))
        cols = tuple(
            tuple(a + epsf * b for a, b in zip(col, ncol))
            for col, ncol in zip(self.tcols, n.tcols)
        )
        return PeriodicForm(q_new, cols)


@dataclass(frozen=True)
class MinRep:
    """One representation w = t_i - t_j - v of the generalized minimum.

    Canonical form: i <= j; for i = j the first nonzero coordinate of w is
    positive.  The mirrored triple (j, i, -v) is the same constraint and is
    never stored.
    """

    i: int
    j: int
    v: tuple[int, ...]
    w: tuple[Fraction, ...]

    def key(self):
        return (self.i, self.j, self.v)


@dataclass(frozen=True)
class GenMinResult:
    lam: Fraction
    reps: tuple[MinRep, ...]


def generalized_min(x: PeriodicForm) -> GenMinResult:
    """lambda(X) and the complete canonical set of its representations.

    One SVP handles all pairs i = j (each lattice vector is recorded once per
    translate index), and one CVP per pair i < j handles the rest.  lambda = 0
    is a reportable state for intersecting translates, not an error.
    """
    d, m = x.d, x.m
    parts: list[tuple[Fraction, list[MinRep]]] = []

    svp = shortest_vectors(x.q)
    lattice_reps = []
    for vec in svp.vectors:
        w = tuple(Fraction(c) for c in vec)
        v = tuple(-c for c in vec)
        for i in range(1, m + 1):
            lattice_reps.append(MinRep(i, i, v, w))
    parts.append((svp.min, lattice_reps))

    for i in range(1, m + 1):
        ti = x.translate(i)
        for j in range(i + 1, m + 1):
            tj = x.translate(j)
            target = [a - b for a, b in zip(ti, tj)]
            cvp = closest_vectors(x.q, target)
            reps = [
                MinRep(i, j, v, tuple(t - vi for t, vi in zip(target, v)))
                for v in cvp.vectors
            ]
            parts.append((cvp.min, reps))

    lam = min(p[0] for p in parts)
    reps = [r for val, rs in parts if val == lam for r in rs]
    reps.sort(key=MinRep.key)
    return GenMinResult(lam, tuple(reps))


def unit_ball_volume(d: int) -> float:
    """vol B^d by the half-integer recurrence v_d = 2 pi v_{d-2} / d."""
    if d < 0:
        raise ValueError("dimension must be nonnegative")
    vols = [1.0, 2.0]
    for k in range(2, d + 1):
        vols.append(2.0 * pi * vols[k - 2] / k)
    return vols[d]


def _sqrt_fraction(v: Fraction) -> float:
    """Floating square root of a nonnegative rational, good to ~15 digits."""
    if v < 0:
        raise ValueError("negative value")
    if v == 0:
        return 0.0
    scale = 10 ** 40
    n = v.numerator * v.denominator * scale ** 2
    return float(Fraction(isqrt(n), v.denominator * scale))


@dataclass(frozen=True)
class DensityReport:
    lam: Fraction
    det: Fraction
    m: int
    center_density_squared: Fraction
    delta_over_ball: float
    delta: float


def density(x: PeriodicForm, lam: Fraction | None = None) -> DensityReport:
    """Packing density data; exact where possible.

    center_density_squared = m^2 lambda^d / (4^d det) is the exact rational
    square of delta / vol B^d; the floating fields are derived from it.
    A form with lambda = 0 (overlapping translates) reports zeros.
    """
    if lam is None:
        lam = generalized_min(x).lam
    det = x.q.det()
    d, m = x.d, x.m
    center2 = Fraction(m * m) * lam ** d / (Fraction(4) ** d * det)
    dob = _sqrt_fraction(center2)
    return DensityReport(lam, det, m, center2, dob, dob * unit_ball_volume(d))


def _resolve_triple(x: PeriodicForm, rep) -> tuple[int, int, tuple[int, ...]]:
    if isinstance(rep, MinRep):
        return rep.i, rep.j, rep.v
    i, j, v = rep
    return i, j, tuple(int(c) for c in v)


def eval_p(x: PeriodicForm, rep) -> Fraction:
    """The constraint polynomial p_{i,j,v}(X) = Q[t_i - t_j - v]."""
    i, j, v = _resolve_triple(x, rep)
    ti, tj = x.translate(i), x.translate(j)
    if len(v) != x.d:
        raise IndexError("integer vector length mismatch")
    w = [a - b - c for a, b, c in zip(ti, tj, v)]
    return x.q.value(w)


def gradient_p(x: PeriodicForm, rep) -> TangentVector:
    """grad p_{i,j,v} at X: (w w^t, ..., 2Qw at column i, ..., -2Qw at j, ...).

    Columns with index m are omitted (the last translate is pinned), and for
    i = j the translational part vanishes.
    """
    i, j, v = _resolve_triple(x, rep)
    ti, tj = x.translate(i), x.translate(j)
    w = [a - b - c for a, b, c in zip(ti, tj, v)]
    qpart = SymForm.outer(w)
    cols = [[Fraction(0)] * x.d for _ in range(x.m - 1)]
    if i != j:
        qw = x.q.matvec(w)
        if i != x.m:
            cols[i - 1] = [c + 2 * val for c, val in zip(cols[i - 1], qw)]
        if j != x.m:
            cols[j - 1] = [c - 2 * val for c, val in zip(cols[j - 1], qw)]
    return TangentVector.make(qpart, cols)


def hessian_quadratic(x: PeriodicForm, rep, n: TangentVector) -> Fraction:
    """Hessian of p_{i,j,v} at X as a quadratic form, evaluated on N.

    Equals 2 Q[u] + 4 u^t Q^N w with u = t_i^N - t_j^N (and t_m^N = 0).
    """
    if n.d != x.d or n.m != x.m:
        raise ValueError("tangent vector lives in a different space")
    i, j, v = _resolve_triple(x, rep)
    ti, tj = x.translate(i), x.translate(j)
    w = [a - b - c for a, b, c in zip(ti, tj, v)]

    def ncol(k: int) -> tuple[Fraction, ...]:
        return ((Fraction(0),) * x.d) if k == x.m else n.tcols[k - 1]

    u = [a - b for a, b in zip(ncol(i), ncol(j))]
    qnw = n.qpart.matvec(w)
    return 2 * x.q.value(u) + 4 * sum(
        (ui * qi for ui, qi in zip(u, qnw)), Fraction(0)
    )


def rescale_to_min_one(x: PeriodicForm) -> PeriodicForm:
    """Scale Q by 1/lambda(X); translations are untouched, density is not."""
    lam = generalized_min(x).lam
    if lam == 0:
        raise OverlapError("cannot rescale a form with lambda = 0")
    return x.with_q(x.q.scale(Fraction(1) / lam))
