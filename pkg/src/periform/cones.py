"""Nearest-point projection onto a finitely generated cone, exactly.

The optimization itself is a Lawson-Hanson style nonnegative least squares
active-set iteration.  A floating-point run of scipy's nnls seeds the active
set; every verdict the caller consumes is re-derived and verified in exact
rational arithmetic, so the seeding only affects speed.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import sqrt
from typing import Sequence

import numpy as np
from scipy.optimize import nnls

from .linalg import SymForm, TangentVector, inner, solve_exact

__all__ = ["ConeProjection", "project_to_cone"]


@dataclass(frozen=True)
class ConeProjection:
    """point = sum coeffs[i] * generators[i], the cone point nearest to target."""

    point: TangentVector
    coeffs: tuple[Fraction, ...]
    residual: TangentVector  # point - target


def _float_coords(v: TangentVector) -> np.ndarray:
    """Euclidean coordinates whose dot product equals the exact inner product."""
    out = []
    d = v.qpart.d
    k = 0
    s2 = sqrt(2.0)
    for i in range(d):
        out.append(float(v.qpart.upper[k]))
        k += 1
        for _ in range(i + 1, d):
            out.append(s2 * float(v.qpart.upper[k]))
            k += 1
    for col in v.tcols:
        out.extend(float(c) for c in col)
    return np.array(out)


class _GramCache:
    def __init__(self, gens: Sequence[TangentVector], target: TangentVector):
        self.gens = gens
        self.target = target
        self._gg: dict[tuple[int, int], Fraction] = {}
        self._gt: dict[int, Fraction] = {}

    def gg(self, i: int, j: int) -> Fraction:
        key = (i, j) if i <= j else (j, i)
        if key not in self._gg:
            self._gg[key] = inner(self.gens[key[0]], self.gens[key[1]])
        return self._gg[key]

    def gt(self, i: int) -> Fraction:
        if i not in self._gt:
            self._gt[i] = inner(self.gens[i], self.target)
        return self._gt[i]


def _solve_active(cache: _GramCache, active: list[int]) -> list[Fraction]:
    """Normal equations on the active set; always consistent for a Gram system."""
    if not active:
        return []
    mat = [[cache.gg(i, j) for j in active] for i in active]
    rhs = [cache.gt(i) for i in active]
    sol = solve_exact(mat, rhs)
    if sol is None:  # cannot happen: Gram normal equations are consistent
        raise RuntimeError("inconsistent normal equations in cone projection")
    return list(sol)


def _combine(
    gens: Sequence[TangentVector], active: Sequence[int], coeffs: Sequence[Fraction]
) -> TangentVector:
    d, m = gens[0].d, gens[0].m
    out = TangentVector.make(SymForm.zero(d), [[0] * d for _ in range(m - 1)])
    for idx, c in zip(active, coeffs):
        if c != 0:
            out = out.add(gens[idx].scale(c))
    return out


def project_to_cone(
    generators: Sequence[TangentVector], target: TangentVector
) -> ConeProjection:
    """Exact nearest point to ``target`` in cone(generators).

    The result satisfies, verified exactly before returning:
    <g, residual> >= 0 for every generator and <point, residual> = 0.
    """
    gens = list(generators)
    if not gens:
        raise ValueError("cone needs at least one generator")
    cache = _GramCache(gens, target)
    n = len(gens)

    # Floating warm start for the active set.
    try:
        a = np.column_stack([_float_coords(g) for g in gens])
        b = _float_coords(target)
        coeffs_f, _ = nnls(a, b)
        warm = [i for i in range(n) if coeffs_f[i] > 1e-12]
    except Exception:
        warm = []

    alpha: dict[int, Fraction] = {}
    if warm:
        sol = _solve_active(cache, warm)
        if all(c >= 0 for c in sol):
            alpha = {i: c for i, c in zip(warm, sol) if c > 0}

    def inner_restore(passive: list[int], alpha: dict[int, Fraction]):
        # Re-solve on the passive set until all coefficients are nonnegative;
        # each theta-step removes at least one index, so this terminates.
        while passive:
            beta = _solve_active(cache, passive)
            if all(c >= 0 for c in beta):
                return {i: c for i, c in zip(passive, beta) if c > 0}
            theta = None
            for i, c in zip(passive, beta):
                if c < 0:
                    ai = alpha.get(i, Fraction(0))
                    t = ai / (ai - c)
                    if theta is None or t < theta:
                        theta = t
            new_alpha = {}
            for i, c in zip(passive, beta):
                ai = alpha.get(i, Fraction(0))
                val = ai + theta * (c - ai)
                if val > 0:
                    new_alpha[i] = val
            alpha = new_alpha
            passive = sorted(alpha)
        return {}

    last_state = None
    for _ in range(200 + 20 * n):
        active = sorted(alpha)
        point = _combine(gens, active, [alpha[i] for i in active])
        worst = None
        worst_val = Fraction(0)
        for i in range(n):
            if i in alpha:
                continue
            w = cache.gt(i) - inner(gens[i], point)
            if w > worst_val:
                worst_val = w
                worst = i
        if worst is None:
            break
        state = (tuple(active), worst)
        if state == last_state:
            raise RuntimeError("cone projection stalled on a degenerate set")
        last_state = state
        alpha = inner_restore(sorted(set(active) | {worst}), alpha)
    else:
        raise RuntimeError("cone projection failed to converge")

    active = sorted(alpha)
    coeffs = tuple(alpha.get(i, Fraction(0)) for i in range(n))
    point = _combine(gens, active, [alpha[i] for i in active])
    residual = point.sub(target)
    # Exact optimality certificate.
    for g in gens:
        assert inner(g, residual) >= 0
    assert inner(point, residual) == 0
    return ConeProjection(point, coeffs, residual)
