import random
from fractions import Fraction as Fr

import pytest

from periform.linalg import (
    PQF,
    SymForm,
    TangentVector,
    ambient_dim,
    det_and_inverse,
    inner,
    ldl,
    rank_span,
    solve_exact,
)


def reconstruct(res, d):
    """P^t L D L^t P from an LDLResult, as full rational rows."""
    rows = [[Fr(0)] * d for _ in range(d)]
    for i in range(d):
        for j in range(d):
            acc = Fr(0)
            for k in range(min(i, j) + 1):
                if k < len(res.pivots):
                    acc += res.lower[i][k] * res.pivots[k] * res.lower[j][k]
            rows[i][j] = acc
    # undo the symmetric permutation: entry (perm[i], perm[j]) of the input
    out = [[Fr(0)] * d for _ in range(d)]
    for i in range(d):
        for j in range(d):
            out[res.perm[i]][res.perm[j]] = rows[i][j]
    return tuple(tuple(r) for r in out)


class TestLdl:
    def test_identity(self):
        res = ldl(SymForm.identity(2))
        assert res.is_positive_definite
        assert res.pivots == (Fr(1), Fr(1))
        assert res.lower == ((Fr(1), Fr(0)), (Fr(0), Fr(1)))

    def test_hexagonal_gram(self):
        # One step of hand elimination on [[2,1],[1,2]]: pivots 2, 3/2.
        res = ldl(SymForm.from_rows([[2, 1], [1, 2]]))
        assert res.is_positive_definite
        assert res.pivots == (Fr(2), Fr(3, 2))

    def test_indefinite(self):
        # [[1,2],[2,1]]: second pivot 1 - 4 = -3.
        res = ldl(SymForm.from_rows([[1, 2], [2, 1]]))
        assert not res.is_positive_definite
        assert res.pivots == (Fr(1), Fr(-3))

    def test_zero_pivot_with_pivoting(self):
        # Leading zero but PD-after-permutation is still not PD overall;
        # the pivot search must terminate and report correctly.
        res = ldl(SymForm.from_rows([[0, 1], [1, 0]]))
        assert not res.is_positive_definite
        res = ldl(SymForm.from_rows([[0, 0], [0, 1]]))
        assert not res.is_positive_definite

    def test_singular_all_zero(self):
        res = ldl(SymForm.zero(3))
        assert not res.is_positive_definite

    @pytest.mark.parametrize("seed", range(8))
    def test_roundtrip_random_pd(self, seed):
        # Random PD forms Q = B^t B + I with rational B.
        rng = random.Random(seed)
        d = rng.randint(1, 5)
        b = [[Fr(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(d)] for _ in range(d)]
        rows = [
            [sum(b[k][i] * b[k][j] for k in range(d)) + (1 if i == j else 0)
             for j in range(d)]
            for i in range(d)
        ]
        q = SymForm.from_rows(rows)
        res = ldl(q)
        assert res.is_positive_definite
        assert all(p > 0 for p in res.pivots)
        assert reconstruct(res, d) == q.rows()


class TestDetInverse:
    def test_identity(self):
        det, inv = det_and_inverse(PQF(SymForm.identity(3)))
        assert det == 1
        assert inv == SymForm.identity(3)

    def test_hexagonal(self):
        # Adjugate by hand: inverse of [[2,1],[1,2]] is [[2/3,-1/3],[-1/3,2/3]].
        det, inv = det_and_inverse(PQF.from_rows([[2, 1], [1, 2]]))
        assert det == 3
        assert inv == SymForm.from_rows([[Fr(2, 3), Fr(-1, 3)], [Fr(-1, 3), Fr(2, 3)]])

    @pytest.mark.parametrize("seed", range(6))
    def test_inverse_product_is_identity(self, seed):
        rng = random.Random(100 + seed)
        d = rng.randint(1, 5)
        b = [[Fr(rng.randint(-3, 3)) for _ in range(d)] for _ in range(d)]
        rows = [
            [sum(b[k][i] * b[k][j] for k in range(d)) + (2 if i == j else 0)
             for j in range(d)]
            for i in range(d)
        ]
        q = PQF.from_rows(rows)
        det, inv = det_and_inverse(q)
        assert det > 0
        prod = [inv.matvec([q.form.entry(i, j) for i in range(d)]) for j in range(d)]
        for j in range(d):
            for i in range(d):
                assert prod[j][i] == (1 if i == j else 0)

    def test_non_pd_rejected(self):
        with pytest.raises(ValueError):
            PQF.from_rows([[1, 2], [2, 1]])


class TestInner:
    def test_identity_pair(self):
        x = TangentVector.make(SymForm.identity(2))
        assert inner(x, x) == 2

    def test_d1_m2(self):
        x = TangentVector.make(SymForm.from_rows([[1]]), [(2,)])
        y = TangentVector.make(SymForm.from_rows([[3]]), [(4,)])
        assert inner(x, y) == 11

    def test_zero(self):
        x = TangentVector.make(SymForm.from_rows([[5, 1], [1, 7]]), [(1, 2)])
        z = TangentVector.make(SymForm.zero(2), [(0, 0)])
        assert inner(x, z) == 0

    def test_dimension_mismatch(self):
        x = TangentVector.make(SymForm.identity(2))
        y = TangentVector.make(SymForm.identity(3))
        with pytest.raises(ValueError):
            inner(x, y)

    @pytest.mark.parametrize("seed", range(100))
    def test_positive_definite_on_random(self, seed):
        rng = random.Random(200 + seed)
        d, m = rng.randint(1, 4), rng.randint(1, 3)
        rows = [[Fr(0)] * d for _ in range(d)]
        for i in range(d):
            for j in range(i, d):
                rows[i][j] = rows[j][i] = Fr(rng.randint(-5, 5), rng.randint(1, 4))
        q = SymForm.from_rows(rows)
        cols = [tuple(Fr(rng.randint(-5, 5), rng.randint(1, 4)) for _ in range(d))
                for _ in range(m - 1)]
        x = TangentVector.make(q, cols)
        if x.is_zero():
            assert inner(x, x) == 0
        else:
            assert inner(x, x) > 0

    def test_symmetry_and_bilinearity(self):
        rng = random.Random(7)
        def rand_tv():
            q = SymForm.from_rows([[rng.randint(-3, 3) if i == j else 0 for j in range(3)] for i in range(3)])
            return TangentVector.make(q, [tuple(Fr(rng.randint(-3, 3)) for _ in range(3))])
        x, y, z = rand_tv(), rand_tv(), rand_tv()
        assert inner(x, y) == inner(y, x)
        assert inner(x.add(y.scale(Fr(2, 3))), z) == inner(x, z) + Fr(2, 3) * inner(y, z)


class TestRankSpan:
    def test_coordinate_forms(self):
        e1 = TangentVector.make(SymForm.outer([1, 0]))
        e2 = TangentVector.make(SymForm.outer([0, 1]))
        rank, null = rank_span([e1, e2])
        assert rank == 2
        assert len(null) == 1
        offdiag = null[0]
        assert offdiag.qpart.entry(0, 0) == 0
        assert offdiag.qpart.entry(1, 1) == 0
        assert offdiag.qpart.entry(0, 1) != 0

    def test_hexagonal_minimum_spans(self):
        # The three rank-1 forms of Min A_2 for [[2,1],[1,2]]: x in
        # {(1,0),(0,1),(1,-1)}.
        vecs = [TangentVector.make(SymForm.outer(x)) for x in [(1, 0), (0, 1), (1, -1)]]
        rank, null = rank_span(vecs)
        assert rank == 3
        assert null == ()

    def test_duplicates(self):
        v = TangentVector.make(SymForm.outer([1, 2]))
        rank, _ = rank_span([v, v])
        assert rank == 1

    def test_empty(self):
        rank, null = rank_span([])
        assert rank == 0 and null == ()

    @pytest.mark.parametrize("seed", range(10))
    def test_rank_plus_nullity(self, seed):
        rng = random.Random(300 + seed)
        d, m = rng.randint(1, 3), rng.randint(1, 3)
        n = rng.randint(1, 6)
        vecs = []
        for _ in range(n):
            rows = [[0] * d for _ in range(d)]
            for i in range(d):
                for j in range(i, d):
                    rows[i][j] = rows[j][i] = rng.randint(-3, 3)
            cols = [tuple(Fr(rng.randint(-3, 3)) for _ in range(d)) for _ in range(m - 1)]
            vecs.append(TangentVector.make(SymForm.from_rows(rows), cols))
        rank, null = rank_span(vecs)
        assert rank + len(null) == ambient_dim(d, m)
        # Orthogonal complement really is orthogonal, in the <.,.> sense.
        for nv in null:
            for v in vecs:
                assert inner(nv, v) == 0


class TestSolveExact:
    def test_simple(self):
        sol = solve_exact([[Fr(2), Fr(0)], [Fr(0), Fr(4)]], [Fr(1), Fr(2)])
        assert sol == (Fr(1, 2), Fr(1, 2))

    def test_inconsistent(self):
        sol = solve_exact([[Fr(1), Fr(1)], [Fr(2), Fr(2)]], [Fr(1), Fr(3)])
        assert sol is None
