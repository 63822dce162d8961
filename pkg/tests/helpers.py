"""Shared constructions for the test suite, independent of the catalog module."""

from fractions import Fraction as Fr

from periform.linalg import PQF


def e8_gram() -> PQF:
    """Gram of the even-coordinate-system basis of the E8 root lattice."""
    basis = [
        [2, 0, 0, 0, 0, 0, 0, 0],
        [-1, 1, 0, 0, 0, 0, 0, 0],
        [0, -1, 1, 0, 0, 0, 0, 0],
        [0, 0, -1, 1, 0, 0, 0, 0],
        [0, 0, 0, -1, 1, 0, 0, 0],
        [0, 0, 0, 0, -1, 1, 0, 0],
        [0, 0, 0, 0, 0, -1, 1, 0],
        [Fr(1, 2)] * 8,
    ]
    rows = [
        [sum(basis[i][k] * basis[j][k] for k in range(8)) for j in range(8)]
        for i in range(8)
    ]
    return PQF.from_rows(rows)
