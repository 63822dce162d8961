from fractions import Fraction as Fr

import pytest

from helpers import e8_gram
from periform.improve import improve
from periform.linalg import PQF, SymForm
from periform.periodic import OverlapError, PeriodicForm, density


class TestImprove:
    def test_already_extreme_takes_no_steps(self):
        x = PeriodicForm.lattice(e8_gram())
        res = improve(x, steps=10)
        assert res.steps == ()
        assert res.certificate.verdict == "IsolatedExtreme"
        assert not res.stalled

    def test_diag_reaches_hexagonal(self):
        x = PeriodicForm.lattice(PQF.from_rows([[1, 0], [0, 2]]))
        res = improve(x, steps=500)
        assert not res.stalled
        assert res.certificate.verdict == "IsolatedExtreme"
        final = density(res.final).delta_over_ball
        assert abs(final - 0.28867513459481287) < 1e-3

    def test_trajectory_strictly_increasing(self):
        x = PeriodicForm.lattice(PQF.from_rows([[1, 0], [0, 2]]))
        res = improve(x, steps=500)
        values = [s.center_density_squared for s in res.steps]
        assert all(a < b for a, b in zip(values, values[1:]))

    def test_line_translate_converges(self):
        x = PeriodicForm.make(PQF.from_rows([[1]]), [[Fr(2, 5)]])
        res = improve(x, steps=200)
        assert res.certificate.verdict == "IsolatedExtreme"
        # Certified optimum of two translates on the line: center^2 = 1/4.
        assert density(res.final).center_density_squared == Fr(1, 4)

    def test_step_budget_respected(self):
        x = PeriodicForm.lattice(PQF.from_rows([[1, 0], [0, 2]]))
        res = improve(x, steps=2)
        assert len(res.steps) <= 2

    def test_overlap_rejected(self):
        x = PeriodicForm.make(PQF(SymForm.identity(1)), [[0]])
        with pytest.raises(OverlapError):
            improve(x)

    def test_bad_shrink_rejected(self):
        x = PeriodicForm.lattice(PQF.from_rows([[1, 0], [0, 2]]))
        with pytest.raises(ValueError):
            improve(x, shrink=Fr(3, 2))

    def test_seeded_runs_reproduce(self):
        x = PeriodicForm.lattice(PQF.from_rows([[1, 0], [0, 2]]))
        r1 = improve(x, steps=500, seed=7)
        r2 = improve(x, steps=500, seed=7)
        assert [s.center_density_squared for s in r1.steps] == [
            s.center_density_squared for s in r2.steps
        ]
