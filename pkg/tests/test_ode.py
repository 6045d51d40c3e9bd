from fractions import Fraction

import flint
import pytest

from taubnut.ode import StepLimit, integrate
from taubnut.symcore.numeric import precision


def test_exponential():
    with precision(128):
        res = integrate(lambda x, y: [y[0]], 0, [1], [1, 2])
        assert abs(res.ys[0][0] - flint.arb(1).exp()) < flint.arb("1e-10")
        assert abs(res.ys[1][0] - flint.arb(2).exp()) < flint.arb("1e-10")
        assert res.xs[-1] == 2


def test_system_harmonic():
    with precision(128):
        res = integrate(lambda x, y: [y[1], -y[0]], 0, [0, 1], [3])
        assert abs(res.ys[0][0] - flint.arb(3).sin()) < flint.arb("1e-10")


def test_step_limit():
    with pytest.raises(StepLimit):
        integrate(lambda x, y: [y[0]], 0, [1], [50], max_steps=5)


def test_tolerance_controls_work():
    loose = integrate(lambda x, y: [-y[0]], 0, [1], [Fraction(5)], tol=1e-6)
    tight = integrate(lambda x, y: [-y[0]], 0, [1], [Fraction(5)], tol=1e-14)
    assert tight.steps > loose.steps
