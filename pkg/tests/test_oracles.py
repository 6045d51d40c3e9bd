"""Frozen oracle values, fixed before the engine was run against them."""

from fractions import Fraction

import flint
import pytest

from taubnut.catalog import f_of, horizons, taub_nut
from taubnut.curvature import christoffel_curvature
from taubnut.ode import integrate
from taubnut.symcore import eval_numeric, parameter, parse, sqrt, substitute
from taubnut.symcore.numeric import precision

# 5/sqrt(6): D^2 = 4 r^2 c0/(r^2 - c0) at r = 5, c0 = 1
D_AT_5 = "2.041241452319315081831070062"
# closed-form Taub-NUT Kretschmann (independent of the tetrad computation)
K_TAUB_NUT = (
    "48*((m^2 - l^2)*(r^6 - 15*l^2*r^4 + 15*l^4*r^2 - l^6)"
    " + 4*m*l^2*r*(3*r^4 - 10*l^2*r^2 + 3*l^4))/(r^2 + l^2)^6"
)
KOMAR_M1L1_R1000 = Fraction(-1001999, 1000001)
DUAL_M1L1_R1000 = Fraction(997999, 1000001)


def test_D_integration_matches_frozen_value():
    with precision(128):
        D0 = 4 / flint.arb(3).sqrt()
        res = integrate(lambda x, y: [-(y[0] ** 3) / (4 * x**3)], 2, [D0], [5])
        assert abs(res.ys[-1][0] - flint.arb(D_AT_5)) < flint.arb("1e-10")


def test_kretschmann_literature_form():
    K = christoffel_curvature(taub_nut().metric).kretschmann
    assert (K - parse(K_TAUB_NUT)).iszero


@pytest.mark.parametrize("m,l,r,expected", [(1, 1, 1, -12), (1, 2, 0, Fraction(9, 4)), (1, 1, 0, 0)])
def test_kretschmann_points(m, l, r, expected):
    K = substitute(parse(K_TAUB_NUT), {"m": m, "l": l, "r": r})
    assert K.to_fraction() == expected


def test_horizon_values():
    rp, rm = horizons(1, 1)
    assert (rp - 1 - sqrt(2)).iszero and (rm - 1 + sqrt(2)).iszero
    assert (substitute(f_of(3, 4), {"r": 8})).iszero
    assert (substitute(f_of(3, 4), {"r": -2})).iszero


def test_charge_values_at_r1000():
    from taubnut.charges import dual_charge, komar_mass

    model = taub_nut(1, 1)
    assert substitute(komar_mass(model).value, {"r": 1000}).to_fraction() == KOMAR_M1L1_R1000
    assert substitute(dual_charge(model).value, {"r": 1000}).to_fraction() == DUAL_M1L1_R1000


def test_F_closed_form_point():
    # spacelike F at c0 = 1, c1 = 2, r = 2: (-16 + 2 sqrt 3 + 8)/4
    F = parse("(-4*c0*r^2 + c1*sqrt(r^2 - c0) + 8*c0^2)/r^2")
    with precision(128):
        v = eval_numeric(F, {"c0": 1, "c1": 2, "r": 2})
        assert abs(v - (flint.arb(-8) + 2 * flint.arb(3).sqrt()) / 4) < flint.arb("1e-30")


def test_horizon_kretschmann_formula():
    c0, c1 = parameter("c0"), parameter("c1")
    l, m = parameter("l"), parameter("m")
    v = 48 / c0**2 - Fraction(3, 4) * c1**2 / c0**5
    assert (substitute(v, {"c0": l * l, "c1": 8 * l * l * m}) - parse("48*(l^2 - m^2)/l^6")).iszero
