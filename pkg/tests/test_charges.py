import pytest

from taubnut.catalog import extension, f_of, taub_nut
from taubnut.charges import (
    Divergent,
    NotKilling,
    NotTimelikeRegion,
    charge_report,
    dual_charge,
    komar_mass,
    limit_at_infinity,
)
from taubnut.excalc import EULER, VecField
from taubnut.symcore import coordinate, diff, parameter, parse, sqrt

r, m, l = coordinate("r"), parameter("m"), parameter("l")


def test_limits():
    f = f_of(m, l)
    assert limit_at_infinity(f) == 1
    assert (limit_at_infinity(-diff(f, "r") * (r * r + l * l) / 2) + m).iszero
    with pytest.raises(Divergent):
        limit_at_infinity(r * f)
    assert limit_at_infinity(1 / r).iszero


def test_limits_with_radicals():
    c0 = parameter("c0")
    assert limit_at_infinity(sqrt(r * r - c0) / r) == 1
    assert limit_at_infinity((sqrt(r * r - 3) - r) * r) == parse("-3/2")
    F = parse("(-4*c0*r^2 + c1*sqrt(r^2 - c0) + 8*c0^2)/r^2")
    assert (limit_at_infinity(F) + 4 * c0).iszero


def test_symbolic_charges():
    model = taub_nut()
    k, d = komar_mass(model), dual_charge(model)
    assert (k.limit + m).iszero
    assert (d.limit - l).iszero
    assert (d.value - l * f_of(m, l)).iszero


def test_mass_free_and_sign_flip():
    assert komar_mass(taub_nut(0, 1)).limit.iszero
    assert (dual_charge(taub_nut(1, -2)).limit + 2).iszero


@pytest.mark.parametrize("m_,l_", [(1, 1), (1, 2)])
def test_convergence_tables(m_, l_):
    k, d = komar_mass(taub_nut(m_, l_)), dual_charge(taub_nut(m_, l_))
    assert float(k.table[2][2]) < 1e-4 and float(d.table[2][2]) < 1e-4
    assert abs(k.order - 1) < 0.05


def test_dual_example_errors():
    d = dual_charge(taub_nut(1, 2))
    errs = {R: float(e) for R, _, e in d.table}
    assert errs[10**3] < 1e-2 and errs[10**6] < 1e-5


def test_report_passes():
    rep = charge_report(taub_nut())
    assert all(c.status == "pass" for c in rep.checks)


def test_not_killing():
    with pytest.raises(NotKilling):
        komar_mass(taub_nut(), VecField(EULER, [1, 0, 0, 0]))


def test_wrong_model():
    with pytest.raises(NotTimelikeRegion):
        komar_mass(extension("psi_p"))
