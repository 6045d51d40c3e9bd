import pytest

from taubnut import reduction as red
from taubnut.symcore import coordinate, parse, substitute

r = coordinate("r")


@pytest.fixture(scope="module", params=[1, -1], ids=["spacelike", "timelike"])
def case(request):
    return red.ReductionCase(request.param)


def test_unknown_case():
    with pytest.raises(red.UnknownCase):
        red.ReductionCase(0)
    with pytest.raises(red.UnknownCase):
        red.case("null")
    assert red.case("timelike").eps == -1


def test_gauge_required():
    with pytest.raises(red.GaugeNotApplied):
        red.gauged_bundle(red.ReductionCase(1, gauge=False))


def test_D_ode(case):
    lhs, factor, rep = red.derive_D_ode(case)
    assert rep.passed and all(c.status == "pass" for c in rep.checks)
    assert (factor - parse("2/(A(r)^3*B(r)*r^4)")).iszero


def test_D_solution():
    rep = red.verify_D_solution()
    assert all(c.status == "pass" for c in rep.checks)


def test_F_ode_and_solution(case):
    ode, rep = red.derive_F_ode(case)
    assert all(c.status == "pass" for c in rep.checks)
    rep = red.verify_F_solution(case)
    assert all(c.status == "pass" for c in rep.checks)


def test_constant_R(case):
    rep = red.constant_R_contradiction(case)
    assert all(c.status == "pass" for c in rep.checks)
    if case.eps == 1:
        assert rep["spacelike.const-R-G11-value"].status == "pass"


def test_on_shell(case):
    assert all(c.status == "pass" for c in red.on_shell_report(red.solve(case)).checks)


def test_numeric_constants_on_shell(case):
    sol = red.solve(case, "2", "-3/5")
    assert all(c.status == "pass" for c in red.on_shell_report(sol).checks)


def test_transform(case):
    g, rep = red.transform_to_nut_form(red.solve(case))
    statuses = {c.id.split(".", 1)[1]: c.status for c in rep.checks}
    assert statuses["nut-form"] == "pass"
    assert statuses["drprime2-display"] == "pass"
    assert statuses["drprime2-display-verbatim"] == "mismatch-reported"


@pytest.mark.parametrize("m,l", [("m", "l"), ("3", "1/2"), ("-1", "2")])
def test_round_trip(case, m, l):
    rep = red.round_trip(case.eps, m, l)
    assert all(c.status == "pass" for c in rep.checks)


def test_kretschmann_and_horizon():
    sol = red.solve(red.ReductionCase(1))
    K, rep = red.kretschmann_closed_form(sol)
    assert rep.passed
    assert rep["spacelike.K-pipelines"].status == "pass"
    val, hz = red.regularity_at_horizon(K)
    assert all(c.status == "pass" for c in hz.checks)
    assert (substitute(val, {"c0": 4, "c1": 32}) - parse("48*(4 - 1)/64")).iszero


def test_oracles():
    assert red.D_oracle_check().status == "pass"
    for eps in (1, -1):
        chk, rows = red.oracle_sweep(eps, pairs=10, seed=7)
        assert chk.status == "pass" and len(rows) == 10
        assert max(e for _, _, e in rows) < 1e-9
