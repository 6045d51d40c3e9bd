import flint
import pytest

from taubnut.catalog import generalized_family, taub_nut
from taubnut.curvature import (
    SingularMetric,
    bundle_checks,
    cartan,
    christoffel_curvature,
    kretschmann_shortcut,
    numeric_einstein,
    pipeline_equivalence,
)
from taubnut.excalc import EULER, SymTensor2
from taubnut.symcore import sqrt


@pytest.fixture(scope="module")
def nut():
    model = taub_nut()
    return cartan(model.tetrad), christoffel_curvature(model.metric)


def test_taub_nut_vacuum_both_pipelines(nut):
    b, c = nut
    assert all(b.einstein[i][j].iszero for i in range(4) for j in range(4))
    assert all(c.einstein[i][j].iszero for i in range(4) for j in range(4))


def test_pipelines_agree(nut):
    b, c = nut
    assert pipeline_equivalence(b, c).passed
    assert (b.kretschmann - c.kretschmann).iszero


def test_bundle_identities(nut):
    rep = bundle_checks(nut[0])
    assert rep.passed and len(rep.checks) >= 4


def test_shortcut_on_vacuum(nut):
    b, _ = nut
    assert (b.kretschmann - kretschmann_shortcut(b)).iszero


@pytest.mark.parametrize("eps", [1, -1])
def test_formal_family_pipelines(eps):
    model = generalized_family(eps)
    assert pipeline_equivalence(cartan(model.tetrad), christoffel_curvature(model.metric)).passed


def test_singular_metric():
    g = SymTensor2.sym(EULER.d("r"))
    with pytest.raises(SingularMetric):
        christoffel_curvature(g)


def test_numeric_einstein_vacuum():
    G = numeric_einstein(taub_nut(1, 1).metric, {"r": 3 + sqrt(2), "theta": 1, "phi": 1, "psi": 1}, 128)
    for row in G:
        for v in row:
            assert v.contains(0) and v.rad() < flint.arb("1e-20")


def test_numeric_einstein_detects_matter():
    # a non-vacuum metric: scale the round part
    g = taub_nut(1, 1).metric
    g2 = SymTensor2(g.chart, [[g.m[i][j] * (2 if i >= 2 and j >= 2 else 1) for j in range(4)] for i in range(4)])
    G = numeric_einstein(g2, {"r": 5, "theta": 1, "phi": 1, "psi": 1}, 128)
    assert any(not v.contains(0) for row in G for v in row)
