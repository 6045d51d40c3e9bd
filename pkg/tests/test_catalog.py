import json

import jsonschema
import pytest

from taubnut.catalog import (
    ParameterDomain,
    extension,
    extension_pullback_check,
    horizons,
    load_model,
    orbit_type,
    taub_nut,
    verify_killing,
)
from taubnut.curvature import christoffel_curvature
from taubnut.symcore import coordinate, cos, parameter, substitute

r, th, l = coordinate("r"), coordinate("theta"), parameter("l")


def test_killing_checks():
    rep = verify_killing(taub_nut())
    assert len(rep.checks) == 6 and rep.passed
    assert all(c.status == "pass" for c in rep.checks)


def test_horizons():
    assert [h.to_fraction() for h in horizons(3, 4)] == [8, -2]
    assert [h.to_fraction() for h in horizons(0, 1)] == [1, -1]


def test_orbit_types():
    model = taub_nut(1, 1)
    assert orbit_type(model, 0) == "taub"
    assert orbit_type(model, 10) == "nut"
    assert orbit_type(taub_nut(3, 4), 8) == "horizon"


@pytest.mark.parametrize("branch", ["psi_p", "psi_pp"])
def test_extension_determinant_and_pullback(branch):
    ext = extension(branch)
    expected = 4 * l * l * (r * r + l * l) ** 2 * (cos(th) ** 2 - 1)
    assert (ext.determinant() - expected).iszero
    assert extension_pullback_check(branch).status == "pass"
    # the metric stays regular where f vanishes
    g = substitute(ext.metric.m[0][1], {"m": 3, "l": 4, "r": 8})
    assert not g.iszero


@pytest.mark.parametrize("branch", ["psi_p", "psi_pp"])
def test_extension_vacuum(branch):
    G = christoffel_curvature(extension(branch).metric).einstein
    assert all(G[i][j].iszero for i in range(4) for j in range(4))


def test_parameter_domain():
    with pytest.raises(ParameterDomain):
        taub_nut(1, 0)
    with pytest.raises(ParameterDomain):
        taub_nut(1, 1, n=0)
    with pytest.raises(ParameterDomain):
        extension("psi_x")


def test_lens_metadata():
    assert taub_nut(n=3).metadata["psi_period"] == "4*pi/3"


def test_load_model():
    model = load_model(json.dumps({"name": "tn", "params": {"m": "1/2", "l": 2, "n": 2}}))
    assert model.params["m"].to_fraction() * 2 == 1 and model.metadata["n"] == 2
    with pytest.raises(jsonschema.ValidationError):
        load_model({"name": "tn", "params": {"q": 1}})
