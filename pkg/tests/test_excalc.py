import pytest

from taubnut.catalog import EULER, InvariantFrame, sigma_forms
from taubnut.excalc import (
    BasisMismatch,
    DegreeError,
    Form,
    SingularCoframe,
    Tetrad,
    VecField,
    ext_d,
    hodge_frame,
    interior,
    lie_form,
    lie_vec,
    parse_form,
    perm_sign,
    to_coordinate,
    to_frame,
)
from taubnut.symcore import coordinate, cos, sin

th = coordinate("theta")
sx, sy, sz = sigma_forms()


def test_sigma_wedges():
    assert (sx ^ sy) == Form(EULER, 2, {(2, 3): sin(th)})
    assert (ext_d(sz) + (sx ^ sy)).iszero
    assert (ext_d(sx) + (sy ^ sz)).iszero
    assert (ext_d(sy) + (sz ^ sx)).iszero


def test_lie_psi_rotates_sigma():
    dpsi = VecField.partial(EULER, "psi")
    assert lie_form(dpsi, sz).iszero
    assert lie_form(dpsi, sx) == sy
    assert (lie_form(dpsi, sy) + sx).iszero


def test_invariant_frame_structure():
    assert InvariantFrame().structure_report().passed


def test_wedge_antisymmetry():
    a, b = EULER.d("r"), EULER.d("theta")
    assert ((a ^ b) + (b ^ a)).iszero
    assert (a ^ a).iszero


def test_perm_sign():
    assert perm_sign((0, 1, 2, 3)) == 1
    assert perm_sign((1, 0, 2, 3)) == -1
    assert perm_sign((2, 3, 0, 1)) == 1


def test_hodge_orientation():
    e01 = Form(EULER, 2, {(0, 1): 1}, "frame")
    assert hodge_frame(e01) == Form(EULER, 2, {(2, 3): -1}, "frame")
    e23 = Form(EULER, 2, {(2, 3): 1}, "frame")
    assert hodge_frame(e23) == Form(EULER, 2, {(0, 1): 1}, "frame")


def test_basis_mismatch():
    with pytest.raises(BasisMismatch):
        EULER.d("r") + Form(EULER, 1, {(0,): 1}, "frame")
    with pytest.raises(BasisMismatch):
        hodge_frame(EULER.d("r"))


def test_degree_error():
    with pytest.raises(DegreeError):
        Form(EULER, 5, {})


def test_frame_round_trip():
    r = coordinate("r")
    t = Tetrad([EULER.d("psi") * r, EULER.d("r"), EULER.d("theta") * r, EULER.d("phi") * (r * sin(th))])
    a = EULER.d("r") ^ EULER.d("phi")
    assert to_coordinate(to_frame(a, t), t) == a


def test_singular_coframe():
    with pytest.raises(SingularCoframe):
        Tetrad([EULER.d("r"), EULER.d("r"), EULER.d("theta"), EULER.d("phi")])


def test_interior_and_brackets():
    X = VecField.partial(EULER, "theta")
    assert interior(X, sx) == Form.scalar(EULER, sx[(2,)])
    Y = VecField(EULER, [0, 0, 0, cos(th)])
    assert lie_vec(X, Y) == VecField(EULER, [0, 0, 0, -sin(th)])


def test_parse_form():
    a = parse_form("d psi + cos(theta) d phi")
    assert a == sz
    b = parse_form("sin(theta) d theta ∧ d phi")
    assert b == (sx ^ sy)
