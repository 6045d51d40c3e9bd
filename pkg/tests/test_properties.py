"""Algebraic identities over seeded random instances."""

from hypothesis import HealthCheck, given, settings, strategies as st

from strategies import diagonal_tetrads, exprs, forms, small_exprs, vectors
from taubnut.curvature import cartan
from taubnut.excalc import EULER, Form, ext_d, hodge_frame, interior, lie_form
from taubnut.symcore import const, diff, eval_numeric, parse
from taubnut.symcore.numeric import precision

N = 200
cfg = settings(max_examples=N, deadline=None, derandomize=True, suppress_health_check=[HealthCheck.too_slow])

POINT = {"r": 3, "theta": "1/3", "m": "2/7", "l": "5/4"}


@cfg
@given(exprs, exprs, exprs)
def test_ring_axioms(a, b, c):
    assert (a + b - (b + a)).iszero
    assert (a * b - b * a).iszero
    assert ((a + b) + c - (a + (b + c))).iszero
    assert ((a * b) * c - a * (b * c)).iszero
    assert (a * (b + c) - (a * b + a * c)).iszero
    assert (a - a).iszero
    assert (a + 0 - a).iszero and (a * 1 - a).iszero


@cfg
@given(exprs, exprs)
def test_evaluation_is_a_homomorphism(a, b):
    with precision(128):
        va, vb = eval_numeric(a, POINT), eval_numeric(b, POINT)
        assert (eval_numeric(a * b, POINT) - va * vb).contains(0)
        assert (eval_numeric(a + b, POINT) - va - vb).contains(0)


@cfg
@given(exprs)
def test_parse_round_trip(a):
    assert parse(str(a)) == a


@cfg
@given(small_exprs, small_exprs)
def test_leibniz_rule(a, b):
    for x in ("r", "theta"):
        assert (diff(a * b, x) - diff(a, x) * b - a * diff(b, x)).iszero


@cfg
@given(st.integers(0, 2).flatmap(lambda k: forms(degree=k)))
def test_d_squared_is_zero(a):
    assert ext_d(ext_d(a)).iszero


@cfg
@given(forms(degree=1), vectors())
def test_cartan_formula_against_components(w, X):
    # (L_X w)_mu = X^nu d_nu w_mu + w_nu d_mu X^nu
    comps = [
        sum((X[v] * diff(w[(mu,)], EULER.coords[v]) + w[(v,)] * diff(X[v], EULER.coords[mu]) for v in range(4)), const(0))
        for mu in range(4)
    ]
    assert (lie_form(X, w) - Form.one_form(EULER, comps)).iszero
    # and i_X d + d i_X on the same instance
    assert (lie_form(X, w) - interior(X, ext_d(w)) - ext_d(interior(X, w))).iszero


@cfg
@given(st.integers(0, 4).flatmap(lambda k: forms(degree=k, basis="frame")))
def test_hodge_double_star(a):
    k = a.degree
    # Lorentzian signature: ** = -(-1)^{k(n-k)}
    sign = -((-1) ** (k * (4 - k)))
    assert (hodge_frame(hodge_frame(a)) - a * sign).iszero


@cfg
@given(diagonal_tetrads())
def test_first_bianchi_identity(t):
    b = cartan(t)
    for a in range(4):
        for i in range(4):
            for j in range(4):
                for k in range(4):
                    s = b.R(a, i, j, k) + b.R(a, j, k, i) + b.R(a, k, i, j)
                    assert s.iszero


@cfg
@given(diagonal_tetrads())
def test_curvature_pair_symmetry(t):
    b = cartan(t)
    for i in range(4):
        for j in range(4):
            for k in range(4):
                for m in range(4):
                    assert (b.R_low(i, j, k, m) - b.R_low(k, m, i, j)).iszero
