"""Hypothesis strategies for expressions, forms and tetrads."""

from itertools import combinations

from hypothesis import strategies as st

from taubnut.excalc import EULER, Form, Tetrad, VecField
from taubnut.symcore import const, coordinate, cos, parameter, sin, sqrt

R, TH, M, L = coordinate("r"), coordinate("theta"), parameter("m"), parameter("l")

rationals = st.fractions(min_value=-5, max_value=5, max_denominator=6)

leaves = st.one_of(
    st.sampled_from([R, TH, M, L, sin(TH), cos(TH), sqrt(R * R + L * L), sqrt(2)]),
    rationals.map(const),
)


def _combine(children):
    pair = st.tuples(children, children)
    return st.one_of(
        pair.map(lambda ab: ab[0] + ab[1]),
        pair.map(lambda ab: ab[0] - ab[1]),
        pair.map(lambda ab: ab[0] * ab[1]),
        pair.map(lambda ab: ab[0] / (ab[1] * ab[1] + 1) if not (ab[1] * ab[1] + 1).iszero else ab[0]),
    )


exprs = st.recursive(leaves, _combine, max_leaves=5)
small_exprs = st.recursive(leaves, _combine, max_leaves=3)


@st.composite
def forms(draw, degree=None, basis="coordinate"):
    k = draw(st.integers(0, 4)) if degree is None else degree
    coeffs = {}
    for I in combinations(range(4), k):
        if draw(st.booleans()):
            coeffs[I] = draw(small_exprs)
    return Form(EULER, k, coeffs, basis)


@st.composite
def vectors(draw):
    return VecField(EULER, [draw(small_exprs) if draw(st.booleans()) else 0 for _ in range(4)])


_poly_r = st.tuples(st.integers(1, 3), st.integers(-2, 2), st.integers(0, 2)).map(
    lambda t: t[0] + t[1] * R + t[2] * R * R if not (t[1] == 0 and t[2] == 0) else t[0] + R
)


@st.composite
def diagonal_tetrads(draw):
    """Orthonormal coframe P0 dpsi, P1 dr, P2 dtheta, P3 sin(theta) dphi with P_i polynomials in r."""
    P = [draw(_poly_r) for _ in range(4)]
    cross = draw(st.integers(-1, 1))
    forms_ = [
        EULER.d("psi") * P[0] + EULER.d("phi") * (cross * P[0] * cos(TH)),
        EULER.d("r") * P[1],
        EULER.d("theta") * P[2],
        EULER.d("phi") * (P[3] * sin(TH)),
    ]
    return Tetrad(forms_, (-1, 1, 1, 1))


