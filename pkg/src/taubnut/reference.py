"""Displayed formulas to be checked, transcribed into parser syntax.

Frame indices are 0-based and match the case tetrads.  Nothing here is used
to compute anything; every entry is a claim compared against the engine.
"""

from __future__ import annotations

from .report import MISMATCH, PASS, Check
from .symcore import Expr, parse

# shorthands shared by several displays
_BA = "B'(r)/(A(r)*B(r))"
_RA = "R'(r)/(A(r)*R(r))"
_B2R = "B(r)/(2*R(r)^2)"
_X = "B(r)*R'(r)/(A(r)*R(r)^3) - B'(r)/(A(r)*R(r)^2)"
_NX = "B'(r)/(A(r)*R(r)^2) - B(r)*R'(r)/(A(r)*R(r)^3)"
_BPP = "B''(r)/(A(r)^2*B(r)) - B'(r)*A'(r)/(A(r)^3*B(r))"
_RPP = "R''(r)/(A(r)^2*R(r)) - R'(r)*A'(r)/(A(r)^3*R(r))"
_BR = "B'(r)*R'(r)/(A(r)^2*B(r)*R(r)) + B(r)^2/(4*R(r)^4)"


def _neg(s: str) -> str:
    return f"-({s})"


def _half(s: str) -> str:
    return f"(1/2)*({s})"


SPACELIKE = {
    "dtheta": {
        0: {},
        1: {(0, 1): _BA, (2, 3): "-B(r)/R(r)^2"},
        2: {(0, 2): _RA},
        3: {(0, 3): _RA, (2, 3): "cot(theta)/R(r)"},
    },
    "omega": {
        (0, 1): {1: _BA},
        (1, 0): {1: _BA},
        (0, 2): {2: _RA},
        (2, 0): {2: _RA},
        (0, 3): {3: _RA},
        (3, 0): {3: _RA},
        (1, 2): {3: _neg(_B2R)},
        (2, 1): {3: _B2R},
        (1, 3): {2: _B2R},
        (3, 1): {2: _neg(_B2R)},
        (2, 3): {1: _B2R, 3: "-cot(theta)/R(r)"},
        (3, 2): {1: _neg(_B2R), 3: "cot(theta)/R(r)"},
    },
    "Omega": {
        (0, 1): {(0, 1): _BPP, (2, 3): _X},
        (0, 2): {(0, 2): _RPP, (1, 3): _neg(_half(_NX))},
        (0, 3): {(0, 3): _RPP, (1, 2): _half(_NX)},
        (1, 2): {(0, 3): _half(_X), (1, 2): _BR},
        (1, 3): {(0, 2): _half(_NX), (1, 3): _BR},
        (2, 3): {(0, 1): _NX, (2, 3): "1/R(r)^2 + R'(r)^2/(A(r)^2*R(r)^2) - (3/4)*B(r)^2/R(r)^4"},
    },
    # (multiplier, component, value): multiplier * R^a_bcd = value
    "riemann": [
        (1, (0, 1, 0, 1), _BPP),
        (1, (0, 1, 2, 3), _X),
        (2, (0, 2, 1, 3), _X),
        (-2, (0, 3, 1, 2), _X),
        (1, (0, 2, 0, 2), _RPP),
        (1, (0, 3, 0, 3), _RPP),
        (1, (1, 2, 1, 2), _BR),
        (1, (1, 3, 1, 3), _BR),
        (1, (2, 3, 2, 3), "1/R(r)^2 + R'(r)^2/(A(r)^2*R(r)^2) - (3/4)*B(r)^2/R(r)^4"),
    ],
}

TIMELIKE = {
    "dtheta": {
        0: {(0, 1): _neg(_BA), (2, 3): "-B(r)/R(r)^2"},
        1: {},
        2: {(1, 2): _RA},
        3: {(1, 3): _RA, (2, 3): "cot(theta)/R(r)"},
    },
    "omega": {
        (0, 1): {0: _BA},
        (1, 0): {0: _BA},
        (0, 2): {3: _neg(_B2R)},
        (2, 0): {3: _neg(_B2R)},
        (0, 3): {2: _B2R},
        (3, 0): {2: _B2R},
        (1, 2): {2: _neg(_RA)},
        (2, 1): {2: _RA},
        (1, 3): {3: _neg(_RA)},
        (3, 1): {3: _RA},
        (2, 3): {0: _neg(_B2R), 3: "-cot(theta)/R(r)"},
        (3, 2): {0: _B2R, 3: "cot(theta)/R(r)"},
    },
    "Omega": {
        (0, 1): {(0, 1): _neg(_BPP), (2, 3): _X},
        (0, 2): {(1, 3): _half(_X), (0, 2): _neg(_BR)},
        (0, 3): {(1, 2): _half(_NX), (0, 3): _neg(_BR)},
        (1, 2): {(1, 2): _neg(_RPP), (0, 3): _neg(_half(_NX))},
        (1, 3): {(1, 3): _neg(_RPP), (0, 2): _neg(_half(_NX))},
        (2, 3): {(0, 1): _NX, (2, 3): "1/R(r)^2 - R'(r)^2/(A(r)^2*R(r)^2) + (3/4)*B(r)^2/R(r)^4"},
    },
    "riemann": [
        (1, (0, 1, 0, 1), _neg(_BPP)),
        (1, (0, 1, 2, 3), _X),
        (2, (0, 2, 1, 3), _X),
        (-2, (0, 3, 1, 2), _X),
        (1, (0, 2, 0, 2), _neg(_BR)),
        (1, (0, 3, 0, 3), _neg(_BR)),
        (1, (1, 2, 1, 2), _neg(_RPP)),
        (1, (1, 3, 1, 3), _neg(_RPP)),
        (1, (2, 3, 2, 3), "1/R(r)^2 - R'(r)^2/(A(r)^2*R(r)^2) + (3/4)*B(r)^2/R(r)^4"),
    ],
}

# linear combinations of Riemann components: {component: coefficient}
RICCI = {
    (0, 0): {(0, 1, 0, 1): -1, (0, 2, 0, 2): -2},
    (1, 1): {(0, 1, 0, 1): 1, (1, 2, 1, 2): 2},
    (2, 2): {(0, 2, 0, 2): 1, (1, 2, 1, 2): 1, (2, 3, 2, 3): 1},
    (3, 3): {(0, 2, 0, 2): 1, (1, 2, 1, 2): 1, (2, 3, 2, 3): 1},
}
SCALAR = {(0, 1, 0, 1): 2, (1, 2, 1, 2): 4, (0, 2, 0, 2): 4, (2, 3, 2, 3): 2}
EINSTEIN = {
    (0, 0): {(1, 2, 1, 2): 2, (2, 3, 2, 3): 1},
    (1, 1): {(0, 2, 0, 2): -2, (2, 3, 2, 3): -1},
    (2, 2): {(0, 2, 0, 2): -1, (1, 2, 1, 2): -1, (0, 1, 0, 1): -1},
    (3, 3): {(0, 2, 0, 2): -1, (1, 2, 1, 2): -1, (0, 1, 0, 1): -1},
}
CASES = {1: SPACELIKE, -1: TIMELIKE}

# reduction displays (gauge R = r)
G00_SPACELIKE_GAUGED = "2*B'(r)/(A(r)^2*B(r)*r) - B(r)^2/(4*r^4) + 1/r^2 + 1/(A(r)^2*r^2)"
G11_TIMELIKE_GAUGED = "2*B'(r)/(A(r)^2*B(r)*r) - B(r)^2/(4*r^4) - 1/r^2 + 1/(A(r)^2*r^2)"
D_ODE_LHS = "r^3*(A(r)*B'(r) + A'(r)*B(r)) + (1/4)*A(r)^3*B(r)^3"
D_SQUARED = "4*r^2*c0/(r^2 - c0)"
CONST_R_G00 = "B^2/(2*R0^4) + 1/R0^2 - (3/4)*B^2/R0^4"
CONST_R_G11 = "-1/R0^2 + (3/4)*B^2/R0^4"
CONST_R_B2 = "4*R0^2"
CONST_R_G11_VALUE = "2/R0^2"
# F'' polynomial forms after multiplying by 4 c0 r^4 (F = B^2, F_1 = F')
F_CLEARED = {
    1: "r*(r^2 - c0)*F'(r) + (r^2 - 2*c0)*F(r) + 4*r^2*c0",
    -1: "r*(r^2 - c0)*F'(r) + (r^2 - 2*c0)*F(r) - 4*r^2*c0",
}
F_ODE = {
    1: "F'(r) + (r^2 - 2*c0)/(r*(r^2 - c0))*F(r) + 4*r*c0/(r^2 - c0)",
    -1: "F'(r) + (r^2 - 2*c0)/(r*(r^2 - c0))*F(r) - 4*r*c0/(r^2 - c0)",
}
F_HOMOGENEOUS = "cp*sqrt(r^2 - c0)/r^2"
F_SOLUTION = {
    1: "(-4*c0*r^2 + c1*sqrt(r^2 - c0) + 8*c0^2)/r^2",
    -1: "(4*c0*r^2 + c1*sqrt(r^2 - c0) - 8*c0^2)/r^2",
}
F_INTEGRAL_U = "4*c0*u - 4*c0^2/u"
F_INTEGRAND_U = "4*c0 + 4*c0^2/u^2"
F_INTEGRAND_R = "4*r^3*c0/(r^2 - c0)^(3/2)"
B2_RPRIME = {
    1: "-4*c0*(rp^2 - c1/(4*c0)*rp - c0)/(rp^2 + c0)",
    -1: "4*c0*(rp^2 + c1/(4*c0)*rp - c0)/(rp^2 + c0)",
}
# the dr'^2 coefficient as printed (with an unprimed r) and as intended
DRP_COEFF_PRINTED = "(rp^2 + l^2)/(rp^2 - 2*m*r - l^2)"
DRP_COEFF = "(rp^2 + l^2)/(rp^2 - 2*m*rp - l^2)"
PSI_COEFF = "-4*l^2*(rp^2 - 2*m*rp - l^2)/(rp^2 + l^2)"

KRETSCHMANN_DISPLAY = (
    "(3/4)*c0^(-2)*r^(-12)*(2048*c0^6 - 3072*c0^5*r^2 - 18*c0*c1^2*r^4 + c1^2*r^6"
    " + 128*c0^4*(9*r^4 + 4*c1*sqrt(r^2 - c0))"
    " + 48*c0^2*c1*r^2*(c1 + 2*r^2*sqrt(r^2 - c0))"
    " - 32*c0^3*(c1^2 + 2*r^6 + 16*c1*r^2*sqrt(r^2 - c0)))"
)
# first Kretschmann line as printed: {component: coefficient} of squared components
KRETSCHMANN_PRINTED_SUM = [
    (4, (0, 1, 0, 1)),
    (-8, (0, 1, 2, 3)),
    (-8, (0, 2, 3, 1)),
    (-8, (0, 2, 3, 1)),
    (4, (0, 2, 0, 2)),
    (4, (0, 3, 0, 3)),
    (4, (1, 2, 1, 2)),
    (4, (1, 3, 1, 3)),
    (4, (2, 3, 2, 3)),
]
KRETSCHMANN_HORIZON = "48*(l^2 - m^2)/l^6"

# Misner metric charges
DK_FLAT_FRAME = {(0, 1): "-f1", (2, 3): "-2*l*f/(r^2 + l^2)"}
STAR_DK_FRAME = {(2, 3): "f1", (0, 1): "-2*l*f/(r^2 + l^2)"}
KOMAR_LIMIT = "-m"
DUAL_LIMIT = "l"


def claim(check_id: str, anchor: str, engine: Expr, shown: Expr | str, *, strict: bool = False) -> Check:
    """Compare an engine value with a displayed one.

    A difference is reported as ``mismatch-reported`` (or ``fail`` when
    ``strict``) with the canonical difference as residual.
    """
    if isinstance(shown, str):
        shown = parse(shown)
    d = engine - shown
    if d.iszero:
        return Check(check_id, anchor, PASS, "0")
    return Check(check_id, anchor, "fail" if strict else MISMATCH, str(d))
