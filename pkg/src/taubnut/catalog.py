"""Concrete geometries: Taub-NUT, its horizon-crossing charts and the generalized family."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from pathlib import Path
from typing import Mapping, Sequence

import jsonschema

from .excalc import (
    EULER,
    Chart,
    Form,
    SymTensor2,
    Tetrad,
    VecField,
    dual_structure_check,
    inverse,
    lie_metric,
    lie_vec,
)
from .report import FAIL, PASS, Check, Report
from .symcore import (
    Expr,
    SymcoreError,
    as_expr,
    const,
    coordinate,
    cos,
    eval_numeric,
    function,
    sin,
    sqrt,
)
from .symcore.parser import parse

__all__ = [
    "ParameterDomain",
    "SpacetimeModel",
    "InvariantFrame",
    "ORBIT",
    "sigma_forms",
    "f_of",
    "horizons",
    "taub_nut",
    "generalized_family",
    "extension",
    "killing_fields",
    "verify_killing",
    "canonical_orbit_metric",
    "orbit_type",
    "pullback_linear",
    "extension_pullback_check",
    "load_model",
    "MODEL_SCHEMA",
]

ORBIT = Chart(("psi", "theta", "phi"))


class ParameterDomain(SymcoreError, ValueError):
    pass


def _q(v) -> Expr:
    if isinstance(v, Expr):
        return v
    if isinstance(v, str):
        return parse(v)
    if isinstance(v, float):
        return const(Fraction(repr(v)))
    return as_expr(v)


def sigma_forms(chart: Chart = EULER, psi: str | None = None) -> tuple[Form, Form, Form]:
    """Left-invariant one-forms (sigma_x, sigma_y, sigma_z) in Euler angles."""
    psi = psi or next(c for c in chart.coords if c.startswith("psi"))
    p, th = coordinate(psi), coordinate("theta")
    sx = sin(p) * chart.d("theta") - sin(th) * cos(p) * chart.d("phi")
    sy = cos(p) * chart.d("theta") + sin(th) * sin(p) * chart.d("phi")
    sz = chart.d(psi) + cos(th) * chart.d("phi")
    return sx, sy, sz


def f_of(m, l, r="r") -> Expr:
    m, l, r = _q(m), _q(l), _q(r)
    return (r * r - 2 * m * r - l * l) / (r * r + l * l)


def horizons(m, l) -> tuple[Expr, Expr]:
    """(r_+, r_-) = m +- sqrt(m^2 + l^2)."""
    m, l = _q(m), _q(l)
    root = sqrt(m * m + l * l)
    return m + root, m - root


@dataclass
class SpacetimeModel:
    name: str
    chart: Chart
    metric: SymTensor2
    params: dict[str, Expr] = field(default_factory=dict)
    killing: list[VecField] = field(default_factory=list)
    metadata: dict = field(default_factory=dict)
    tetrad_factory: object = field(default=None, repr=False)

    @cached_property
    def tetrad(self) -> Tetrad | None:
        return self.tetrad_factory() if self.tetrad_factory else None

    def determinant(self) -> Expr:
        return self.metric.det()


def _check_params(l: Expr, n: int) -> None:
    if l.iszero:
        raise ParameterDomain("the NUT parameter l must be non-zero")
    if not isinstance(n, int) or n < 1:
        raise ParameterDomain(f"lens index n must be a positive integer, got {n!r}")


def _round_part(chart: Chart, R2: Expr) -> SymTensor2:
    th = coordinate("theta")
    return (SymTensor2.sym(chart.d("theta")) + SymTensor2.sym(chart.d("phi")) * (sin(th) ** 2)) * R2


def _meta(n: int, **extra) -> dict:
    return {"psi_period": f"4*pi/{n}", "n": n, "first_chern_class": n, **extra}


def taub_nut(m="m", l="l", n: int = 1) -> SpacetimeModel:
    """The Taub-NUT metric in Euler coordinates (r, psi, theta, phi)."""
    m, l = _q(m), _q(l)
    _check_params(l, n)
    r = coordinate("r")
    f = f_of(m, l)
    _, _, sz = sigma_forms()
    g = SymTensor2.sym(sz) * (-4 * l * l * f) + SymTensor2.sym(EULER.d("r")) * (1 / f) + _round_part(EULER, r * r + l * l)

    def tetrad():
        # NUT-region coframe (f > 0)
        th = coordinate("theta")
        rf = sqrt(f)
        rr = sqrt(r * r + l * l)
        return Tetrad(
            [sz * (2 * l * rf), EULER.d("r") / rf, EULER.d("theta") * rr, EULER.d("phi") * (rr * sin(th))],
            (-1, 1, 1, 1),
            "nut-region",
        )

    return SpacetimeModel(
        "taub-nut",
        EULER,
        g,
        {"m": m, "l": l},
        killing_fields(EULER),
        _meta(n, branch="euler"),
        tetrad,
    )


def generalized_family(eps: int, A=None, B=None, R=None) -> SpacetimeModel:
    """-eps A^2 dr^2 + eps B^2 sigma_z^2 + R^2 (dtheta^2 + sin^2 dphi^2) with its case tetrad."""
    if eps not in (1, -1):
        raise ParameterDomain("eps must be +1 or -1")
    A = function("A") if A is None else _q(A)
    B = function("B") if B is None else _q(B)
    R = function("R") if R is None else _q(R)
    th = coordinate("theta")
    _, _, sz = sigma_forms()
    dr = EULER.d("r")
    g = SymTensor2.sym(dr) * (-eps * A * A) + SymTensor2.sym(sz) * (eps * B * B) + _round_part(EULER, R * R)
    rest = [EULER.d("theta") * R, EULER.d("phi") * (R * sin(th))]
    if eps == 1:
        forms = [dr * A, sz * B] + rest
    else:
        forms = [sz * B, dr * A] + rest

    def tetrad():
        return Tetrad(forms, (-1, 1, 1, 1), "spacelike" if eps == 1 else "timelike")

    return SpacetimeModel(
        "generalized-spacelike" if eps == 1 else "generalized-timelike",
        EULER,
        g,
        {"eps": const(eps)},
        killing_fields(EULER),
        {"eps": eps, "orbits": "spacelike" if eps == 1 else "timelike"},
        tetrad,
    )


def extension(branch: str, m="m", l="l", n: int = 1) -> SpacetimeModel:
    """Horizon-regular chart with psi' (branch "psi_p") or psi'' ("psi_pp")."""
    if branch not in ("psi_p", "psi_pp"):
        raise ParameterDomain(f"unknown extension branch {branch!r}")
    m, l = _q(m), _q(l)
    _check_params(l, n)
    chart = Chart(("r", branch, "theta", "phi"))
    r = coordinate("r")
    f = f_of(m, l)
    _, _, sz = sigma_forms(chart)
    sign = 1 if branch == "psi_p" else -1
    g = (
        SymTensor2.sym(sz) * (-4 * l * l * f)
        + SymTensor2.sym(sz, chart.d("r")) * (sign * 4 * l)
        + _round_part(chart, r * r + l * l)
    )
    return SpacetimeModel(
        f"taub-nut-{branch}",
        chart,
        g,
        {"m": m, "l": l},
        killing_fields(chart),
        _meta(n, branch=branch),
    )


def killing_fields(chart: Chart = EULER) -> list[VecField]:
    """xi_0 = d_psi and the right-invariant xi_1, xi_2, xi_3."""
    psi = next(c for c in chart.coords if c.startswith("psi"))
    th, ph = coordinate("theta"), coordinate("phi")
    cot = cos(th) / sin(th)
    csc = 1 / sin(th)

    def vf(**kw):
        return VecField(chart, [kw.get(c, 0) for c in chart.coords])

    return [
        vf(**{psi: 1}),
        vf(theta=-sin(ph), phi=-cot * cos(ph), **{psi: csc * cos(ph)}),
        vf(theta=cos(ph), phi=-cot * sin(ph), **{psi: csc * sin(ph)}),
        vf(phi=1),
    ]


def verify_killing(model: SpacetimeModel, fields: Sequence[VecField] | None = None) -> Report:
    """Killing residuals of xi_0..xi_3 plus the two commutator families."""
    fields = list(fields if fields is not None else model.killing)
    rep = Report("killing")
    for i, xi in enumerate(fields):
        res = lie_metric(xi, model.metric)
        rep.add(Check(f"killing-xi{i}", "four-dimensional isometry group", PASS if res.iszero else FAIL, str(res)))
    if len(fields) == 4:
        worst = None
        for i, j, k in ((1, 2, 3), (2, 3, 1), (3, 1, 2)):
            res = lie_vec(fields[i], fields[j]) + fields[k]
            if not res.iszero:
                worst = res
        rep.add(Check("commutators-ij", "satisfy the commutation relations", PASS if worst is None else FAIL, "0" if worst is None else str(worst)))
        worst = None
        for i in (1, 2, 3):
            res = lie_vec(fields[0], fields[i])
            if not res.iszero:
                worst = res
        rep.add(Check("commutators-0i", "satisfy the commutation relations", PASS if worst is None else FAIL, "0" if worst is None else str(worst)))
    return rep


def canonical_orbit_metric(eps: int, A=None, B=None) -> SymTensor2:
    """eps A^2 sigma_z^2 + B^2 (sigma_x^2 + sigma_y^2) on the orbit chart (psi, theta, phi)."""
    A = function("A") if A is None else _q(A)
    B = function("B") if B is None else _q(B)
    sx, sy, sz = sigma_forms(ORBIT)
    return SymTensor2.sym(sz) * (eps * A * A) + (SymTensor2.sym(sx) + SymTensor2.sym(sy)) * (B * B)


class InvariantFrame:
    """sigma_z, sigma_x, sigma_y with their dual frame e1', e2', e3'."""

    # [e_i, e_j] = c^k_ij e_k, zero-based (k, i, j)
    CONSTANTS = {(0, 1, 2): 1, (1, 2, 0): 1, (2, 0, 1): 1}

    def __init__(self, chart: Chart = ORBIT):
        sx, sy, sz = sigma_forms(chart)
        self.chart = chart
        self.coframe = (sz, sx, sy)
        mat = [[w[i] for i in range(chart.dim)] for w in self.coframe]
        inv = inverse(mat)
        self.fields = tuple(VecField(chart, [inv[mu][a] for mu in range(chart.dim)]) for a in range(3))

    def duality(self) -> Check:
        worst = None
        for a, w in enumerate(self.coframe):
            for b, e in enumerate(self.fields):
                v = sum((w[i] * e[i] for i in range(self.chart.dim)), const(0)) - (1 if a == b else 0)
                if not v.iszero:
                    worst = v
        return Check("frame-duality", "denoting the dual one-forms of this basis", PASS if worst is None else FAIL, "0" if worst is None else str(worst))

    def structure_report(self, constants: Mapping | None = None) -> Report:
        rep = dual_structure_check(self.coframe, constants or self.CONSTANTS, self.fields)
        rep.add(self.duality())
        return rep


def orbit_type(model: SpacetimeModel, r) -> str:
    """'taub' (f < 0), 'nut' (f > 0) or 'horizon' (f = 0) at radius r."""
    f = f_of(model.params["m"], model.params["l"])
    from .symcore import substitute

    v = substitute(f, {"r": _q(r)})
    if v.iszero:
        return "horizon"
    val = eval_numeric(v, {})
    if val > 0:
        return "nut"
    if val < 0:
        return "taub"
    raise SymcoreError(f"sign of f undecided at r = {r}")


def pullback_linear(g: SymTensor2, jac: Sequence[Sequence], target: Chart) -> SymTensor2:
    """Rewrite g given dx_old^i = jac[i][j] dx_new^j (only differentials are substituted)."""
    n = target.dim
    J = [[as_expr(x) for x in row] for row in jac]
    out = [[const(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            gij = g.m[i][j]
            if gij.iszero:
                continue
            for a in range(n):
                if J[i][a].iszero:
                    continue
                for b in range(n):
                    if J[j][b].iszero:
                        continue
                    out[a][b] = out[a][b] + gij * J[i][a] * J[j][b]
    return SymTensor2(target, out)


def extension_pullback_check(branch: str, m="m", l="l") -> Check:
    """Substituting dpsi' = dpsi +- dr/(2 l f) in the extension gives the Euler-chart metric."""
    ext = extension(branch, m, l)
    base = taub_nut(m, l)
    f = f_of(ext.params["m"], ext.params["l"])
    sign = 1 if branch == "psi_p" else -1
    jac = [
        [1, 0, 0, 0],
        [sign / (2 * ext.params["l"] * f), 1, 0, 0],
        [0, 0, 1, 0],
        [0, 0, 0, 1],
    ]
    res = pullback_linear(ext.metric, jac, EULER) - base.metric
    return Check(f"pullback-{branch}", "A possible coordinate transformation removing", PASS if res.iszero else FAIL, str(res))


MODEL_SCHEMA = {
    "type": "object",
    "required": ["name", "params"],
    "additionalProperties": False,
    "properties": {
        "name": {"type": "string"},
        "branch": {"enum": ["euler", "psi_p", "psi_pp"]},
        "params": {
            "type": "object",
            "additionalProperties": False,
            "properties": {
                "m": {"type": ["string", "integer"]},
                "l": {"type": ["string", "integer"]},
                "n": {"type": "integer", "minimum": 1},
                "eps": {"enum": [-1, 1]},
            },
        },
    },
}


def load_model(source: str | Path | Mapping) -> SpacetimeModel:
    """Build a model from a JSON definition {name, params: {m, l, n, eps}, branch}."""
    if isinstance(source, Mapping):
        data = dict(source)
    else:
        text = Path(source).read_text() if Path(str(source)).exists() else str(source)
        data = json.loads(text)
    jsonschema.validate(data, MODEL_SCHEMA)
    p = data["params"]
    m, l, n = str(p.get("m", "m")), str(p.get("l", "l")), p.get("n", 1)
    branch = data.get("branch", "euler")
    model = taub_nut(m, l, n) if branch == "euler" else extension(branch, m, l, n)
    model.name = data["name"]
    if "eps" in p:
        model.metadata["eps"] = p["eps"]
    return model
