"""Komar mass and dual charge of the Taub-NUT metric."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from . import reference as ref
from .catalog import SpacetimeModel, f_of, sigma_forms
from .excalc import Form, VecField, ext_d, hodge_frame, lie_metric, to_coordinate, to_frame
from .report import FAIL, MISMATCH, PASS, Check, Report
from .symcore import (
    Expr,
    NotRepresentable,
    SymcoreError,
    as_expr,
    const,
    coordinate,
    diff,
    eval_numeric,
    sin,
    sqrt,
    substitute,
)
from .symcore.parser import parse

__all__ = [
    "ChargeResult",
    "Divergent",
    "NotKilling",
    "NotTimelikeRegion",
    "normalised_killing",
    "komar_mass",
    "dual_charge",
    "limit_at_infinity",
    "convergence_table",
    "charge_report",
]

ANCHOR_KOMAR = "using the formula for the Komar mass"
ANCHOR_DUAL = "the same line of argument"
ANCHOR_INF = "normalised at infinity"
RADII = (10**3, 10**4, 10**5, 10**6)


class Divergent(SymcoreError):
    pass


class NotKilling(SymcoreError, ValueError):
    pass


class NotTimelikeRegion(SymcoreError, ValueError):
    pass


@dataclass
class ChargeResult:
    kind: str
    coefficient: Expr  # of sin(theta) dtheta^dphi in the restricted 2-form
    value: Expr  # finite-radius value
    limit: Expr
    table: list[tuple[int, str, str]] = field(default_factory=list)
    order: float | None = None
    restricted: Form | None = None
    form: Form | None = None
    metadata: dict = field(default_factory=dict)


# limits ----------------------------------------------------------------------------


def _series_sqrt(P: Expr, K: int) -> Expr:
    """sqrt(1 + P) truncated after P^K."""
    out = const(0)
    term = const(1)
    coef = Fraction(1)
    for j in range(K + 1):
        out = out + coef * term
        coef = coef * (Fraction(1, 2) - j) / (j + 1)
        term = term * P
    return out


def _asymptotic(e: Expr, var: str, K: int) -> Expr:
    """e with var = 1/t^2 and each radical in var replaced by its series in t."""
    t = coordinate("_tinf")
    bind: dict[str, Expr] = {var: 1 / (t * t)}
    for s in e.free_symbols():
        if s.kind != "radical" or not s.radicand.depends_on(var):
            continue
        R = s.radicand
        if any(g.kind == "radical" and g.radicand.depends_on(var) for g in R.free_symbols()):
            raise NotRepresentable(f"nested radical in {var}: {s}")
        try:
            co = R.coefficients(var)
        except ValueError as exc:
            raise NotRepresentable(f"radicand {R} is not polynomial in {var}") from exc
        d = int(max(co))
        c = co[d]
        if any(c.depends_on(g.key) for g in c.free_symbols() if g.key == var):
            raise NotRepresentable(str(R))
        lead = substitute(R, {var: 1 / (t * t)}) * t ** (2 * d)
        P = (lead - c) / c
        bind[s.key] = sqrt(c) * _series_sqrt(P, K) / t**d
    return substitute(e, bind)


def _valuation(p: Expr, t: Expr) -> tuple[int, Expr]:
    co = p.coefficients(t)
    k = min(k for k, v in co.items() if not v.iszero)
    return k, co[k]


def limit_at_infinity(e, var: str = "r", max_order: int = 16) -> Expr:
    """Limit as var -> +infinity of an expression rational in var and in square roots of polynomials in var.

    Radicals are expanded as sqrt(c) var^(d/2) sqrt(1 + ...) with the binomial
    series; the truncation order is raised until two orders agree.
    """
    e = as_expr(e)
    if not e.depends_on(var):
        return e
    t = coordinate("_tinf")
    prev = None
    K = 2
    while K <= max_order:
        a = _asymptotic(e, var, K)
        vn, cn = _valuation(a.numerator, t)
        vd, cd = _valuation(a.denominator, t)
        cur = (vn - vd, cn / cd)
        if prev is not None and prev[0] == cur[0] and (prev[1] - cur[1]).iszero:
            break
        prev = cur
        K *= 2
    order, lead = cur
    if order < 0:
        raise Divergent(f"{e} grows like {var}^{-order / 2} as {var} -> infinity")
    if order > 0:
        return const(0)
    if lead.depends_on("_tinf"):
        raise NotRepresentable(f"could not isolate the leading term of {e}")
    return lead


def convergence_table(e: Expr, limit: Expr, point: dict, var: str = "r", radii=RADII, bits: int = 128):
    """Interval values at large radii, |value - limit| and the fitted order p in |err| ~ var^-p."""
    rows = []
    errs = []
    L = eval_numeric(limit, point, bits)
    for R in radii:
        v = eval_numeric(e, {**point, var: R}, bits)
        err = abs(v - L)
        errs.append(float(err.mid()))
        rows.append((R, v.mid().str(20, radius=False), err.mid().str(6, radius=False)))
    orders = [
        math.log10(errs[i] / errs[i + 1]) / math.log10(radii[i + 1] / radii[i])
        for i in range(len(errs) - 1)
        if errs[i] > 0 and errs[i + 1] > 0
    ]
    order = sum(orders) / len(orders) if orders else None
    return rows, order


# charges ---------------------------------------------------------------------------


def normalised_killing(model: SpacetimeModel) -> VecField:
    """k = -(1/2l) d/dpsi, unit timelike at infinity."""
    l = model.params["l"]
    comps = [const(0)] * model.chart.dim
    comps[model.chart.index("psi")] = -1 / (2 * l)
    return VecField(model.chart, comps)


def _flat(model: SpacetimeModel, k: VecField) -> Form:
    g = model.metric
    n = model.chart.dim
    return Form.one_form(model.chart, [sum((g.m[i][j] * k[j] for j in range(n)), const(0)) for i in range(n)])


def _restrict(a: Form, chart) -> Form:
    """Drop every term containing dr."""
    ir = chart.index("r")
    return Form(a.chart, a.degree, {I: c for I, c in a.coeffs.items() if ir not in I}, a.basis)


def _prepare(model: SpacetimeModel, k: VecField | None):
    if model.name != "taub-nut" or model.tetrad is None:
        raise NotTimelikeRegion("charges are defined for the NUT-region Taub-NUT model")
    k = normalised_killing(model) if k is None else k
    if not lie_metric(k, model.metric).iszero:
        raise NotKilling(f"{k} is not a Killing field of {model.name}")
    norm = sum((model.metric.m[i][j] * k[i] * k[j] for i in range(4) for j in range(4)), const(0))
    lim = limit_at_infinity(norm)
    if lim.is_rational() and lim.to_fraction() >= 0:
        raise NotTimelikeRegion(f"k has norm {lim} at infinity")
    return k, _flat(model, k)


def _charge(kind: str, model: SpacetimeModel, two_form: Form, numeric_point=None) -> ChargeResult:
    chart = model.chart
    th = coordinate("theta")
    res = _restrict(two_form, chart)
    it, ip = chart.index("theta"), chart.index("phi")
    coef = res[(it, ip)] / sin(th)
    value = -coef / 2  # -(1/8 pi) * coef * 4 pi
    lim = limit_at_infinity(value)
    out = ChargeResult(kind, coef, value, lim, restricted=res, form=two_form)
    out.metadata = {"normalisation": "-1/(8 pi)", "killing": "-(1/(2 l)) d/dpsi", "base_integral": "4 pi"}
    if numeric_point is not None:
        out.table, out.order = convergence_table(value, lim, numeric_point)
    return out


def _numeric_point(model: SpacetimeModel):
    p = {}
    for name, v in model.params.items():
        if not v.is_rational():
            return None
        p[name] = v.to_fraction()
    return p


def komar_mass(model: SpacetimeModel, k: VecField | None = None) -> ChargeResult:
    k, kflat = _prepare(model, k)
    dk = to_frame(ext_d(kflat), model.tetrad)
    star = to_coordinate(hodge_frame(dk, model.tetrad.eta), model.tetrad)
    return _charge("komar", model, star, _numeric_point(model))


def dual_charge(model: SpacetimeModel, k: VecField | None = None) -> ChargeResult:
    k, kflat = _prepare(model, k)
    return _charge("dual", model, ext_d(kflat), _numeric_point(model))


# report ----------------------------------------------------------------------------


def _status(ok: bool) -> str:
    return PASS if ok else FAIL


def charge_report(model: SpacetimeModel) -> Report:
    """Frame displays, horizontality, closedness, symbolic limits and the numeric tables."""
    rep = Report("charges")
    m, l = model.params["m"], model.params["l"]
    r = coordinate("r")
    f = f_of(m, l)
    fp = diff(f, "r")
    k, kflat = _prepare(model, None)
    rep.add(
        Check(
            "charges.k-flat",
            ANCHOR_KOMAR,
            _status((kflat - sigma_forms()[2] * (2 * l * f)).iszero),
            str(kflat),
        )
    )
    dk_frame = to_frame(ext_d(kflat), model.tetrad)
    star_frame = hodge_frame(dk_frame, model.tetrad.eta)
    bind = {"f": f, "f1": fp, "l": l, "m": m}
    for cid, form, shown in (
        ("charges.dk-frame", dk_frame, ref.DK_FLAT_FRAME),
        ("charges.star-dk-frame", star_frame, ref.STAR_DK_FRAME),
    ):
        diffs = []
        keys = set(form.coeffs) | set(shown)
        for I in sorted(keys):
            d = form[I] - (substitute(parse(shown[I]), bind) if I in shown else const(0))
            if not d.iszero:
                diffs.append(f"{I}: {d}")
        rep.add(Check(cid, ANCHOR_KOMAR, PASS if not diffs else MISMATCH, "; ".join(diffs) or "0"))
    komar = komar_mass(model)
    dual = dual_charge(model)
    _, _, sz = sigma_forms()
    dsz = ext_d(sz)
    for res, expected_coef, cid in (
        (komar, -fp * (r * r + l * l), "charges.komar-horizontal"),
        (dual, 2 * l * f, "charges.dual-horizontal"),
    ):
        d = res.restricted - dsz * expected_coef
        rep.add(Check(cid, "a multiple of", _status(d.iszero), "0" if d.iszero else str(d)))
    closed = ext_d(komar.form)
    rep.add(Check("charges.star-dk-closed", "a multiple of", _status(closed.iszero), "0" if closed.iszero else str(closed)))
    rep.add(
        Check(
            "charges.komar-value",
            ANCHOR_KOMAR,
            _status((komar.value + fp * (r * r + l * l) / 2).iszero),
            str(komar.value),
        )
    )
    rep.add(Check("charges.dual-value", ANCHOR_DUAL, _status((dual.value - l * f).iszero), str(dual.value)))
    rep.add(Check("charges.f-limit", ANCHOR_INF, _status((limit_at_infinity(f) - 1).iszero), str(limit_at_infinity(f))))
    rep.add(Check("charges.komar-limit", ANCHOR_KOMAR, _status((komar.limit + m).iszero), str(komar.limit)))
    rep.add(Check("charges.dual-limit", ANCHOR_DUAL, _status((dual.limit - l).iszero), str(dual.limit)))
    for res, cid in ((komar, "charges.komar-convergence"), (dual, "charges.dual-convergence")):
        if not res.table:
            continue
        last = Fraction(res.table[RADII.index(10**5)][2])
        ok = last < Fraction(1, 10**4) and res.order is not None and res.order > 0.5
        rep.add(Check(cid, ANCHOR_INF, _status(ok), f"|value - limit| at r=1e5: {res.table[2][2]}; order {res.order:.3f}"))
    return rep
