"""Compare the engine's formal-case curvature with the displayed formulas."""

from __future__ import annotations

from . import reference as ref
from .catalog import generalized_family
from .curvature import CurvatureBundle, cartan, christoffel_curvature, pipeline_equivalence, bundle_checks
from .excalc import ext_d, to_frame
from .report import MISMATCH, PASS, Check, Report
from .symcore import Expr, const, parse

__all__ = ["formal_bundle", "display_report", "mismatch_ledger"]

ANCHOR_DTHETA = "we compute the exterior derivatives"
ANCHOR_OMEGA = "the unique solution is given by"
ANCHOR_RIEMANN = "the non-vanishing components of the Riemann tensor"
ANCHOR_EINSTEIN = "the Einstein tensor"

_BUNDLES: dict[int, CurvatureBundle] = {}


def formal_bundle(eps: int) -> CurvatureBundle:
    """Cartan bundle of the case tetrad with formal A, B, R."""
    if eps not in _BUNDLES:
        _BUNDLES[eps] = cartan(generalized_family(eps).tetrad)
    return _BUNDLES[eps]


def _name(eps: int) -> str:
    return "spacelike" if eps == 1 else "timelike"


def _compare(cid: str, anchor: str, engine: dict, shown: dict) -> Check:
    diffs = []
    for key in sorted(set(engine) | set(shown)):
        e = engine.get(key, const(0))
        s = parse(shown[key]) if key in shown else const(0)
        d = e - s
        if not d.iszero:
            diffs.append(f"{key}: engine - shown = {d}")
    return Check(cid, anchor, PASS if not diffs else MISMATCH, "; ".join(diffs) or "0")


def display_report(eps: int) -> Report:
    b = formal_bundle(eps)
    t = b.tetrad
    shown = ref.CASES[eps]
    name = _name(eps)
    rep = Report(f"curvature-{name}")
    for a in range(4):
        dth = to_frame(ext_d(t.forms[a]), t)
        rep.add(_compare(f"{name}.dtheta{a}", ANCHOR_DTHETA, dict(dth.coeffs), shown["dtheta"][a]))
    for a in range(4):
        for c in range(4):
            if a == c:
                continue
            eng = {k[0]: v for k, v in b.omega[a][c].coeffs.items()}
            rep.add(_compare(f"{name}.omega{a}{c}", ANCHOR_OMEGA, eng, shown["omega"].get((a, c), {})))
    for a in range(4):
        for c in range(a + 1, 4):
            rep.add(_compare(f"{name}.Omega{a}{c}", ANCHOR_RIEMANN, dict(b.Omega[a][c].coeffs), shown["Omega"].get((a, c), {})))
    for mult, comp, value in shown["riemann"]:
        d = mult * b.R(*comp) - parse(value)
        tag = "".join(map(str, comp))
        rep.add(Check(f"{name}.R{tag}", ANCHOR_RIEMANN, PASS if d.iszero else MISMATCH, str(d)))
    # every stored component is one of the listed ones up to the symmetries
    listed = {comp for _, comp, _ in shown["riemann"]}
    extra = []
    for (a, bb, c, d), v in b.riemann.items():
        if v.iszero:
            continue
        keys = {(a, bb, c, d), (c, d, a, bb), (bb, a, c, d), (a, bb, d, c), (c, d, bb, a), (d, c, a, bb), (bb, a, d, c), (d, c, bb, a)}
        if not keys & listed:
            extra.append(f"R^{a}_{bb}{c}{d}")
    rep.add(Check(f"{name}.R-complete", ANCHOR_RIEMANN, PASS if not extra else MISMATCH, ", ".join(extra) or "0"))

    def combo(terms) -> Expr:
        return sum((coef * b.R(*comp) for comp, coef in terms.items()), const(0))

    ric = b.ricci
    for (i, j), terms in ref.RICCI.items():
        d = ric[i][j] - combo(terms)
        rep.add(Check(f"{name}.Ric{i}{j}", ANCHOR_EINSTEIN, PASS if d.iszero else MISMATCH, str(d)))
    d = b.scalar - combo(ref.SCALAR)
    rep.add(Check(f"{name}.scalar", ANCHOR_EINSTEIN, PASS if d.iszero else MISMATCH, str(d)))
    G = b.einstein
    for (i, j), terms in ref.EINSTEIN.items():
        d = G[i][j] - combo(terms)
        rep.add(Check(f"{name}.G{i}{j}", ANCHOR_EINSTEIN, PASS if d.iszero else MISMATCH, str(d)))
    off = [f"G{i}{j} = {G[i][j]}" for i in range(4) for j in range(i + 1, 4) if not G[i][j].iszero]
    rep.add(Check(f"{name}.G-offdiagonal", ANCHOR_EINSTEIN, PASS if not off else MISMATCH, "; ".join(off) or "0"))
    rep.extend(bundle_checks(b, name))
    coord = christoffel_curvature(generalized_family(eps).metric)
    rep.extend(pipeline_equivalence(b, coord, name))
    return rep


def mismatch_ledger(reports) -> list[dict]:
    """Every mismatch-reported check across the given reports."""
    out = []
    for rep in reports:
        for c in rep.checks:
            if c.status == MISMATCH:
                out.append({"suite": rep.suite, "id": c.id, "paper_anchor": c.paper_anchor, "residual": c.residual})
    return out
