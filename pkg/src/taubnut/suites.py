"""Named verification suites assembled from the module checks."""

from __future__ import annotations

import random
import time
from fractions import Fraction
from typing import Callable, Iterable

import flint

from . import catalog, charges, crossref, reduction
from .catalog import EULER, InvariantFrame, extension, extension_pullback_check, sigma_forms, taub_nut, verify_killing
from .curvature import cartan, christoffel_curvature, numeric_einstein, pipeline_equivalence
from .excalc import Form, VecField, ext_d, hodge_frame, interior, lie_form
from .report import FAIL, PASS, Check, Report
from .symcore import (
    Expr,
    SymcoreError,
    as_expr,
    const,
    coordinate,
    cos,
    diff,
    eval_numeric,
    is_zero,
    parameter,
    parse,
    sin,
    sqrt,
    substitute,
)

__all__ = ["SUITES", "UnknownSuite", "BadParams", "Params", "run_suite", "random_expression", "random_form"]


class UnknownSuite(KeyError):
    pass


class BadParams(ValueError):
    pass


class Params:
    """Suite parameters; m, l, c0, c1 are symbolic unless given."""

    def __init__(self, m=None, l=None, c0=None, c1=None, n: int = 1, case: str | None = None, seed: int = 0):
        self.m = self._q(m, "m")
        self.l = self._q(l, "l")
        self.c0 = self._q(c0, "c0")
        self.c1 = self._q(c1, "c1")
        if not isinstance(n, int) or n < 1:
            raise BadParams(f"n must be a positive integer, got {n!r}")
        self.n = n
        if case not in (None, "spacelike", "timelike"):
            raise BadParams(f"case must be spacelike or timelike, got {case!r}")
        self.cases = (1, -1) if case is None else ((1,) if case == "spacelike" else (-1,))
        self.seed = seed
        if self.l.is_rational() and self.l.iszero:
            raise BadParams("l must be non-zero")
        if self.c0.is_rational() and self.c0.to_fraction() <= 0:
            raise BadParams("c0 must be positive")

    @staticmethod
    def _q(v, name) -> Expr:
        if v is None:
            return parameter(name)
        try:
            return as_expr(Fraction(str(v)))
        except (ValueError, ZeroDivisionError) as exc:
            raise BadParams(f"--{name} expects a rational such as 3 or -2/5, got {v!r}") from exc


INVENTED = "invented"

Step = Callable[[Params], Iterable[Check]]


def _ok(cid: str, anchor: str, residual) -> Check:
    if isinstance(residual, (Form, VecField)):
        z = residual.iszero
    else:
        z = as_expr(residual).iszero
    return Check(cid, anchor, PASS if z else FAIL, "0" if z else str(residual))


# random instances ------------------------------------------------------------------

def random_expression(rng: random.Random, depth: int = 2) -> Expr:
    """Small random expression in r, theta, m, l with trig and radicals."""
    r, th, m, l = coordinate("r"), coordinate("theta"), parameter("m"), parameter("l")
    leaves = [r, th, m, l, sin(th), cos(th), const(rng.randint(-3, 3)), const(Fraction(rng.randint(1, 5), rng.randint(1, 5)))]
    if depth <= 0:
        return rng.choice(leaves)
    a = random_expression(rng, depth - 1)
    b = random_expression(rng, depth - 1)
    op = rng.randrange(5)
    if op == 0:
        return a + b
    if op == 1:
        return a - b
    if op == 2:
        return a * b
    if op == 3:
        return a * b + sqrt(r * r + l * l) * rng.randint(1, 3)
    d = b * b + 1 if not (b * b + 1).iszero else const(2)
    return a / d


def random_form(rng: random.Random, degree: int, chart=EULER) -> Form:
    from itertools import combinations

    coeffs = {}
    for I in combinations(range(chart.dim), degree):
        if rng.random() < 0.5:
            coeffs[I] = random_expression(rng, 1)
    return Form(chart, degree, coeffs)


def random_vector(rng: random.Random, chart=EULER) -> VecField:
    return VecField(chart, [random_expression(rng, 1) if rng.random() < 0.6 else 0 for _ in range(chart.dim)])


# algebra ---------------------------------------------------------------------------


def _algebra(p: Params) -> Iterable[Check]:
    rng = random.Random(p.seed)
    th, r, l = coordinate("theta"), coordinate("r"), parameter("l")
    yield _ok("algebra.pythagoras", INVENTED, sin(th) ** 2 + cos(th) ** 2 - 1)
    yield _ok("algebra.rationalize", INVENTED, 1 / (1 + sqrt(2)) - (sqrt(2) - 1))
    yield _ok("algebra.radical-square", INVENTED, sqrt(r * r + l * l) ** 2 - r * r - l * l)
    worst = None
    guard = None
    for i in range(20):
        a, b, c = (random_expression(rng) for _ in range(3))
        for res in (a + b - (b + a), a * b - b * a, (a + b) + c - (a + (b + c)), a * (b + c) - (a * b + a * c), (a * b) * c - a * (b * c)):
            if not res.iszero:
                worst = res
        pr = diff(a * b, "r") - (diff(a, "r") * b + a * diff(b, "r"))
        if not pr.iszero:
            worst = pr
        if parse(str(a)) != a:
            worst = f"parse round trip: {a}"
        # the guarded zero test agrees with the canonical verdict
        if not is_zero(a * b - b * a, seed=p.seed + i):
            guard = a * b
    yield Check("algebra.ring-axioms", INVENTED, PASS if worst is None else FAIL, "0" if worst is None else str(worst))
    yield Check("algebra.zero-guard", INVENTED, PASS if guard is None else FAIL, "0" if guard is None else str(guard))


# forms -----------------------------------------------------------------------------


def _forms(p: Params) -> Iterable[Check]:
    sx, sy, sz = sigma_forms()
    anchor = "satisfy the commutation relations"
    yield _ok("forms.d-sigma-z", anchor, ext_d(sz) + (sx ^ sy))
    yield _ok("forms.d-sigma-x", anchor, ext_d(sx) + (sy ^ sz))
    yield _ok("forms.d-sigma-y", anchor, ext_d(sy) + (sz ^ sx))
    dpsi = VecField.partial(EULER, "psi")
    yield _ok("forms.lie-psi-sigma-z", anchor, lie_form(dpsi, sz))
    yield _ok("forms.lie-psi-sigma-x", anchor, lie_form(dpsi, sx) - sy)
    yield _ok("forms.lie-psi-sigma-y", anchor, lie_form(dpsi, sy) + sx)
    yield from InvariantFrame().structure_report().checks
    rng = random.Random(p.seed)
    dd = magic = star = None
    for _ in range(10):
        k = rng.randrange(0, 3)
        a = random_form(rng, k)
        if not ext_d(ext_d(a)).iszero:
            dd = a
        w = random_form(rng, 1)
        X = random_vector(rng)
        # (L_X w)_mu = X^nu d_nu w_mu + w_nu d_mu X^nu
        comp = [
            sum((X[v] * diff(w[(mu,)], EULER.coords[v]) + w[(v,)] * diff(X[v], EULER.coords[mu]) for v in range(4)), const(0))
            for mu in range(4)
        ]
        if not (lie_form(X, w) - Form.one_form(EULER, comp)).iszero:
            magic = w
        kk = rng.randrange(0, 5)
        b = Form(EULER, kk, dict(random_form(rng, kk).coeffs), "frame")
        sign = (-1) ** (kk * (4 - kk)) * -1
        if not (hodge_frame(hodge_frame(b)) - b * sign).iszero:
            star = b
    yield Check("forms.dd-zero", INVENTED, PASS if dd is None else FAIL, "0" if dd is None else str(dd))
    yield Check("forms.cartan-formula", INVENTED, PASS if magic is None else FAIL, "0" if magic is None else str(magic))
    yield Check("forms.double-star", INVENTED, PASS if star is None else FAIL, "0" if star is None else str(star))
    # interior product of a frame vector with its dual one-form
    e = VecField.partial(EULER, "r")
    yield _ok("forms.interior", INVENTED, interior(e, EULER.d("r")) - Form.scalar(EULER, 1))


# killing ---------------------------------------------------------------------------


def _killing(p: Params) -> Iterable[Check]:
    rep = verify_killing(taub_nut(p.m, p.l, p.n))
    for c in rep.checks:
        c.id = f"killing.{c.id}"
    return rep.checks


# curvature -------------------------------------------------------------------------


def _curvature(eps: int) -> Step:
    def step(p: Params) -> Iterable[Check]:
        return crossref.display_report(eps).checks

    return step


# extensions ------------------------------------------------------------------------

_EXT_ANCHOR = "A possible coordinate transformation removing"


def _vacuum(prefix: str, anchor: str, model) -> Iterable[Check]:
    b = cartan(model.tetrad) if model.tetrad is not None else None
    coord = christoffel_curvature(model.metric)
    G = coord.einstein
    bad = [f"G[{i}][{j}] = {G[i][j]}" for i in range(4) for j in range(i, 4) if not G[i][j].iszero]
    yield Check(f"{prefix}.einstein-christoffel", anchor, PASS if not bad else FAIL, "; ".join(bad) or "0")
    if b is not None:
        Gc = b.einstein
        bad = [f"G[{i}][{j}] = {Gc[i][j]}" for i in range(4) for j in range(i, 4) if not Gc[i][j].iszero]
        yield Check(f"{prefix}.einstein-cartan", anchor, PASS if not bad else FAIL, "; ".join(bad) or "0")
        for c in pipeline_equivalence(b, coord, prefix).checks:
            yield c


def _extensions(p: Params) -> Iterable[Check]:
    yield from _vacuum("taub-nut", "exact solution to the matter-free", taub_nut(p.m, p.l, p.n))
    r = coordinate("r")
    th = coordinate("theta")
    l = p.l
    for branch in ("psi_p", "psi_pp"):
        model = extension(branch, p.m, p.l, p.n)
        yield from _vacuum(f"ext-{branch}", _EXT_ANCHOR, model)
        det = model.determinant()
        expected = 4 * l * l * (r * r + l * l) ** 2 * (cos(th) ** 2 - 1)
        yield _ok(f"ext-{branch}.determinant", _EXT_ANCHOR, det - expected)
        c = extension_pullback_check(branch, p.m, p.l)
        c.id = f"ext-{branch}.pullback"
        yield c
        for rh, tag in zip(catalog.horizons(p.m, p.l), ("r+", "r-")):
            v = substitute(det, {"r": rh})
            yield Check(
                f"ext-{branch}.determinant-at-{tag}",
                _EXT_ANCHOR,
                PASS if not v.iszero else FAIL,
                str(v),
            )
        yield _spot_check(branch)


def _spot_check(branch: str) -> Check:
    """All Einstein components at (m, l, r, theta, phi, psi') = (1, 1, 1 + sqrt 2, 1, 1, 1)."""
    model = extension(branch, 1, 1)
    point = {"r": 1 + sqrt(2), "theta": 1, "phi": 1, branch: 1}
    G = numeric_einstein(model.metric, point, 128)
    width_ok = True
    worst = flint.arb(0)
    for row in G:
        for v in row:
            if not v.contains(0) or not (v.rad() < flint.arb("1e-20")):
                width_ok = False
            worst = max(worst, abs(v).upper(), key=lambda x: x.mid())
    return Check(
        f"ext-{branch}.numeric-spot-check",
        _EXT_ANCHOR,
        PASS if width_ok else FAIL,
        f"max |G| upper bound {worst.mid().str(5, radius=False)} at r = 1 + sqrt(2)",
    )


# reduction -------------------------------------------------------------------------


def _reduction(p: Params) -> Iterable[Check]:
    out: list[Check] = []
    out.extend(reduction.verify_D_solution(p.c0 if p.c0.is_rational() else "c0").checks)
    out.append(reduction.D_oracle_check())
    for eps in p.cases:
        c = reduction.ReductionCase(eps)
        out.extend(reduction.derive_D_ode(c)[2].checks)
        out.extend(reduction.derive_F_ode(c)[1].checks)
        out.extend(reduction.verify_F_solution(c).checks)
        out.extend(reduction.constant_R_contradiction(c).checks)
        sol = reduction.solve(c, p.c0, p.c1)
        out.extend(reduction.on_shell_report(sol).checks)
        out.extend(reduction.transform_to_nut_form(sol)[1].checks)
        out.extend(reduction.round_trip(eps, p.m, p.l).checks)
        chk, _ = reduction.oracle_sweep(eps, seed=p.seed)
        out.append(chk)
    return out


# charges ---------------------------------------------------------------------------


def _charges(p: Params) -> Iterable[Check]:
    rep = charges.charge_report(taub_nut(p.m, p.l, p.n))
    out = list(rep.checks)
    if not (p.m.is_rational() and p.l.is_rational()):
        # the convergence tables need numbers
        num = charges.charge_report(taub_nut(1, 1))
        for c in num.checks:
            if c.id.endswith("-convergence"):
                c.id = c.id.replace("charges.", "charges.m1l1.")
                out.append(c)
    return out


# Kretschmann -----------------------------------------------------------------------


def _kretschmann(p: Params) -> Iterable[Check]:
    out: list[Check] = []
    for eps in p.cases:
        sol = reduction.solve(reduction.ReductionCase(eps), p.c0, p.c1)
        K, rep = reduction.kretschmann_closed_form(sol)
        out.extend(rep.checks)
        _, hz = reduction.regularity_at_horizon(K, str(p.c0), str(p.c1))
        for c in hz.checks:
            c.id = f"{sol.case.name}.{c.id}"
            out.append(c)
        out.append(_horizon_limit(K, sol.case.name))
    return out


def _horizon_limit(K: Expr, name: str) -> Check:
    """Interval values of K at r = sqrt(c0) + 10^-k approach the horizon value (c0 = 1, c1 = 8).

    K - K(sqrt c0) ~ sqrt(r - sqrt c0), so the error falls by 10 per two decades.
    """
    import math

    Kn = substitute(K, {"c0": 1, "c1": 8})
    target = flint.arb(0)  # 48/c0^2 - 3/4 c1^2/c0^5 = 48 - 48
    ks = (4, 6, 8, 10, 12, 14, 16)
    errs = [abs(eval_numeric(Kn, {"r": 1 + Fraction(1, 10**k)}, 256) - target).upper() for k in ks]
    fl = [float(e.mid()) for e in errs]
    orders = [math.log10(fl[i] / fl[i + 1]) / (ks[i + 1] - ks[i]) for i in range(len(ks) - 1)]
    ok = all(b < a for a, b in zip(fl, fl[1:])) and fl[-1] < 1e-5 and all(abs(o - 0.5) < 0.05 for o in orders)
    return Check(
        f"{name}.K-horizon-limit-numeric",
        "observing that it is regular at",
        PASS if ok else FAIL,
        f"|K - K(sqrt c0)| at r = 1 + 1e-{ks[-1]}: {fl[-1]:.3e}; fitted order {sum(orders) / len(orders):.3f} in (r - sqrt c0)",
    )


SUITES: dict[str, list[Step]] = {
    "algebra": [_algebra],
    "forms": [_forms],
    "killing": [_killing],
    "curvature-spacelike": [_curvature(1)],
    "curvature-timelike": [_curvature(-1)],
    "extensions": [_extensions],
    "reduction": [_reduction],
    "charges": [_charges],
    "kretschmann": [_kretschmann],
}
SUITES["all"] = [s for name in list(SUITES) for s in SUITES[name]]


def run_suite(name: str, params: Params | None = None, *, timing: bool = False) -> Report:
    """Run a suite; a step that raises becomes a single failed check."""
    if name not in SUITES:
        raise UnknownSuite(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    params = params or Params()
    rep = Report(name, params.seed)
    for step in SUITES[name]:
        t0 = time.perf_counter()
        try:
            checks = list(step(params))
        except SymcoreError as exc:
            checks = [Check(f"{step.__name__.strip('_')}.error", "", FAIL, f"{type(exc).__name__}: {exc}")]
        ms = int(round((time.perf_counter() - t0) * 1000))
        for c in checks:
            c.ms = ms if timing else None
            rep.add(c)
    return rep
