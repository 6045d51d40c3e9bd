"""One line per acceptance criterion, at the stated tolerances."""

import random
import time

import pytest

from taubnut import charges, reduction
from taubnut.catalog import extension, taub_nut, verify_killing
from taubnut.crossref import display_report
from taubnut.curvature import cartan, christoffel_curvature
from taubnut.excalc import EULER, Form, ext_d, hodge_frame, interior, lie_form
from taubnut.report import FAIL, MISMATCH, PASS
from taubnut.suites import Params, random_expression, random_form, random_vector, run_suite
from taubnut.symcore import const, diff, parse

LINES = {}


@pytest.fixture
def report_line(capsys):
    def emit(n, ok, detail):
        line = f"ACCEPTANCE {n}: {'PASS' if ok else 'FAIL'} - {detail}"
        LINES[n] = line
        with capsys.disabled():
            print("\n" + line)
        return ok

    return emit


def _zero(G):
    return all(G[i][j].iszero for i in range(4) for j in range(i, 4))


def test_1_vacuum(report_line):
    t0 = time.perf_counter()
    model = taub_nut()
    cart = cartan(model.tetrad).einstein
    chris = christoffel_curvature(model.metric).einstein
    dt = time.perf_counter() - t0
    ok = _zero(cart) and _zero(chris) and dt < 60
    assert report_line(1, ok, f"Einstein tensor of taub_nut(m, l) zero in 10/10 components, Cartan and Christoffel, {dt:.1f} s")


def test_2_extensions(report_line):
    rep = run_suite("extensions")
    ext = [c for c in rep.checks if c.id.startswith("ext-")]
    vac = all(_zero(christoffel_curvature(extension(b).metric).einstein) for b in ("psi_p", "psi_pp"))
    spot = [c for c in ext if c.id.endswith("numeric-spot-check")]
    ok = vac and all(c.status == PASS for c in ext) and len(spot) == 2
    assert report_line(2, ok, f"psi', psi'' vacuum, det != 0 at r+-, spot check |G| < 1e-20 at 128 bits ({len(ext)} checks)")


def test_3_display_equivalence(report_line):
    reps = [display_report(1), display_report(-1)]
    fails = [c.id for r in reps for c in r.checks if c.status == FAIL]
    mism = [c.id for r in reps for c in r.checks if c.status == MISMATCH]
    n = sum(len(r.checks) for r in reps)
    ok = not fails
    assert report_line(3, ok, f"{n - len(mism)}/{n} displays equal, itemized mismatches: {', '.join(mism) or 'none'}")


@pytest.fixture(scope="module")
def reduction_report():
    return run_suite("reduction")


def test_4_ode_suite(report_line, reduction_report):
    rep = reduction_report
    need = [
        "D-solution.squared-form",
        "D-solution.root-form",
        "spacelike.F-solution",
        "timelike.F-solution",
        "spacelike.F-oracle-sweep",
        "timelike.F-oracle-sweep",
        "spacelike.const-R-G11-value",
        "timelike.const-R-inconsistent",
    ]
    ok = all(rep[c].status == PASS for c in need)
    worst = max(float(rep[c].residual.rsplit(" ", 1)[1]) for c in need if c.endswith("sweep"))
    assert report_line(4, ok, f"D^2 and F closed forms exact, oracle max error {worst:.1e} <= 1e-9, G11 = 2/R0^2")


def test_5_transform(report_line, reduction_report):
    rep = reduction_report
    ids = [f"{c}.{k}" for c in ("spacelike", "timelike") for k in ("nut-form", "round-trip-c0", "round-trip-c1", "round-trip-B2", "B2-rprime")]
    ok = all(rep[i].status == PASS for i in ids)
    for m, l in (("5/3", "2"), ("-1", "1/3")):
        ok &= all(c.status == PASS for e in (1, -1) for c in reduction.round_trip(e, m, l).checks)
    assert report_line(5, ok, "transformed metrics equal Taub-NUT with l^2 = c0, m = +-c1/(8 c0); round trip exact")


def test_6_kretschmann(report_line):
    rep = run_suite("kretschmann", Params(case="spacelike"))
    ok = all(rep[c].status == PASS for c in ("spacelike.K-pipelines", "spacelike.K-at-r2=c0", "spacelike.K-at-r2=c0-lm"))
    verdict = rep["spacelike.K-display"].status
    ok &= verdict in (PASS, MISMATCH)
    assert report_line(6, ok, f"on-shell K = full-contraction oracle, K(r^2 = c0) = 48(l^2 - m^2)/l^6, long display: {verdict}")


def test_7_charges(report_line):
    model = taub_nut()
    k, d = charges.komar_mass(model), charges.dual_charge(model)
    exact = (k.limit + parse("m")).iszero and (d.limit - parse("l")).iszero
    kn, dn = charges.komar_mass(taub_nut(1, 1)), charges.dual_charge(taub_nut(1, 1))
    ek = float(kn.table[2][2])
    ed = float(dn.table[2][2])
    ok = exact and ek < 1e-4 and ed < 1e-4
    assert report_line(7, ok, f"limits -m and l exact; at r = 1e5 errors {ek:.1e}, {ed:.1e} < 1e-4")


def test_8_lemma_identities(report_line):
    forms = run_suite("forms")
    kill = verify_killing(taub_nut())
    ok = all(c.status == PASS for c in forms.checks) and all(c.status == PASS for c in kill.checks)
    assert report_line(8, ok, f"sigma structure, Lie derivatives, commutators: {len(forms.checks) + len(kill.checks)} residuals zero")


def test_9_property_suites(report_line):
    rng = random.Random(9)
    n = 200
    failures = {"d^2": 0, "cartan": 0, "double-star": 0, "bianchi": 0, "ring": 0}
    for _ in range(n):
        a, b, c = (random_expression(rng) for _ in range(3))
        if not ((a + b) * c - a * c - b * c).iszero or not ((a * b) * c - a * (b * c)).iszero or not (a + b - b - a).iszero:
            failures["ring"] += 1
        w = random_form(rng, rng.randrange(0, 3))
        if not ext_d(ext_d(w)).iszero:
            failures["d^2"] += 1
        one, X = random_form(rng, 1), random_vector(rng)
        comps = [
            sum((X[v] * diff(one[(mu,)], EULER.coords[v]) + one[(v,)] * diff(X[v], EULER.coords[mu]) for v in range(4)), const(0))
            for mu in range(4)
        ]
        if not (lie_form(X, one) - Form.one_form(EULER, comps)).iszero:
            failures["cartan"] += 1
        if not (lie_form(X, one) - interior(X, ext_d(one)) - ext_d(interior(X, one))).iszero:
            failures["cartan"] += 1
        k = rng.randrange(0, 5)
        f = Form(EULER, k, dict(random_form(rng, k).coeffs), "frame")
        if not (hodge_frame(hodge_frame(f)) + f * ((-1) ** (k * (4 - k)))).iszero:
            failures["double-star"] += 1
    from taubnut.excalc import Tetrad
    from taubnut.symcore import coordinate, cos, sin

    r, th = coordinate("r"), coordinate("theta")
    for _ in range(n):
        P = [rng.randint(1, 3) + rng.randint(1, 2) * r ** rng.randint(1, 2) for _ in range(4)]
        t = Tetrad(
            [
                EULER.d("psi") * P[0] + EULER.d("phi") * (rng.randint(-1, 1) * P[0] * cos(th)),
                EULER.d("r") * P[1],
                EULER.d("theta") * P[2],
                EULER.d("phi") * (P[3] * sin(th)),
            ]
        )
        bd = cartan(t)
        if any(
            not (bd.R(a_, i, j, k_) + bd.R(a_, j, k_, i) + bd.R(a_, k_, i, j)).iszero
            for a_ in range(4)
            for i in range(4)
            for j in range(i + 1, 4)
            for k_ in range(j + 1, 4)
        ):
            failures["bianchi"] += 1
    ok = not any(failures.values())
    assert report_line(9, ok, f"{n} seeded instances each: " + ", ".join(f"{k} {v} failures" for k, v in failures.items()))
