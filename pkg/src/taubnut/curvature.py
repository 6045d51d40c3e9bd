"""Curvature from an orthonormal coframe (Cartan) and from a metric (Christoffel).

The two pipelines share nothing but the scalar layer, so agreement between
them is a meaningful check.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Sequence

import flint

from .excalc import (
    Form,
    SingularCoframe,
    SymTensor2,
    Tetrad,
    ext_d,
    inverse,
    to_coordinate,
    to_frame,
    wedge,
)
from .report import FAIL, PASS, Check, Report
from .symcore import Expr, SymcoreError, const, diff
from .symcore.numeric import _normalize_point, default_precision, precision

__all__ = [
    "Tetrad",
    "CurvatureBundle",
    "CoordinateCurvature",
    "SingularMetric",
    "anholonomy",
    "solve_connection",
    "curvature_forms",
    "riemann_components",
    "cartan",
    "einstein",
    "kretschmann",
    "kretschmann_shortcut",
    "christoffel_curvature",
    "bundle_checks",
    "pipeline_equivalence",
    "numeric_einstein",
]

HALF = const(1) / 2


class SingularMetric(SymcoreError):
    pass


def anholonomy(t: Tetrad) -> dict[tuple[int, int, int], Expr]:
    """C^a_bc with d theta^a = -1/2 C^a_bc theta^b ^ theta^c (all b != c)."""
    n = t.chart.dim
    C = {}
    for a in range(n):
        dth = to_frame(ext_d(t.forms[a]), t)
        for (b, c), v in dth.coeffs.items():
            C[(a, b, c)] = -v
            C[(a, c, b)] = v
    return C


def solve_connection(t: Tetrad) -> list[list[Form]]:
    """Levi-Civita connection one-forms omega^a_b in the frame basis.

    omega_abc = 1/2 (C_cab - C_abc - C_bca) with C_abc = eta_a C^a_bc and
    omega^a_b = omega^a_bc theta^c.
    """
    n = t.chart.dim
    eta = t.eta
    C = anholonomy(t)
    zero = const(0)

    def low(a, b, c):
        v = C.get((a, b, c))
        return zero if v is None else (v if eta[a] > 0 else -v)

    omega = []
    for a in range(n):
        row = []
        for b in range(n):
            comps = {}
            for c in range(n):
                w = (low(c, a, b) - low(a, b, c) - low(b, c, a)) * HALF
                if not w.iszero:
                    comps[(c,)] = w if eta[a] > 0 else -w
            row.append(Form(t.chart, 1, comps, "frame"))
        omega.append(row)
    return omega


def curvature_forms(t: Tetrad, omega: Sequence[Sequence[Form]]) -> list[list[Form]]:
    """Omega^a_b = d omega^a_b + omega^a_c ^ omega^c_b, returned in the frame basis."""
    n = t.chart.dim
    coord = [[to_coordinate(w, t) for w in row] for row in omega]
    out = []
    for a in range(n):
        row = []
        for b in range(n):
            acc = ext_d(coord[a][b])
            for c in range(n):
                if coord[a][c].iszero or coord[c][b].iszero:
                    continue
                acc = acc + wedge(coord[a][c], coord[c][b])
            row.append(to_frame(acc, t))
        out.append(row)
    return out


def riemann_components(Omega: Sequence[Sequence[Form]]) -> dict[tuple[int, int, int, int], Expr]:
    """R^a_bcd for c < d read off Omega^a_b = 1/2 R^a_bcd theta^c ^ theta^d."""
    R = {}
    for a, row in enumerate(Omega):
        for b, F in enumerate(row):
            for (c, d), v in F.coeffs.items():
                R[(a, b, c, d)] = v
    return R


@dataclass
class CurvatureBundle:
    tetrad: Tetrad
    omega: list[list[Form]]
    Omega: list[list[Form]]
    riemann: dict[tuple[int, int, int, int], Expr] = field(repr=False)

    @property
    def n(self) -> int:
        return self.tetrad.chart.dim

    @property
    def eta(self) -> tuple[int, ...]:
        return self.tetrad.eta

    def R(self, a: int, b: int, c: int, d: int) -> Expr:
        """R^a_bcd with antisymmetry in the last pair."""
        if c == d:
            return const(0)
        if c > d:
            return -self.riemann.get((a, b, d, c), const(0))
        return self.riemann.get((a, b, c, d), const(0))

    def R_low(self, a: int, b: int, c: int, d: int) -> Expr:
        v = self.R(a, b, c, d)
        return v if self.eta[a] > 0 else -v

    @cached_property
    def ricci(self) -> list[list[Expr]]:
        n = self.n
        out = [[const(0)] * n for _ in range(n)]
        for b in range(n):
            for d in range(n):
                acc = const(0)
                for a in range(n):
                    acc = acc + self.R(a, b, a, d)
                out[b][d] = acc
        return out

    @cached_property
    def scalar(self) -> Expr:
        acc = const(0)
        for a in range(self.n):
            acc = acc + (self.ricci[a][a] if self.eta[a] > 0 else -self.ricci[a][a])
        return acc

    @cached_property
    def einstein(self) -> list[list[Expr]]:
        n = self.n
        half_s = self.scalar * HALF
        return [
            [self.ricci[a][b] - (half_s * self.eta[a] if a == b else const(0)) for b in range(n)]
            for a in range(n)
        ]

    @cached_property
    def kretschmann(self) -> Expr:
        """Full contraction R^abcd R_abcd."""
        acc = const(0)
        for (a, b, c, d), v in self.riemann.items():
            sign = self.eta[a] * self.eta[b] * self.eta[c] * self.eta[d]
            term = v * v * 2
            acc = acc + (term if sign > 0 else -term)
        return acc

    def map(self, fn) -> "CurvatureBundle":
        """Apply ``fn`` to every scalar (e.g. a substitution of solved functions)."""
        return CurvatureBundle(
            self.tetrad.map(fn),
            [[w.map(fn) for w in row] for row in self.omega],
            [[w.map(fn) for w in row] for row in self.Omega],
            {k: fn(v) for k, v in self.riemann.items()},
        )


def cartan(t: Tetrad) -> CurvatureBundle:
    omega = solve_connection(t)
    Omega = curvature_forms(t, omega)
    return CurvatureBundle(t, omega, Omega, riemann_components(Omega))


def einstein(bundle: CurvatureBundle) -> list[list[Expr]]:
    return bundle.einstein


def kretschmann(bundle: CurvatureBundle) -> Expr:
    return bundle.kretschmann


def kretschmann_shortcut(bundle: CurvatureBundle) -> Expr:
    """The reduced form 12((R^0_101)^2 - (R^0_123)^2), valid only on shell."""
    return (bundle.R(0, 1, 0, 1) ** 2 - bundle.R(0, 1, 2, 3) ** 2) * 12


def bundle_checks(bundle: CurvatureBundle, prefix: str = "") -> Report:
    """Defining residuals of the Cartan pipeline."""
    t = bundle.tetrad
    n = bundle.n
    eta = bundle.eta
    rep = Report("cartan")
    p = f"{prefix}." if prefix else ""
    anchor = "Since the tetrad is orthonormal we have"
    # metric compatibility: omega_ab + omega_ba = 0
    worst = None
    for a in range(n):
        for b in range(a, n):
            s = bundle.omega[a][b] * eta[a] + bundle.omega[b][a] * eta[b]
            if not s.iszero:
                worst = s
    rep.add(Check(f"{p}omega-antisymmetric", anchor, PASS if worst is None else FAIL, "0" if worst is None else str(worst)))
    # first structure equation
    worst = None
    for a in range(n):
        acc = ext_d(t.forms[a])
        for b in range(n):
            w = to_coordinate(bundle.omega[a][b], t)
            acc = acc + wedge(w, t.forms[b])
        if not acc.iszero:
            worst = acc
    rep.add(
        Check(f"{p}first-structure", "using the first structure equation", PASS if worst is None else FAIL, "0" if worst is None else str(worst))
    )
    # first Bianchi identity R^a_[bcd] = 0
    worst = None
    for a in range(n):
        for b, c, d in itertools.combinations(range(n), 3):
            s = bundle.R(a, b, c, d) + bundle.R(a, c, d, b) + bundle.R(a, d, b, c)
            if not s.iszero:
                worst = s
    rep.add(Check(f"{p}bianchi", "the non-vanishing components of the Riemann tensor", PASS if worst is None else FAIL, "0" if worst is None else str(worst)))
    # pair symmetry R_abcd = R_cdab
    worst = None
    for a, b, c, d in itertools.product(range(n), repeat=4):
        s = bundle.R_low(a, b, c, d) - bundle.R_low(c, d, a, b)
        if not s.iszero:
            worst = s
            break
    rep.add(Check(f"{p}pair-symmetry", "the non-vanishing components of the Riemann tensor", PASS if worst is None else FAIL, "0" if worst is None else str(worst)))
    worst = None
    for a in range(n):
        for b in range(a + 1, n):
            s = bundle.ricci[a][b] - bundle.ricci[b][a]
            if not s.iszero:
                worst = s
    rep.add(Check(f"{p}ricci-symmetric", "The components of the Ricci tensor are", PASS if worst is None else FAIL, "0" if worst is None else str(worst)))
    return rep


# coordinate pipeline -------------------------------------------------------------


@dataclass
class CoordinateCurvature:
    metric: SymTensor2
    ginv: list[list[Expr]] = field(repr=False)
    christoffel: list[list[list[Expr]]] = field(repr=False)
    riemann: dict[tuple[int, int, int, int], Expr] = field(repr=False)

    @property
    def n(self) -> int:
        return self.metric.chart.dim

    def R(self, rho: int, sig: int, mu: int, nu: int) -> Expr:
        """R^rho_sig mu nu, antisymmetric in (mu, nu)."""
        if mu == nu:
            return const(0)
        if mu > nu:
            return -self.riemann.get((rho, sig, nu, mu), const(0))
        return self.riemann.get((rho, sig, mu, nu), const(0))

    @cached_property
    def ricci(self) -> list[list[Expr]]:
        n = self.n
        out = [[const(0)] * n for _ in range(n)]
        for s in range(n):
            for v in range(n):
                acc = const(0)
                for r in range(n):
                    acc = acc + self.R(r, s, r, v)
                out[s][v] = acc
        return out

    @cached_property
    def scalar(self) -> Expr:
        acc = const(0)
        for a in range(self.n):
            for b in range(self.n):
                if not self.ginv[a][b].iszero:
                    acc = acc + self.ginv[a][b] * self.ricci[a][b]
        return acc

    @cached_property
    def einstein(self) -> list[list[Expr]]:
        n = self.n
        half_s = self.scalar * HALF
        g = self.metric.m
        return [[self.ricci[a][b] - half_s * g[a][b] for b in range(n)] for a in range(n)]

    def frame_riemann(self, t: Tetrad) -> dict[tuple[int, int, int, int], Expr]:
        """R^a_bcd = E^a_rho R^rho_sig mu nu e_b^sig e_c^mu e_d^nu for c < d."""
        n = self.n
        E = t.matrix
        e = t.inverse  # e[mu][a]
        # contract one index at a time
        full = {}
        for rho, s, mu, nu in itertools.product(range(n), repeat=4):
            if mu < nu:
                v = self.R(rho, s, mu, nu)
                if not v.iszero:
                    full[(rho, s, mu, nu)] = v
                    full[(rho, s, nu, mu)] = -v

        def contract(src, pos, mat, lower):
            out = {}
            for idx, v in src.items():
                for a in range(n):
                    coef = mat[a][idx[pos]] if not lower else mat[idx[pos]][a]
                    if coef.iszero:
                        continue
                    key = idx[:pos] + (a,) + idx[pos + 1 :]
                    term = coef * v
                    out[key] = out[key] + term if key in out else term
            return {k: v for k, v in out.items() if not v.iszero}

        step = contract(full, 0, E, False)
        step = contract(step, 1, e, True)
        step = contract(step, 2, e, True)
        step = contract(step, 3, e, True)
        return {k: v for k, v in step.items() if k[2] < k[3]}

    def frame_tensor(self, T: Sequence[Sequence[Expr]], t: Tetrad) -> list[list[Expr]]:
        n = self.n
        e = t.inverse
        out = [[const(0)] * n for _ in range(n)]
        for a in range(n):
            for b in range(n):
                acc = const(0)
                for mu in range(n):
                    if e[mu][a].iszero:
                        continue
                    for nu in range(n):
                        if e[nu][b].iszero or T[mu][nu].iszero:
                            continue
                        acc = acc + e[mu][a] * e[nu][b] * T[mu][nu]
                out[a][b] = acc
        return out

    @cached_property
    def kretschmann(self) -> Expr:
        n = self.n
        g, gi = self.metric.m, self.ginv
        low = {}
        for (r, s, m_, v), val in self.riemann.items():
            for a in range(n):
                if not g[a][r].iszero:
                    term = g[a][r] * val
                    for key, t in (((a, s, m_, v), term), ((a, s, v, m_), -term)):
                        low[key] = low[key] + t if key in low else t
        up = dict(low)
        for pos in range(4):
            nxt = {}
            for idx, val in up.items():
                for a in range(n):
                    if gi[a][idx[pos]].iszero:
                        continue
                    key = idx[:pos] + (a,) + idx[pos + 1 :]
                    t = gi[a][idx[pos]] * val
                    nxt[key] = nxt[key] + t if key in nxt else t
            up = nxt
        acc = const(0)
        for k, v in low.items():
            if k in up:
                acc = acc + v * up[k]
        return acc


def christoffel_curvature(g: SymTensor2) -> CoordinateCurvature:
    chart = g.chart
    n = chart.dim
    if g.det().iszero:
        raise SingularMetric("metric determinant is zero")
    try:
        gi = inverse(g.m)
    except SingularCoframe as exc:
        raise SingularMetric(str(exc)) from exc
    dg = [[[diff(g.m[a][b], chart.coords[c]) for c in range(n)] for b in range(n)] for a in range(n)]
    # Gamma_{s m v} (first kind), then raise
    first = [[[(dg[s][m][v] + dg[s][v][m] - dg[m][v][s]) * HALF for v in range(n)] for m in range(n)] for s in range(n)]
    Gam = [[[const(0)] * n for _ in range(n)] for _ in range(n)]
    for l in range(n):
        for m in range(n):
            for v in range(m, n):
                acc = const(0)
                for s in range(n):
                    if not gi[l][s].iszero and not first[s][m][v].iszero:
                        acc = acc + gi[l][s] * first[s][m][v]
                Gam[l][m][v] = acc
                Gam[l][v][m] = acc
    dGam = {}

    def dG(r, a, b, x):
        key = (r, min(a, b), max(a, b), x)
        if key not in dGam:
            dGam[key] = diff(Gam[r][a][b], chart.coords[x])
        return dGam[key]

    riem = {}
    for r, s in itertools.product(range(n), repeat=2):
        for m, v in itertools.combinations(range(n), 2):
            acc = dG(r, v, s, m) - dG(r, m, s, v)
            for l in range(n):
                a1, b1 = Gam[r][m][l], Gam[l][v][s]
                if not a1.iszero and not b1.iszero:
                    acc = acc + a1 * b1
                a2, b2 = Gam[r][v][l], Gam[l][m][s]
                if not a2.iszero and not b2.iszero:
                    acc = acc - a2 * b2
            if not acc.iszero:
                riem[(r, s, m, v)] = acc
    return CoordinateCurvature(g, gi, Gam, riem)


def pipeline_equivalence(bundle: CurvatureBundle, coord: CoordinateCurvature, prefix: str = "") -> Report:
    """Frame components from the coordinate pipeline equal the Cartan ones."""
    t = bundle.tetrad
    rep = Report("pipelines")
    p = f"{prefix}." if prefix else ""
    fr = coord.frame_riemann(t)
    keys = set(fr) | set(bundle.riemann)
    worst = None
    for k in sorted(keys):
        d = fr.get(k, const(0)) - bundle.riemann.get(k, const(0))
        if not d.iszero:
            worst = d
            break
    rep.add(Check(f"{p}riemann-pipelines", "the non-vanishing components of the Riemann tensor", PASS if worst is None else FAIL, "0" if worst is None else str(worst)))
    G = coord.frame_tensor(coord.einstein, t)
    worst = None
    for a in range(bundle.n):
        for b in range(bundle.n):
            d = G[a][b] - bundle.einstein[a][b]
            if not d.iszero:
                worst = d
    rep.add(Check(f"{p}einstein-pipelines", "the non-vanishing components of the Einstein tensor", PASS if worst is None else FAIL, "0" if worst is None else str(worst)))
    return rep


# independent numeric route -----------------------------------------------------------


def numeric_einstein(g: SymTensor2, point: dict, bits: int | None = None) -> list[list[flint.arb]]:
    """Einstein tensor at a point by ball arithmetic on g, dg and ddg only.

    Only the metric's derivatives are taken symbolically; inversion,
    Christoffel symbols and contractions are numeric.
    """
    from .symcore import eval_numeric

    chart = g.chart
    n = chart.dim
    bits = bits or default_precision()
    xs = chart.coords
    with precision(bits):
        pt = _normalize_point(point)

        def ev(e):
            return eval_numeric(e, pt, bits)

        G0 = flint.arb_mat([[ev(g.m[a][b]) for b in range(n)] for a in range(n)])
        dg = [[[None] * n for _ in range(n)] for _ in range(n)]
        ddg = {}
        for a in range(n):
            for b in range(a, n):
                for c in range(n):
                    d1 = diff(g.m[a][b], xs[c])
                    dg[a][b][c] = dg[b][a][c] = ev(d1)
                    for e in range(c, n):
                        v = ev(diff(d1, xs[e]))
                        for key in ((a, b, c, e), (b, a, c, e), (a, b, e, c), (b, a, e, c)):
                            ddg[key] = v
        gi = G0.inv()
        # d(g^-1)_c = -g^-1 (dg_c) g^-1
        dgi = []
        for c in range(n):
            M = flint.arb_mat([[dg[a][b][c] for b in range(n)] for a in range(n)])
            dgi.append(-(gi * M * gi))

        def first(s, m, v):
            return (dg[s][m][v] + dg[s][v][m] - dg[m][v][s]) / 2

        def dfirst(s, m, v, x):
            return (ddg[(s, m, v, x)] + ddg[(s, v, m, x)] - ddg[(m, v, s, x)]) / 2

        Gam = [[[sum((gi[l, s] * first(s, m, v) for s in range(n)), flint.arb(0)) for v in range(n)] for m in range(n)] for l in range(n)]
        dGam = [
            [
                [
                    [
                        sum((dgi[x][l, s] * first(s, m, v) + gi[l, s] * dfirst(s, m, v, x) for s in range(n)), flint.arb(0))
                        for x in range(n)
                    ]
                    for v in range(n)
                ]
                for m in range(n)
            ]
            for l in range(n)
        ]

        def riem(r, s, m, v):
            acc = dGam[r][v][s][m] - dGam[r][m][s][v]
            for l in range(n):
                acc += Gam[r][m][l] * Gam[l][v][s] - Gam[r][v][l] * Gam[l][m][s]
            return acc

        Ric = [[sum((riem(r, s, r, v) for r in range(n)), flint.arb(0)) for v in range(n)] for s in range(n)]
        S = sum((gi[a, b] * Ric[a][b] for a in range(n) for b in range(n)), flint.arb(0))
        return [[Ric[a][b] - S * G0[a, b] / 2 for b in range(n)] for a in range(n)]
