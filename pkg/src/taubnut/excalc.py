"""Differential forms, vector fields and symmetric 2-tensors on a single chart."""

from __future__ import annotations

import ast
import itertools
import re
from dataclasses import dataclass, field
from functools import cached_property
from typing import Mapping, Sequence

from .report import Check, Report
from .symcore import Expr, SymcoreError, as_expr, const, coordinate, diff
from .symcore.parser import _preprocess, tree_to_expr

__all__ = [
    "Chart",
    "EULER",
    "Form",
    "VecField",
    "SymTensor2",
    "Tetrad",
    "BasisMismatch",
    "DegreeError",
    "SingularCoframe",
    "wedge",
    "ext_d",
    "interior",
    "lie_form",
    "lie_vec",
    "lie_metric",
    "hodge_frame",
    "to_coordinate",
    "to_frame",
    "dual_structure_check",
    "parse_form",
    "det",
    "inverse",
    "perm_sign",
]


class BasisMismatch(SymcoreError):
    pass


class DegreeError(SymcoreError):
    pass


class SingularCoframe(SymcoreError):
    pass


@dataclass(frozen=True)
class Chart:
    coords: tuple[str, ...]
    periods: Mapping[str, str] = field(default_factory=dict, compare=False)

    def __post_init__(self):
        if len(set(self.coords)) != len(self.coords):
            raise ValueError(f"repeated coordinate in {self.coords}")
        for c in self.coords:
            coordinate(c)

    @property
    def dim(self) -> int:
        return len(self.coords)

    def x(self, i: int) -> Expr:
        return coordinate(self.coords[i])

    def d(self, name: str) -> "Form":
        return Form.unit(self, self.coords.index(name))

    def index(self, name: str) -> int:
        return self.coords.index(name)


EULER = Chart(("r", "psi", "theta", "phi"))


def perm_sign(seq: Sequence[int]) -> int:
    sign = 1
    seq = list(seq)
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if seq[i] > seq[j]:
                sign = -sign
            elif seq[i] == seq[j]:
                return 0
    return sign


class Form:
    """A k-form stored as {strictly increasing index tuple: coefficient}."""

    __slots__ = ("chart", "degree", "basis", "coeffs")

    def __init__(self, chart: Chart, degree: int, coeffs: Mapping[tuple, Expr] | None = None, basis: str = "coordinate"):
        if basis not in ("coordinate", "frame"):
            raise ValueError(f"unknown basis {basis!r}")
        if not 0 <= degree <= chart.dim:
            raise DegreeError(f"degree {degree} outside 0..{chart.dim}")
        self.chart = chart
        self.degree = degree
        self.basis = basis
        clean = {}
        for idx, c in (coeffs or {}).items():
            idx = tuple(idx)
            if len(idx) != degree or any(a >= b for a, b in zip(idx, idx[1:])):
                raise ValueError(f"index {idx} is not strictly increasing of length {degree}")
            c = as_expr(c)
            if not c.iszero:
                clean[idx] = c
        self.coeffs = clean

    @classmethod
    def unit(cls, chart: Chart, i: int, basis: str = "coordinate") -> "Form":
        return cls(chart, 1, {(i,): const(1)}, basis)

    @classmethod
    def scalar(cls, chart: Chart, value, basis: str = "coordinate") -> "Form":
        return cls(chart, 0, {(): as_expr(value)}, basis)

    @classmethod
    def one_form(cls, chart: Chart, comps: Sequence, basis: str = "coordinate") -> "Form":
        return cls(chart, 1, {(i,): c for i, c in enumerate(comps)}, basis)

    @classmethod
    def from_dense(cls, chart: Chart, degree: int, get, basis: str = "coordinate") -> "Form":
        return cls(chart, degree, {I: get(I) for I in itertools.combinations(range(chart.dim), degree)}, basis)

    def __getitem__(self, idx) -> Expr:
        if isinstance(idx, int):
            idx = (idx,)
        idx = tuple(idx)
        s = perm_sign(idx)
        if s == 0:
            return const(0)
        return s * self.coeffs.get(tuple(sorted(idx)), const(0))

    @property
    def iszero(self) -> bool:
        return not self.coeffs

    def _check(self, other: "Form") -> None:
        if self.chart != other.chart:
            raise BasisMismatch("forms live on different charts")
        if self.basis != other.basis:
            raise BasisMismatch(f"cannot combine {self.basis} and {other.basis} basis forms")

    def __add__(self, other: "Form") -> "Form":
        if not isinstance(other, Form):
            return NotImplemented
        self._check(other)
        if self.degree != other.degree:
            raise DegreeError("cannot add forms of different degree")
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            out[k] = out[k] + v if k in out else v
        return Form(self.chart, self.degree, out, self.basis)

    def __neg__(self) -> "Form":
        return Form(self.chart, self.degree, {k: -v for k, v in self.coeffs.items()}, self.basis)

    def __sub__(self, other: "Form") -> "Form":
        return self + (-other)

    def __mul__(self, s) -> "Form":
        if isinstance(s, Form):
            return wedge(self, s)
        s = as_expr(s)
        return Form(self.chart, self.degree, {k: v * s for k, v in self.coeffs.items()}, self.basis)

    __rmul__ = __mul__

    def __truediv__(self, s) -> "Form":
        return self * (1 / as_expr(s))

    def __xor__(self, other: "Form") -> "Form":
        return wedge(self, other)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Form):
            return NotImplemented
        try:
            return (self - other).iszero
        except (BasisMismatch, DegreeError):
            return False

    __hash__ = None

    def map(self, fn) -> "Form":
        return Form(self.chart, self.degree, {k: fn(v) for k, v in self.coeffs.items()}, self.basis)

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        prefix = "d" if self.basis == "coordinate" else "e"
        names = self.chart.coords if self.basis == "coordinate" else [str(i) for i in range(self.chart.dim)]
        parts = []
        for idx, c in sorted(self.coeffs.items()):
            if not idx:
                parts.append(f"({c})")
                continue
            basis = "^".join(f"{prefix}{names[i]}" for i in idx)
            parts.append(f"({c})*{basis}")
        return " + ".join(parts)

    __repr__ = __str__


def wedge(a: Form, b: Form) -> Form:
    a._check(b)
    if a.degree + b.degree > a.chart.dim:
        return Form(a.chart, a.chart.dim, {}, a.basis)
    out: dict[tuple, Expr] = {}
    for I, ca in a.coeffs.items():
        for J, cb in b.coeffs.items():
            if set(I) & set(J):
                continue
            K = I + J
            s = perm_sign(K)
            key = tuple(sorted(K))
            term = ca * cb if s > 0 else -(ca * cb)
            out[key] = out[key] + term if key in out else term
    return Form(a.chart, a.degree + b.degree, out, a.basis)


def ext_d(a: Form) -> Form:
    if a.basis != "coordinate":
        raise BasisMismatch("exterior derivative needs a coordinate-basis form; convert with to_coordinate")
    chart = a.chart
    out: dict[tuple, Expr] = {}
    for I, c in a.coeffs.items():
        for mu, name in enumerate(chart.coords):
            if mu in I:
                continue
            dc = diff(c, name)
            if dc.iszero:
                continue
            sign = -1 if sum(1 for i in I if i < mu) % 2 else 1
            key = tuple(sorted(I + (mu,)))
            term = dc if sign > 0 else -dc
            out[key] = out[key] + term if key in out else term
    return Form(chart, a.degree + 1, out, "coordinate")


class VecField:
    __slots__ = ("chart", "comps")

    def __init__(self, chart: Chart, comps: Sequence):
        if len(comps) != chart.dim:
            raise ValueError(f"need {chart.dim} components, got {len(comps)}")
        self.chart = chart
        self.comps = tuple(as_expr(c) for c in comps)

    @classmethod
    def partial(cls, chart: Chart, name: str) -> "VecField":
        i = chart.index(name)
        return cls(chart, [1 if j == i else 0 for j in range(chart.dim)])

    def __call__(self, f) -> Expr:
        f = as_expr(f)
        total = const(0)
        for c, name in zip(self.comps, self.chart.coords):
            if not c.iszero:
                total = total + c * diff(f, name)
        return total

    def __getitem__(self, i: int) -> Expr:
        return self.comps[i]

    def __add__(self, other: "VecField") -> "VecField":
        return VecField(self.chart, [a + b for a, b in zip(self.comps, other.comps)])

    def __neg__(self) -> "VecField":
        return VecField(self.chart, [-a for a in self.comps])

    def __sub__(self, other: "VecField") -> "VecField":
        return self + (-other)

    def __mul__(self, s) -> "VecField":
        s = as_expr(s)
        return VecField(self.chart, [a * s for a in self.comps])

    __rmul__ = __mul__

    @property
    def iszero(self) -> bool:
        return all(c.iszero for c in self.comps)

    def __eq__(self, other) -> bool:
        if not isinstance(other, VecField):
            return NotImplemented
        return (self - other).iszero

    __hash__ = None

    def __str__(self) -> str:
        terms = [f"({c})*d_{n}" for c, n in zip(self.comps, self.chart.coords) if not c.iszero]
        return " + ".join(terms) or "0"

    __repr__ = __str__


def interior(X: VecField, a: Form) -> Form:
    if a.degree == 0:
        raise DegreeError("interior product of a 0-form")
    if a.basis != "coordinate":
        raise BasisMismatch("interior product is taken in the coordinate basis")
    out: dict[tuple, Expr] = {}
    for I, c in a.coeffs.items():
        for j, mu in enumerate(I):
            x = X.comps[mu]
            if x.iszero:
                continue
            key = I[:j] + I[j + 1 :]
            term = x * c if j % 2 == 0 else -(x * c)
            out[key] = out[key] + term if key in out else term
    return Form(a.chart, a.degree - 1, out, "coordinate")


def lie_form(X: VecField, a: Form) -> Form:
    """Cartan's formula i_X d + d i_X."""
    da = ext_d(a)
    first = interior(X, da) if da.degree > 0 else Form(a.chart, a.degree, {}, "coordinate")
    if a.degree == 0:
        return Form.scalar(a.chart, X(a.coeffs.get((), const(0))))
    return first + ext_d(interior(X, a))


def lie_vec(X: VecField, Y: VecField) -> VecField:
    return VecField(X.chart, [X(Y.comps[mu]) - Y(X.comps[mu]) for mu in range(X.chart.dim)])


class SymTensor2:
    """Symmetric rank-2 covariant tensor in the coordinate basis."""

    __slots__ = ("chart", "m")

    def __init__(self, chart: Chart, m: Sequence[Sequence]):
        n = chart.dim
        rows = [[as_expr(x) for x in row] for row in m]
        if len(rows) != n or any(len(row) != n for row in rows):
            raise ValueError("metric must be square of chart dimension")
        for i in range(n):
            for j in range(i + 1, n):
                if not (rows[i][j] - rows[j][i]).iszero:
                    raise ValueError(f"component ({i},{j}) is not symmetric")
        self.chart = chart
        self.m = tuple(tuple(row) for row in rows)

    @classmethod
    def zero(cls, chart: Chart) -> "SymTensor2":
        return cls(chart, [[0] * chart.dim for _ in range(chart.dim)])

    @classmethod
    def sym(cls, a: Form, b: Form | None = None) -> "SymTensor2":
        """Symmetrized product a*b (a^2 when b is omitted)."""
        b = a if b is None else b
        if a.degree != 1 or b.degree != 1 or a.basis != "coordinate" or b.basis != "coordinate":
            raise DegreeError("symmetric products take coordinate one-forms")
        n = a.chart.dim
        half = const(1) / 2
        m = [[(a[i] * b[j] + a[j] * b[i]) * half for j in range(n)] for i in range(n)]
        return cls(a.chart, m)

    def __getitem__(self, ij) -> Expr:
        i, j = ij
        return self.m[i][j]

    def __add__(self, other: "SymTensor2") -> "SymTensor2":
        n = self.chart.dim
        return SymTensor2(self.chart, [[self.m[i][j] + other.m[i][j] for j in range(n)] for i in range(n)])

    def __neg__(self) -> "SymTensor2":
        return SymTensor2(self.chart, [[-x for x in row] for row in self.m])

    def __sub__(self, other: "SymTensor2") -> "SymTensor2":
        return self + (-other)

    def __mul__(self, s) -> "SymTensor2":
        s = as_expr(s)
        return SymTensor2(self.chart, [[x * s for x in row] for row in self.m])

    __rmul__ = __mul__

    @property
    def iszero(self) -> bool:
        return all(x.iszero for row in self.m for x in row)

    def __eq__(self, other) -> bool:
        if not isinstance(other, SymTensor2):
            return NotImplemented
        return self.chart == other.chart and (self - other).iszero

    __hash__ = None

    def det(self) -> Expr:
        return det(self.m)

    def inverse(self) -> list[list[Expr]]:
        return inverse(self.m)

    def map(self, fn) -> "SymTensor2":
        return SymTensor2(self.chart, [[fn(x) for x in row] for row in self.m])

    def __str__(self) -> str:
        n = self.chart.dim
        terms = []
        for i in range(n):
            for j in range(i, n):
                x = self.m[i][j]
                if x.iszero:
                    continue
                a, b = self.chart.coords[i], self.chart.coords[j]
                terms.append(f"({x})*d{a}^2" if i == j else f"2*({x})*d{a}*d{b}")
        return " + ".join(terms) or "0"

    __repr__ = __str__


def lie_metric(X: VecField, g: SymTensor2) -> SymTensor2:
    """L_X g by the Leibniz rule over g = sum g_ij dx^i (x) dx^j, with L_X dx^i from Cartan's formula."""
    chart = g.chart
    n = chart.dim
    ldx = [lie_form(X, Form.unit(chart, i)) for i in range(n)]
    out = [[const(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            gij = g.m[i][j]
            if gij.iszero:
                continue
            out[i][j] = out[i][j] + X(gij)
            for k in range(n):
                # g_ij (L dx^i)_k dx^k (x) dx^j  +  g_ij dx^i (x) (L dx^j)_k dx^k
                a = ldx[i][k]
                if not a.iszero:
                    out[k][j] = out[k][j] + gij * a
                b = ldx[j][k]
                if not b.iszero:
                    out[i][k] = out[i][k] + gij * b
    return SymTensor2(chart, out)


# linear algebra over Expr -------------------------------------------------------


def _eliminate(m: Sequence[Sequence[Expr]], rhs: list[list[Expr]] | None):
    n = len(m)
    a = [[as_expr(x) for x in row] for row in m]
    b = [list(row) for row in rhs] if rhs is not None else None
    sign = 1
    piv_prod = const(1)
    for col in range(n):
        pivot = None
        best = None
        for row in range(col, n):
            if not a[row][col].iszero:
                size = a[row][col].nterms()
                if best is None or size < best:
                    pivot, best = row, size
        if pivot is None:
            return None, None, const(0)
        if pivot != col:
            a[col], a[pivot] = a[pivot], a[col]
            if b is not None:
                b[col], b[pivot] = b[pivot], b[col]
            sign = -sign
        p = a[col][col]
        piv_prod = piv_prod * p
        for row in range(n):
            if row == col or a[row][col].iszero:
                continue
            if b is None and row < col:
                continue
            factor = a[row][col] / p
            a[row] = [x - factor * y for x, y in zip(a[row], a[col])]
            if b is not None:
                b[row] = [x - factor * y for x, y in zip(b[row], b[col])]
    return a, b, piv_prod * sign


def det(m: Sequence[Sequence[Expr]]) -> Expr:
    return _eliminate(m, None)[2]


def inverse(m: Sequence[Sequence[Expr]]) -> list[list[Expr]]:
    n = len(m)
    eye = [[const(1) if i == j else const(0) for j in range(n)] for i in range(n)]
    a, b, d = _eliminate(m, eye)
    if a is None:
        raise SingularCoframe("matrix is singular")
    return [[b[i][j] / a[i][i] for j in range(n)] for i in range(n)]


# tetrads and basis conversion -----------------------------------------------------


class Tetrad:
    """Orthonormal coframe theta^a (coordinate one-forms) with signature eta."""

    def __init__(self, forms: Sequence[Form], eta: Sequence[int] = (-1, 1, 1, 1), name: str = ""):
        forms = tuple(forms)
        if not forms:
            raise ValueError("empty coframe")
        chart = forms[0].chart
        if len(forms) != chart.dim or len(eta) != chart.dim:
            raise ValueError("coframe size must match chart dimension")
        for f in forms:
            if f.degree != 1 or f.basis != "coordinate" or f.chart != chart:
                raise BasisMismatch("coframe entries must be coordinate one-forms on one chart")
        if any(e not in (-1, 1) for e in eta):
            raise ValueError("signature entries must be +1 or -1")
        self.forms = forms
        self.eta = tuple(eta)
        self.chart = chart
        self.name = name
        if self.determinant.iszero:
            raise SingularCoframe(f"coframe {name or ''} is degenerate")

    @cached_property
    def matrix(self) -> list[list[Expr]]:
        """E[a][mu] with theta^a = E[a][mu] dx^mu."""
        return [[f[mu] for mu in range(self.chart.dim)] for f in self.forms]

    @cached_property
    def determinant(self) -> Expr:
        return det(self.matrix)

    @cached_property
    def inverse(self) -> list[list[Expr]]:
        """Einv[mu][a] with dx^mu = Einv[mu][a] theta^a; column a is the frame vector e_a."""
        return inverse(self.matrix)

    @cached_property
    def frame_vectors(self) -> list[VecField]:
        n = self.chart.dim
        inv = self.inverse
        return [VecField(self.chart, [inv[mu][a] for mu in range(n)]) for a in range(n)]

    def metric(self) -> SymTensor2:
        g = SymTensor2.zero(self.chart)
        for e, f in zip(self.eta, self.forms):
            g = g + SymTensor2.sym(f) * e
        return g

    def frame_basis(self, a: int) -> Form:
        return Form.unit(self.chart, a, "frame")

    def map(self, fn) -> "Tetrad":
        return Tetrad([f.map(fn) for f in self.forms], self.eta, self.name)


def _convert(a: Form, rows: Sequence[Sequence[Expr]], target: str) -> Form:
    """Re-express ``a`` given each old basis one-form as a combination rows[i][j] of the new one."""
    chart = a.chart
    n = chart.dim
    ones = [Form(chart, 1, {(j,): rows[i][j] for j in range(n)}, target) for i in range(n)]
    out = Form(chart, a.degree, {}, target)
    for I, c in a.coeffs.items():
        if not I:
            out = out + Form.scalar(chart, c, target)
            continue
        term = ones[I[0]]
        for i in I[1:]:
            term = wedge(term, ones[i])
        out = out + term * c
    return out


def to_coordinate(a: Form, tetrad: Tetrad) -> Form:
    if a.basis != "frame":
        raise BasisMismatch("to_coordinate expects a frame-basis form")
    return _convert(a, tetrad.matrix, "coordinate")


def to_frame(a: Form, tetrad: Tetrad) -> Form:
    if a.basis != "coordinate":
        raise BasisMismatch("to_frame expects a coordinate-basis form")
    return _convert(a, tetrad.inverse, "frame")


def hodge_frame(a: Form, eta: Sequence[int] = (-1, 1, 1, 1), orientation: int = 1) -> Form:
    """Hodge dual of a frame-basis form.

    With epsilon_{0..n-1} = ``orientation``:
    (*a)_{J} = (1/k!) a^{I} epsilon_{I J}, indices raised with eta.
    """
    if a.basis != "frame":
        raise BasisMismatch("hodge_frame works in an orthonormal frame basis")
    n = a.chart.dim
    k = a.degree
    out: dict[tuple, Expr] = {}
    for I, c in a.coeffs.items():
        J = tuple(i for i in range(n) if i not in I)
        raise_sign = 1
        for i in I:
            raise_sign *= eta[i]
        s = perm_sign(I + J) * raise_sign * orientation
        out[J] = c if s > 0 else -c
    return Form(a.chart, n - k, out, "frame")


def dual_structure_check(
    coframe: Sequence[Form],
    constants: Mapping[tuple[int, int, int], object],
    fields: Sequence[VecField] | None = None,
    anchor: str = "we have for their dual one-forms",
) -> Report:
    """Check d(w^k) = -sum_{i<j} c^k_ij w^i ^ w^j for the given coframe.

    ``constants`` maps (k, i, j) (0-based, any i != j) to c^k_ij; missing
    entries are zero and (k, j, i) defaults to -c^k_ij.  When the dual frame
    ``fields`` are given, [e_i, e_j] = c^k_ij e_k is checked as well.
    """
    rep = Report("dual-structure")
    m = len(coframe)
    c = {}
    for (k, i, j), v in constants.items():
        c[(k, i, j)] = as_expr(v)
        c.setdefault((k, j, i), -as_expr(v))
    for k in range(m):
        rhs = Form(coframe[0].chart, 2, {})
        for i in range(m):
            for j in range(i + 1, m):
                ckij = c.get((k, i, j))
                if ckij is not None and not ckij.iszero:
                    rhs = rhs - wedge(coframe[i], coframe[j]) * ckij
        diff_form = ext_d(coframe[k]) - rhs
        rep.add(_form_check(f"d-omega-{k + 1}", anchor, diff_form))
    if fields is not None:
        for i in range(m):
            for j in range(i + 1, m):
                br = lie_vec(fields[i], fields[j])
                expect = VecField(fields[0].chart, [0] * fields[0].chart.dim)
                for k in range(m):
                    ckij = c.get((k, i, j))
                    if ckij is not None:
                        expect = expect + fields[k] * ckij
                res = br - expect
                rep.add(
                    Check(
                        f"bracket-{i + 1}{j + 1}",
                        anchor,
                        "pass" if res.iszero else "fail",
                        str(res),
                    )
                )
    return rep


def _form_check(check_id: str, anchor: str, residual: Form) -> Check:
    return Check(check_id, anchor, "pass" if residual.iszero else "fail", str(residual))


# text literals ------------------------------------------------------------------

_WEDGE = re.compile(r"∧|/\\")


def parse_form(text: str, chart: Chart = EULER) -> Form:
    """Parse a coordinate-basis form literal such as ``"B(r)*(d psi + cos(theta) d phi)"``.

    ``d <coord>`` is a basis one-form; juxtaposition multiplies; ``∧`` or
    ``/\\`` (or ``|``) is the wedge product.
    """
    text = _WEDGE.sub("|", text)
    names = "|".join(sorted(chart.coords, key=len, reverse=True))
    text = re.sub(rf"(?<![\w.])d\s*({names})\b", r"__d_\1", text)
    text = re.sub(r"(?<=[\w)])\s+(?=__d_)", "*", text)
    tree = ast.parse(_preprocess(text), mode="eval").body
    val = _form_eval(tree, chart)
    if isinstance(val, Expr):
        return Form.scalar(chart, val)
    return val


def _has_form(node: ast.AST) -> bool:
    return any(isinstance(n, ast.Name) and n.id.startswith("__d_") for n in ast.walk(node))


def _form_eval(node: ast.AST, chart: Chart):
    if not _has_form(node):
        return tree_to_expr(node)
    if isinstance(node, ast.Name):
        return chart.d(node.id[4:])
    if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
        v = _form_eval(node.operand, chart)
        return -v if isinstance(node.op, ast.USub) else v
    if isinstance(node, ast.BinOp):
        a = _form_eval(node.left, chart)
        b = _form_eval(node.right, chart)
        if isinstance(a, Expr):
            a = Form.scalar(chart, a) if isinstance(node.op, (ast.Add, ast.Sub)) else a
        if isinstance(b, Expr) and isinstance(node.op, (ast.Add, ast.Sub)):
            b = Form.scalar(chart, b)
        if isinstance(node.op, ast.Add):
            return a + b
        if isinstance(node.op, ast.Sub):
            return a - b
        if isinstance(node.op, ast.Mult):
            if isinstance(a, Form) and isinstance(b, Form):
                raise DegreeError("use the wedge operator between forms")
            return a * b if isinstance(a, Form) else b * a
        if isinstance(node.op, ast.Div):
            if isinstance(b, Form):
                raise DegreeError("cannot divide by a form")
            return a / b
        if isinstance(node.op, ast.BitOr):
            return wedge(a, b)
    raise SymcoreError(f"unsupported form syntax: {ast.dump(node)}")
