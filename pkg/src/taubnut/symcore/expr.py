"""Canonical exact scalars.

An :class:`Expr` is a reduced fraction ``num/den`` of integer multivariate
polynomials in a shared, append-only pool of generators.  Generators are
coordinates, parameters, formal functions of one coordinate (with first and
second derivatives), the trig atoms ``sin x``/``cos x`` of a coordinate, and
square roots of polynomial radicands.

Canonical form:

* ``sin x`` appears at most linearly (``sin^2 x -> 1 - cos^2 x``);
* each square root appears at most linearly (``s^2 -> radicand``);
* the denominator is free of sines and square roots (rationalized by
  conjugates), shares no factor with the numerator, and has a positive
  leading coefficient.

Two expressions are equal iff their canonical forms are identical.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Union

import flint

__all__ = [
    "Symbol",
    "Expr",
    "SymcoreError",
    "DivisionByZero",
    "DerivativeOrderError",
    "InconsistentBinding",
    "DomainError",
    "CanonicalizationMismatch",
    "NotRepresentable",
    "coordinate",
    "parameter",
    "function",
    "const",
    "sin",
    "cos",
    "sqrt",
    "diff",
    "substitute",
    "as_expr",
    "MAX_DERIVATIVE_ORDER",
]

MAX_DERIVATIVE_ORDER = 2


class SymcoreError(Exception):
    pass


class DivisionByZero(SymcoreError, ZeroDivisionError):
    pass


class DerivativeOrderError(SymcoreError):
    pass


class InconsistentBinding(SymcoreError):
    pass


class DomainError(SymcoreError, ValueError):
    pass


class CanonicalizationMismatch(SymcoreError):
    """Symbolic and numeric zero verdicts disagree."""


class NotRepresentable(SymcoreError):
    pass


_ANGLE_DISPLAY = {"psi": "psi", "theta": "theta", "phi": "phi"}


@dataclass(frozen=True)
class Symbol:
    """One polynomial generator.

    ``kind`` is one of ``coordinate``, ``parameter``, ``function`` (a formal
    function or one of its derivatives, ``order`` 0..2), ``sin``, ``cos`` or
    ``radical``.
    """

    key: str
    kind: str
    base: str | None = None
    order: int = 0
    arg: str | None = None
    radicand: "Expr | None" = field(default=None, compare=False, repr=False)

    @property
    def name(self) -> str:
        if self.kind == "function":
            return f"{self.base}{chr(39) * self.order}({self.arg})"
        if self.kind in ("sin", "cos"):
            return f"{self.kind}({self.base})"
        if self.kind == "radical":
            return f"sqrt({self.radicand})"
        return self.key

    @property
    def is_algebraic(self) -> bool:
        return self.kind in ("sin", "radical")

    def __str__(self) -> str:
        return self.name


class _Pool:
    """Append-only generator table shared by all expressions."""

    def __init__(self) -> None:
        self.symbols: list[Symbol] = []
        self.index: dict[str, int] = {}
        self.radicals: dict[str, str] = {}
        self._ctxs: dict[int, flint.fmpz_mpoly_ctx] = {}
        self._lock = threading.RLock()

    def intern(self, sym: Symbol) -> int:
        with self._lock:
            i = self.index.get(sym.key)
            if i is not None:
                old = self.symbols[i]
                if (old.kind, old.base, old.order, old.arg) != (sym.kind, sym.base, sym.order, sym.arg):
                    raise SymcoreError(f"symbol {sym.key!r} already declared as {old.kind}")
                return i
            self.symbols.append(sym)
            self.index[sym.key] = len(self.symbols) - 1
            return len(self.symbols) - 1

    def ctx(self, n: int | None = None) -> flint.fmpz_mpoly_ctx:
        if n is None:
            n = len(self.symbols)
        c = self._ctxs.get(n)
        if c is None:
            names = tuple(f"g{i}" for i in range(n)) or ("g_",)
            c = flint.fmpz_mpoly_ctx.get(names, "lex")
            self._ctxs[n] = c
        return c

    def gen(self, i: int, n: int | None = None) -> flint.fmpz_mpoly:
        return self.ctx(n).gens()[i]


_POOL = _Pool()


def _width(n: int) -> int:
    # contexts always carry at least one generator
    return max(n, 1)


def _lift(p: flint.fmpz_mpoly, n_from: int, n_to: int) -> flint.fmpz_mpoly:
    if n_from == n_to:
        return p
    return p.project_to_context(_POOL.ctx(n_to))


def _used(p: flint.fmpz_mpoly, n: int) -> list[int]:
    if n == 0:
        return []
    return [i for i, d in enumerate(p.degrees()) if d > 0 and i < n]


def _split(p: flint.fmpz_mpoly, i: int, n: int) -> dict[int, dict]:
    """Group the terms of ``p`` by the exponent of generator ``i``."""
    groups: dict[int, dict] = {}
    for exps, c in p.terms():
        k = exps[i]
        e = list(exps)
        e[i] = 0
        groups.setdefault(k, {})[tuple(e)] = c
    return groups


def _relation(i: int, n: int) -> flint.fmpz_mpoly:
    """Value of ``g_i**2`` for an algebraic generator."""
    sym = _POOL.symbols[i]
    if sym.kind == "sin":
        j = _POOL.index[f"cos_{sym.base}"]
        c = _POOL.gen(j, n)
        return 1 - c * c
    rad = sym.radicand
    assert rad is not None and rad._den.is_one()
    return _lift(rad._num, rad._n, n)


def _reduce(p: flint.fmpz_mpoly, n: int) -> flint.fmpz_mpoly:
    if p.is_zero() or n == 0:
        return p
    degs = p.degrees()
    for i in range(n - 1, -1, -1):
        if degs[i] < 2 or not _POOL.symbols[i].is_algebraic:
            continue
        ctx = _POOL.ctx(n)
        rel = _relation(i, n)
        g = _POOL.gen(i, n)
        out = ctx.from_dict({})
        powers = {0: ctx.from_dict({(0,) * n: 1})}
        for k, terms in _split(p, i, n).items():
            h = k // 2
            if h not in powers:
                powers[h] = rel**h
            part = ctx.from_dict(terms) * powers[h]
            if k % 2:
                part = part * g
            out = out + part
        p = out
        degs = p.degrees() if not p.is_zero() else (0,) * n
    return p


def _canon(num: flint.fmpz_mpoly, den: flint.fmpz_mpoly, n: int) -> "Expr":
    if den.is_zero():
        raise DivisionByZero("division by an expression that is identically zero")
    num = _reduce(num, n)
    den = _reduce(den, n)
    if den.is_zero():
        raise DivisionByZero("denominator reduces to zero")
    if num.is_zero():
        return Expr._raw(num, _POOL.ctx(_width(n)).from_dict({(0,) * _width(n): 1}), n)
    if n:
        for i in range(n - 1, -1, -1):
            if not _POOL.symbols[i].is_algebraic or den.degrees()[i] == 0:
                continue
            ctx = _POOL.ctx(n)
            groups = _split(den, i, n)
            d0 = ctx.from_dict(groups.get(0, {}))
            d1 = ctx.from_dict(groups.get(1, {}))
            conj = d0 - d1 * _POOL.gen(i, n)
            num = _reduce(num * conj, n)
            den = _reduce(den * conj, n)
            if den.is_zero():
                raise SymcoreError(f"zero divisor while rationalizing by {_POOL.symbols[i]}")
            if den.is_constant():
                break
    g = num.gcd(den)
    if not g.is_one():
        num = num / g
        den = den / g
    if den.leading_coefficient() < 0:
        num, den = -num, -den
    return Expr._raw(num, den, n)


Scalar = Union[int, Fraction, "Expr"]


class Expr:
    """Immutable canonical fraction; use the module constructors to build one."""

    __slots__ = ("_num", "_den", "_n", "_hash")

    @classmethod
    def _raw(cls, num, den, n) -> "Expr":
        self = object.__new__(cls)
        self._num = num
        self._den = den
        self._n = n
        self._hash = None
        return self

    # construction -----------------------------------------------------
    @staticmethod
    def from_rational(q: int | Fraction) -> "Expr":
        q = Fraction(q)
        ctx = _POOL.ctx(1)
        zero = (0,)
        return Expr._raw(ctx.from_dict({zero: q.numerator}), ctx.from_dict({zero: q.denominator}), 0)

    @staticmethod
    def from_symbol(sym: Symbol) -> "Expr":
        i = _POOL.intern(sym)
        n = len(_POOL.symbols)
        ctx = _POOL.ctx(n)
        return Expr._raw(ctx.gens()[i], ctx.from_dict({(0,) * n: 1}), n)

    # structure ----------------------------------------------------------
    def _at(self, n: int):
        w = _width(n)
        return _lift(self._num, _width(self._n), w), _lift(self._den, _width(self._n), w)

    @staticmethod
    def _common(a: "Expr", b: "Expr"):
        n = max(a._n, b._n)
        an, ad = a._at(n)
        bn, bd = b._at(n)
        return n, an, ad, bn, bd

    @property
    def iszero(self) -> bool:
        """Canonical verdict only; see ``numeric.is_zero`` for the guarded test."""
        return self._num.is_zero()

    @property
    def numerator(self) -> "Expr":
        n = self._n
        return Expr._raw(self._num, _POOL.ctx(_width(n)).from_dict({(0,) * _width(n): 1}), n)

    @property
    def denominator(self) -> "Expr":
        n = self._n
        return Expr._raw(self._den, _POOL.ctx(_width(n)).from_dict({(0,) * _width(n): 1}), n)

    def is_rational(self) -> bool:
        return self._num.is_constant() and self._den.is_constant()

    def to_fraction(self) -> Fraction:
        if not self.is_rational():
            raise TypeError(f"{self} is not a rational constant")
        num = int(self._num.leading_coefficient()) if not self._num.is_zero() else 0
        return Fraction(num, int(self._den.leading_coefficient()))

    def free_symbols(self) -> set[Symbol]:
        """Generators occurring in the canonical form (not expanded through radicals)."""
        out = set()
        for p in (self._num, self._den):
            for i in _used(p, self._n):
                out.add(_POOL.symbols[i])
        return out

    def depends_on(self, sym: "Symbol | Expr | str") -> bool:
        key = _key_of(sym)
        return key in _deep_keys(self)

    def degree(self, sym: "Symbol | Expr | str") -> int:
        """Degree of the numerator in a generator (denominator must not contain it)."""
        i = _POOL.index[_key_of(sym)]
        if i >= self._n:
            return 0
        if self._den.degrees()[i]:
            raise ValueError(f"{self} has {sym} in its denominator")
        return self._num.degrees()[i] if not self._num.is_zero() else 0

    def coefficients(self, sym: "Symbol | Expr | str") -> dict[int, "Expr"]:
        """Split as ``sum(c_k * sym**k)``; the denominator must not contain ``sym``."""
        key = _key_of(sym)
        i = _POOL.index[key]
        if i >= self._n:
            return {0: self}
        if self._den.degrees()[i]:
            raise ValueError(f"{self} has {key} in its denominator")
        n = self._n
        ctx = _POOL.ctx(_width(n))
        out = {}
        for k, terms in _split(self._num, i, n).items():
            out[k] = _canon(ctx.from_dict(terms), self._den, n)
        return out

    # arithmetic ---------------------------------------------------------
    def __add__(self, other: Scalar) -> "Expr":
        if not isinstance(other, _SCALARS):
            return NotImplemented
        other = as_expr(other)
        n, an, ad, bn, bd = Expr._common(self, other)
        if ad == bd:
            return _canon(an + bn, ad, n)
        return _canon(an * bd + bn * ad, ad * bd, n)

    __radd__ = __add__

    def __neg__(self) -> "Expr":
        return Expr._raw(-self._num, self._den, self._n)

    def __pos__(self) -> "Expr":
        return self

    def __sub__(self, other: Scalar) -> "Expr":
        if not isinstance(other, _SCALARS):
            return NotImplemented
        return self + (-as_expr(other))

    def __rsub__(self, other: Scalar) -> "Expr":
        return as_expr(other) + (-self)

    def __mul__(self, other: Scalar) -> "Expr":
        if not isinstance(other, _SCALARS):
            return NotImplemented
        other = as_expr(other)
        n, an, ad, bn, bd = Expr._common(self, other)
        return _canon(an * bn, ad * bd, n)

    __rmul__ = __mul__

    def __truediv__(self, other: Scalar) -> "Expr":
        if not isinstance(other, _SCALARS):
            return NotImplemented
        other = as_expr(other)
        if other.iszero:
            raise DivisionByZero(f"division of {self} by zero")
        n, an, ad, bn, bd = Expr._common(self, other)
        return _canon(an * bd, ad * bn, n)

    def __rtruediv__(self, other: Scalar) -> "Expr":
        return as_expr(other) / self

    def __pow__(self, k: int) -> "Expr":
        if not isinstance(k, int):
            raise TypeError("only integer exponents are supported; use sqrt() for roots")
        if k < 0:
            return Expr.from_rational(1) / (self**-k)
        if k == 0:
            return Expr.from_rational(1)
        n = self._n
        w = _width(n)
        return _canon(self._num**k, self._den**k, n) if w else self

    # comparison and display ---------------------------------------------
    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            other = Expr.from_rational(other)
        if not isinstance(other, Expr):
            return NotImplemented
        n, an, ad, bn, bd = Expr._common(self, other)
        return an == bn and ad == bd

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(str(self))
        return self._hash

    def __bool__(self) -> bool:
        raise TypeError("truth value of an Expr is ambiguous; use .iszero or is_zero()")

    def __str__(self) -> str:
        num = _poly_str(self._num, self._n)
        if self._den.is_one():
            return num
        den = _poly_str(self._den, self._n)
        if not _is_atomic_str(num):
            num = f"({num})"
        if not _is_atomic_str(den):
            den = f"({den})"
        return f"{num}/{den}"

    def __repr__(self) -> str:
        return f"Expr({self})"

    def nterms(self) -> int:
        return len(self._num) + len(self._den)


def _is_atomic_str(s: str) -> bool:
    depth = 0
    for ch in s[1:] if s.startswith("-") else s:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif depth == 0 and ch in "+-*/ ":
            return False
    return True


def _poly_str(p: flint.fmpz_mpoly, n: int) -> str:
    if p.is_zero():
        return "0"
    pieces = []
    for exps, c in p.terms():
        factors = []
        for i in range(n):
            e = exps[i]
            if not e:
                continue
            name = _POOL.symbols[i].name
            factors.append(name if e == 1 else f"{name}^{e}")
        c = int(c)
        mag = abs(c)
        if not factors:
            body = str(mag)
        elif mag == 1:
            body = "*".join(factors)
        else:
            body = f"{mag}*" + "*".join(factors)
        pieces.append((c < 0, body))
    out = ("-" if pieces[0][0] else "") + pieces[0][1]
    for neg, body in pieces[1:]:
        out += (" - " if neg else " + ") + body
    return out


_SCALARS = (Expr, int, Fraction)

def as_expr(x: Scalar) -> Expr:
    if isinstance(x, Expr):
        return x
    if isinstance(x, bool):
        raise TypeError("bool is not a scalar")
    if isinstance(x, (int, Fraction)):
        return Expr.from_rational(x)
    if isinstance(x, Symbol):
        return Expr.from_symbol(x)
    raise TypeError(f"cannot convert {type(x).__name__} to Expr")


def _key_of(sym) -> str:
    if isinstance(sym, str):
        return sym
    if isinstance(sym, Symbol):
        return sym.key
    if isinstance(sym, Expr):
        syms = sym.free_symbols()
        if len(syms) != 1 or not (sym - Expr.from_symbol(next(iter(syms)))).iszero:
            raise ValueError(f"{sym} is not a bare symbol")
        return next(iter(syms)).key
    raise TypeError(f"not a symbol: {sym!r}")


def _deep_keys(e: Expr) -> set[str]:
    out = set()
    for s in e.free_symbols():
        out.add(s.key)
        if s.kind in ("sin", "cos"):
            out.add(s.base)
        elif s.kind == "radical":
            out |= _deep_keys(s.radicand)
    return out


# constructors ---------------------------------------------------------------


def coordinate(name: str) -> Expr:
    return Expr.from_symbol(Symbol(name, "coordinate"))


def parameter(name: str) -> Expr:
    return Expr.from_symbol(Symbol(name, "parameter"))


def function(base: str, arg: str = "r", order: int = 0) -> Expr:
    """Formal function ``base(arg)`` or its ``order``-th derivative."""
    if order > MAX_DERIVATIVE_ORDER:
        raise DerivativeOrderError(f"{base}: derivatives beyond order {MAX_DERIVATIVE_ORDER} are not supported")
    key = base if order == 0 else f"{base}_{order}"
    return Expr.from_symbol(Symbol(key, "function", base=base, order=order, arg=arg))


def const(q: int | Fraction | str) -> Expr:
    return Expr.from_rational(Fraction(q))


def _angle_key(x) -> str:
    key = _key_of(x)
    sym = _POOL.symbols[_POOL.index[key]] if key in _POOL.index else None
    if sym is None or sym.kind != "coordinate":
        raise NotRepresentable(f"trig functions take a coordinate symbol, got {x}")
    return key


def _trig_pair(key: str) -> tuple[Expr, Expr]:
    # cos is interned first so that sin (algebraic) reduces into it
    c = Expr.from_symbol(Symbol(f"cos_{key}", "cos", base=key))
    s = Expr.from_symbol(Symbol(f"sin_{key}", "sin", base=key))
    return s, c


def sin(x) -> Expr:
    if isinstance(x, (int, Fraction)) and x == 0 or isinstance(x, Expr) and x.iszero:
        return const(0)
    return _trig_pair(_angle_key(x))[0]


def cos(x) -> Expr:
    if isinstance(x, (int, Fraction)) and x == 0 or isinstance(x, Expr) and x.iszero:
        return const(1)
    return _trig_pair(_angle_key(x))[1]


def _poly_key(p: flint.fmpz_mpoly, n: int) -> str:
    return _poly_str(p, n)


def _radical(p: flint.fmpz_mpoly, n: int) -> Expr:
    """Square root of a squarefree canonical polynomial radicand."""
    rad = Expr._raw(p, _POOL.ctx(_width(n)).from_dict({(0,) * _width(n): 1}), n)
    tag = _poly_key(p, n)
    with _POOL._lock:
        key = _POOL.radicals.get(tag)
        if key is None:
            key = f"sqrt{len(_POOL.radicals)}"
            _POOL.radicals[tag] = key
    return Expr.from_symbol(Symbol(key, "radical", radicand=rad))


def sqrt(x: Scalar) -> Expr:
    """Principal square root.

    The radicand is split into irreducible factors; squared factors are pulled
    out as they stand and each remaining factor gets its own radical, so the
    branch assumed is the one where every such factor is positive.
    """
    e = as_expr(x)
    if e.iszero:
        return e
    n = e._n
    w = _width(n)
    ctx = _POOL.ctx(w)
    prod = e._num * e._den
    content, facs = prod.factor()
    content = int(content)
    sign = -1 if content < 0 else 1
    outside = ctx.from_dict({(0,) * w: 1})
    odd_polys = []
    for f, mult in facs:
        if mult // 2:
            outside = outside * f ** (mult // 2)
        if mult % 2:
            odd_polys.append(f)
    odd_ints = []
    if abs(content) != 1:
        for prime, mult in flint.fmpz(abs(content)).factor():
            if mult // 2:
                outside = outside * int(prime) ** (mult // 2)
            if mult % 2:
                odd_ints.append(int(prime))
    if sign < 0:
        if odd_polys:
            odd_polys[0] = -odd_polys[0]
        elif odd_ints:
            raise DomainError(f"sqrt of negative constant {e}")
        else:
            raise DomainError(f"sqrt of negative constant {e}")
    result = _canon(outside, e._den, n)
    for q in odd_ints:
        result = result * _radical(ctx.from_dict({(0,) * w: q}), n)
    for f in odd_polys:
        f = _reduce(f, n)
        if f.is_constant():
            v = int(f.leading_coefficient())
            if v < 0:
                raise DomainError(f"sqrt of negative constant in {e}")
            result = result * sqrt(v)
            continue
        result = result * _radical(f, n)
    return result


# calculus ---------------------------------------------------------------------


def _gen_derivative(i: int, xkey: str) -> Expr | None:
    """d(g_i)/dx, or None when it vanishes."""
    sym = _POOL.symbols[i]
    if sym.kind == "coordinate":
        return const(1) if sym.key == xkey else None
    if sym.kind == "parameter":
        return None
    if sym.kind == "function":
        if sym.arg != xkey:
            return None
        if sym.order + 1 > MAX_DERIVATIVE_ORDER:
            raise DerivativeOrderError(
                f"derivative of {sym.name} would exceed order {MAX_DERIVATIVE_ORDER}"
            )
        return function(sym.base, sym.arg, sym.order + 1)
    if sym.kind == "sin":
        return cos(sym.base) if sym.base == xkey else None
    if sym.kind == "cos":
        return -sin(sym.base) if sym.base == xkey else None
    if sym.kind == "radical":
        drad = diff(sym.radicand, xkey)
        if drad.iszero:
            return None
        return Expr.from_symbol(sym) * drad / (2 * sym.radicand)
    raise SymcoreError(f"unknown generator kind {sym.kind}")


def _poly_diff(p: flint.fmpz_mpoly, n: int, xkey: str) -> Expr:
    w = _width(n)
    one = _POOL.ctx(w).from_dict({(0,) * w: 1})
    total = const(0)
    for i in _used(p, n):
        dg = _gen_derivative(i, xkey)
        if dg is None:
            continue
        dp = p.derivative(i)
        total = total + Expr._raw(dp, one, n) * dg
    return total


def diff(e: Scalar, x) -> Expr:
    """Partial derivative with respect to a coordinate."""
    e = as_expr(e)
    xkey = _key_of(x)
    if xkey not in _POOL.index or _POOL.symbols[_POOL.index[xkey]].kind != "coordinate":
        raise SymcoreError(f"can only differentiate with respect to a coordinate, got {x}")
    n = e._n
    if e._num.is_zero():
        return e
    w = _width(n)
    one = _POOL.ctx(w).from_dict({(0,) * w: 1})
    dn = _poly_diff(e._num, n, xkey)
    if e._den.is_constant():
        return dn / Expr._raw(e._den, one, n)
    dd = _poly_diff(e._den, n, xkey)
    num = Expr._raw(e._num, one, n)
    den = Expr._raw(e._den, one, n)
    return (dn * den - num * dd) / (den * den)


# substitution -----------------------------------------------------------------


def _expand_bindings(bindings: Mapping) -> dict[str, Expr]:
    out: dict[str, Expr] = {}
    for k, v in bindings.items():
        out[_key_of(k)] = as_expr(v)
    # bound formal functions drag their derivative chain along
    derived: dict[str, Expr] = {}
    for key, val in list(out.items()):
        sym = _POOL.symbols[_POOL.index[key]] if key in _POOL.index else None
        if sym is None or sym.kind != "function":
            continue
        cur = val
        for order in range(sym.order + 1, MAX_DERIVATIVE_ORDER + 1):
            cur = diff(cur, sym.arg)
            dkey = f"{sym.base}_{order}"
            derived[dkey] = cur
    for dkey, val in derived.items():
        if dkey in out:
            if not (out[dkey] - val).iszero:
                raise InconsistentBinding(f"{dkey} bound to {out[dkey]}, but derivative of its base gives {val}")
        else:
            out[dkey] = val
    return out


def _image(i: int, bmap: dict[str, Expr]) -> Expr | None:
    sym = _POOL.symbols[i]
    if sym.key in bmap:
        return bmap[sym.key]
    if sym.kind in ("sin", "cos") and sym.base in bmap:
        target = bmap[sym.base]
        if target.iszero:
            return const(0) if sym.kind == "sin" else const(1)
        try:
            akey = _angle_key(target)
        except (ValueError, NotRepresentable) as exc:
            raise NotRepresentable(f"cannot substitute {sym.base} -> {target} inside {sym.name}") from exc
        s, c = _trig_pair(akey)
        return s if sym.kind == "sin" else c
    if sym.kind == "radical" and _deep_keys(sym.radicand) & bmap.keys():
        return sqrt(_subst(sym.radicand, bmap))
    return None


def _subst_poly(p: flint.fmpz_mpoly, n: int, images: dict[int, Expr]):
    """Return (numerator, denominator) polys at width ``m`` for p(images)."""
    m = max([n] + [img._n for img in images.values()])
    w = _width(m)
    ctx = _POOL.ctx(w)
    parts = {i: img._at(m) for i, img in images.items()}
    if p.is_zero():
        return ctx.from_dict({}), ctx.from_dict({(0,) * w: 1}), m
    degs = p.degrees()
    npow: dict[tuple[int, int], flint.fmpz_mpoly] = {}
    dpow: dict[tuple[int, int], flint.fmpz_mpoly] = {}

    def pw(cache, base, i, k):
        key = (i, k)
        if key not in cache:
            cache[key] = base**k
        return cache[key]

    # untouched generators keep their exponents
    mask = set(images)
    total = ctx.from_dict({})
    for exps, c in p.terms():
        keep = [0] * w
        for i in range(n):
            if i not in mask:
                keep[i] = exps[i]
        term = ctx.from_dict({tuple(keep): int(c)})
        for i in mask:
            e = exps[i]
            num_i, den_i = parts[i]
            if e:
                term = term * pw(npow, num_i, i, e)
            if degs[i] - e and not den_i.is_one():
                term = term * pw(dpow, den_i, i, degs[i] - e)
        total = total + term
    denom = ctx.from_dict({(0,) * w: 1})
    for i in mask:
        den_i = parts[i][1]
        if degs[i] and not den_i.is_one():
            denom = denom * pw(dpow, den_i, i, degs[i])
    return total, denom, m


def _subst(e: Expr, bmap: dict[str, Expr]) -> Expr:
    images = {}
    n = e._n
    for i in sorted(set(_used(e._num, n)) | set(_used(e._den, n))):
        img = _image(i, bmap)
        if img is not None:
            images[i] = img
    if not images:
        return e
    nn, nd, m1 = _subst_poly(e._num, n, images)
    dn, dd, m2 = _subst_poly(e._den, n, images)
    m = max(m1, m2)
    w = _width(m)
    nn, nd = _lift(nn, _width(m1), w), _lift(nd, _width(m1), w)
    dn, dd = _lift(dn, _width(m2), w), _lift(dd, _width(m2), w)
    return _canon(nn * dd, nd * dn, m)


def substitute(e: Scalar, bindings: Mapping) -> Expr:
    """Simultaneous substitution of symbols by expressions.

    Binding a formal function also binds its derivatives to the derivatives
    of the bound value; an explicit derivative binding must agree with it.
    Angles may only be mapped to zero or to another coordinate when they occur
    inside sin/cos.
    """
    e = as_expr(e)
    return _subst(e, _expand_bindings(bindings))
