"""Ball-arithmetic evaluation and the guarded zero test."""

from __future__ import annotations

import contextlib
import os
import random
from fractions import Fraction
from typing import Mapping

import flint

from .expr import (
    _POOL,
    CanonicalizationMismatch,
    DomainError,
    Expr,
    Symbol,
    _key_of,
    _used,
    as_expr,
)

__all__ = [
    "precision",
    "default_precision",
    "eval_numeric",
    "is_zero",
    "random_point",
    "to_arb",
]

_ZERO_GUARD_POINTS = 20


def default_precision() -> int:
    return int(os.environ.get("VERIFY_PRECISION_BITS", "128"))


@contextlib.contextmanager
def precision(bits: int):
    old = flint.ctx.prec
    flint.ctx.prec = bits
    try:
        yield
    finally:
        flint.ctx.prec = old


def to_arb(v) -> flint.arb:
    if isinstance(v, flint.arb):
        return v
    if isinstance(v, bool):
        raise TypeError("bool is not a numeric value")
    if isinstance(v, int):
        return flint.arb(v)
    if isinstance(v, Fraction):
        return flint.arb(flint.fmpq(v.numerator, v.denominator))
    if isinstance(v, str):
        try:
            return to_arb(Fraction(v))
        except ValueError:
            from .parser import parse

            return to_arb(parse(v))
    if isinstance(v, Expr):
        if v.free_symbols() and not _constant_tower(v):
            raise DomainError(f"point value {v} is not constant")
        return _eval(v, {}, {})
    if isinstance(v, float):
        return flint.arb(v)
    raise TypeError(f"unsupported point value {v!r}")


def _constant_tower(e: Expr) -> bool:
    for s in e.free_symbols():
        if s.kind != "radical" or not _constant_tower(s.radicand):
            return False
    return True


def _gen_value(i: int, pt: Mapping[str, flint.arb], cache: dict) -> flint.arb:
    if i in cache:
        return cache[i]
    sym = _POOL.symbols[i]
    if sym.key in pt:
        v = pt[sym.key]
    elif sym.kind in ("sin", "cos"):
        if sym.base not in pt:
            raise DomainError(f"no value given for {sym.base}")
        v = pt[sym.base].sin() if sym.kind == "sin" else pt[sym.base].cos()
    elif sym.kind == "radical":
        rad = _eval(sym.radicand, pt, cache)
        if rad.is_zero():
            v = flint.arb(0)
        elif rad > 0:
            v = rad.sqrt()
        elif rad < 0:
            raise DomainError(f"negative radicand {sym.radicand}")
        else:
            raise DomainError(f"sign of radicand {sym.radicand} undecided at this precision")
    else:
        raise DomainError(f"no value given for {sym.name}")
    cache[i] = v
    return v


def _poly_eval(p, n: int, pt, cache) -> flint.arb:
    if p.is_zero():
        return flint.arb(0)
    idx = _used(p, n)
    vals = {i: _gen_value(i, pt, cache) for i in idx}
    powers: dict[tuple[int, int], flint.arb] = {}
    total = flint.arb(0)
    for exps, c in p.terms():
        t = flint.arb(int(c))
        for i in idx:
            e = exps[i]
            if e:
                key = (i, e)
                if key not in powers:
                    powers[key] = vals[i] ** e
                t = t * powers[key]
        total += t
    return total


def _eval(e: Expr, pt, cache) -> flint.arb:
    num = _poly_eval(e._num, e._n, pt, cache)
    den = _poly_eval(e._den, e._n, pt, cache)
    if den.contains(0):
        raise DomainError(f"denominator of {e} vanishes (or is undecided) at this point")
    return num / den


def _normalize_point(point: Mapping) -> dict[str, flint.arb]:
    return {_key_of(k): to_arb(v) for k, v in point.items()}


def eval_numeric(e, point: Mapping, bits: int | None = None) -> flint.arb:
    """Rigorous ball enclosure of ``e`` at ``point``.

    ``point`` maps symbols (or their keys) to rationals, ``"p/q"`` strings,
    constant expressions such as ``1 + sqrt(2)``, or arb balls.  Derivative
    symbols of formal functions need their own values.
    """
    e = as_expr(e)
    bits = bits or default_precision()
    with precision(bits):
        return _eval(e, _normalize_point(point), {})


def _leaf_symbols(e: Expr, out: dict[str, Symbol]) -> dict[str, Symbol]:
    for s in e.free_symbols():
        if s.kind in ("sin", "cos"):
            base = _POOL.symbols[_POOL.index[s.base]]
            out[base.key] = base
        elif s.kind == "radical":
            _leaf_symbols(s.radicand, out)
        else:
            out[s.key] = s
    return out


def _sample(sym: Symbol, rng: random.Random) -> Fraction:
    q = rng.randint(1, 9)
    if sym.kind == "coordinate" and sym.key in ("theta", "psi", "phi", "psi_p", "psi_pp"):
        # keep sin(theta) away from zero: the chart excludes the poles
        return Fraction(rng.randint(q // 2 + 1, 3 * q - 1), q)
    return Fraction(rng.randint(-5 * q, 5 * q), q)


def random_point(e, rng: random.Random, attempts: int = 400) -> dict[str, Fraction] | None:
    """A rational point where ``e`` and all its radicands are defined."""
    e = as_expr(e)
    leaves = _leaf_symbols(e, {})
    keys = sorted(leaves)
    for _ in range(attempts):
        pt = {k: _sample(leaves[k], rng) for k in keys}
        try:
            with precision(96):
                _eval(e, _normalize_point(pt), {})
        except DomainError:
            continue
        return pt
    return None


def is_zero(e, seed: int = 0, points: int = _ZERO_GUARD_POINTS) -> bool:
    """Canonical zero test with a numeric guard.

    The canonical form decides.  A non-zero verdict is cross-examined at
    random rational points: at least one enclosure must exclude zero, else
    the canonicalizer missed a relation and :class:`CanonicalizationMismatch`
    is raised.
    """
    e = as_expr(e)
    if e.iszero:
        return True
    rng = random.Random(seed)
    found = 0
    for _ in range(points):
        pt = random_point(e, rng)
        if pt is None:
            break
        found += 1
        v = eval_numeric(e, pt, 128)
        if not v.contains(0):
            return False
    if found == 0:
        raise DomainError(f"could not find a point where {e} is defined")
    raise CanonicalizationMismatch(f"canonical form {e} is non-zero but vanishes at {found} random points")
