"""Adaptive classical RK4 with step-doubling error control.

Arithmetic is done on arb midpoints at the working precision, so the only
error of note is the truncation error the controller bounds.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

import flint

from .symcore.numeric import default_precision, precision, to_arb

__all__ = ["integrate", "OdeResult", "StepLimit"]

Vec = list[flint.arb]
Rhs = Callable[[flint.arb, Vec], Vec]


class StepLimit(RuntimeError):
    pass


@dataclass
class OdeResult:
    xs: list[flint.arb]
    ys: list[Vec]
    steps: int
    rejected: int


def _mid(v: flint.arb) -> flint.arb:
    return v.mid()


def _rk4(f: Rhs, x, y: Vec, h) -> Vec:
    k1 = f(x, y)
    k2 = f(x + h / 2, [a + h / 2 * b for a, b in zip(y, k1)])
    k3 = f(x + h / 2, [a + h / 2 * b for a, b in zip(y, k2)])
    k4 = f(x + h, [a + h * b for a, b in zip(y, k3)])
    return [_mid(a + h / 6 * (b + 2 * c + 2 * d + e)) for a, b, c, d, e in zip(y, k1, k2, k3, k4)]


def integrate(
    f: Rhs,
    x0,
    y0: Sequence,
    outputs: Sequence,
    *,
    tol: float = 1e-12,
    h0: float = 1e-3,
    max_steps: int = 200_000,
    bits: int | None = None,
) -> OdeResult:
    """Integrate y' = f(x, y) from x0 and report y at each of ``outputs`` (increasing).

    A step of size h is accepted when the two-half-steps result differs from
    the single step by at most 15 * tol (the Richardson estimate of the local
    error of the finer result is that difference over 15).
    """
    bits = bits or default_precision()
    with precision(bits):
        x = to_arb(x0)
        y = [to_arb(v) for v in y0]
        targets = [to_arb(v) for v in outputs]
        h = to_arb(h0)
        tol_a = to_arb(tol)
        xs, ys = [], []
        steps = rejected = 0
        for target in targets:
            while True:
                remaining = target - x
                if remaining.is_zero() or remaining < 0:
                    break
                last = False
                if not (h < remaining):
                    h = remaining
                    last = True
                full = _rk4(f, x, y, h)
                half = _rk4(f, x, y, h / 2)
                fine = _rk4(f, x + h / 2, half, h / 2)
                err = max((abs(a - b) for a, b in zip(full, fine)), key=lambda v: v.mid())
                steps += 1
                if steps > max_steps:
                    raise StepLimit(f"more than {max_steps} steps before x = {target}")
                if err.mid() <= (15 * tol_a).mid():
                    # Richardson extrapolation of the accepted pair
                    y = [_mid(b + (b - a) / 15) for a, b in zip(full, fine)]
                    x = target if last else _mid(x + h)
                    grow = 2 if err.mid() * 64 < (15 * tol_a).mid() else 1
                    h = h * grow if not last else h
                    if last:
                        break
                else:
                    rejected += 1
                    h = h / 2
            xs.append(x)
            ys.append(list(y))
        return OdeResult(xs, ys, steps, rejected)
