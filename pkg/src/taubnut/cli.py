"""verify: run suites, print numeric tables or the discrepancy ledger."""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction

from . import __version__
from .report import REPORT_SCHEMA
from .suites import SUITES, BadParams, Params, UnknownSuite, run_suite

TABLES = ("f", "K", "charge-convergence")
_FIELDS = ("id", "paper_anchor", "status", "residual", "ms")


def _rational(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a rational: {text!r}") from exc


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="verify",
        description="Symbolic and interval checks of the Taub-NUT computations.",
    )
    p.add_argument("target", help=f"suite ({', '.join(SUITES)}), 'table' or 'ledger'")
    p.add_argument("quantity", nargs="?", help=f"table quantity: {', '.join(TABLES)}")
    p.add_argument("--m", help="mass parameter (rational, e.g. 3/2); symbolic if omitted")
    p.add_argument("--l", help="NUT parameter (rational, non-zero); symbolic if omitted")
    p.add_argument("--c0", help="integration constant c0 > 0; symbolic if omitted")
    p.add_argument("--c1", help="integration constant c1; symbolic if omitted")
    p.add_argument("--n", type=int, default=1, help="lens index (psi period 4 pi / n)")
    p.add_argument("--case", choices=("spacelike", "timelike"), help="restrict to one case")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", help="write to this file instead of stdout")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--timing", action="store_true", help="record wall time per check (breaks byte-identity)")
    p.add_argument("--start", type=_rational, help="table: first radius")
    p.add_argument("--stop", type=_rational, help="table: last radius")
    p.add_argument("--step", type=_rational, help="table: radius step")
    p.add_argument("--digits", type=int, default=20, help="table: significant digits")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    return p


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def report_csv(report) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=_FIELDS, lineterminator="\n")
    w.writeheader()
    for row in report.to_dict()["checks"]:
        w.writerow({k: "" if row[k] is None else row[k] for k in _FIELDS})
    return buf.getvalue()


def _radii(args, default):
    start, stop, step = args.start, args.stop, args.step
    if start is None and stop is None and step is None:
        return list(default)
    if None in (start, stop, step) or step <= 0 or stop < start:
        raise BadParams("tables need --start <= --stop and --step > 0")
    out, x = [], start
    while x <= stop:
        out.append(x)
        x += step
    return out


def emit_table(quantity: str, params: Params, radii, digits: int = 20) -> str:
    """CSV of f(r), Taub-NUT K(r') or the charge values at each radius."""
    from .catalog import f_of, taub_nut
    from .charges import dual_charge, komar_mass
    from .curvature import christoffel_curvature
    from .symcore import DomainError, eval_numeric

    if quantity not in TABLES:
        raise BadParams(f"unknown table {quantity!r}; choose from {', '.join(TABLES)}")
    if not (params.m.is_rational() and params.l.is_rational()):
        raise BadParams("tables need numeric --m and --l")

    def fmt(v):
        return v.mid().str(digits, radius=False)

    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    if quantity == "f":
        w.writerow(["r", "f"])
        cols = [f_of(params.m, params.l)]
    elif quantity == "K":
        w.writerow(["rp", "K"])
        cols = [christoffel_curvature(taub_nut(params.m, params.l).metric).kretschmann]
    else:
        w.writerow(["r", "komar", "komar_error", "dual", "dual_error"])
        model = taub_nut(params.m, params.l)
        k, d = komar_mass(model), dual_charge(model)
    for x in radii:
        try:
            if quantity == "charge-convergence":
                kv = eval_numeric(k.value, {"r": x})
                dv = eval_numeric(d.value, {"r": x})
                kl, dl = eval_numeric(k.limit, {}), eval_numeric(d.limit, {})
                w.writerow([str(x), fmt(kv), fmt(abs(kv - kl)), fmt(dv), fmt(abs(dv - dl))])
            else:
                w.writerow([str(x)] + [fmt(eval_numeric(c, {"r": x})) for c in cols])
        except DomainError as exc:
            raise DomainError(f"row r = {x}: {exc}") from exc
    return buf.getvalue()


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        params = Params(args.m, args.l, args.c0, args.c1, args.n, args.case, args.seed)
        if args.target == "table":
            if args.quantity is None:
                raise BadParams(f"table needs a quantity: {', '.join(TABLES)}")
            default = (10**3, 10**4, 10**5, 10**6) if args.quantity == "charge-convergence" else [Fraction(k, 2) for k in range(-6, 11)]
            _emit(emit_table(args.quantity, params, _radii(args, default), args.digits), args.out)
            return 0
        if args.target == "ledger":
            from .crossref import mismatch_ledger

            reports = [run_suite(s, params) for s in SUITES if s != "all"]
            _emit(json.dumps(mismatch_ledger(reports), indent=2) + "\n", args.out)
            return 0
        if args.quantity is not None:
            raise BadParams(f"unexpected argument {args.quantity!r}")
        report = run_suite(args.target, params, timing=args.timing)
    except (BadParams, UnknownSuite) as exc:
        msg = exc.args[0] if exc.args else str(exc)
        print(f"verify: error: {msg}", file=sys.stderr)
        return 2
    if args.format == "json":
        _emit(report.to_json(), args.out)
    else:
        _emit(report_csv(report), args.out)
    return 0 if report.passed else 1


__all__ = ["main", "build_parser", "emit_table", "report_csv", "REPORT_SCHEMA"]

if __name__ == "__main__":
    raise SystemExit(main())
