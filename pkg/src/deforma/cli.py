"""deforma command line: verify | spectrum | profile | deriv.

Tables go to stdout or, with --out, to a file written atomically.  CSV
uses %.12g for numbers; JSON is {"meta": {...}, "data": {column: [...]}}.
Exit codes: 0 ok, 1 verification failure, 2 usage, 3 numeric domain.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
import tempfile
from typing import Any, Sequence

import numpy as np

from . import dcalc, fractional, qcalc, qpotential, spectral, verify
from .core import Grid, parse_expression
from .errors import DeformaError, ExpressionError

EXIT_OK, EXIT_VERIFY, EXIT_USAGE, EXIT_DOMAIN = 0, 1, 2, 3

JSON_SCHEMA = {
    "type": "object",
    "required": ["meta", "data"],
    "additionalProperties": False,
    "properties": {
        "meta": {"type": "object", "required": ["command", "columns"]},
        "data": {
            "type": "object",
            "additionalProperties": {
                "type": "array",
                "items": {"type": ["number", "string", "null"]},
            },
        },
    },
}


class Table:
    def __init__(self, columns: dict[str, Sequence], meta: dict[str, Any]):
        self.columns = columns
        self.meta = dict(meta, columns=list(columns))

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(self.columns)
        for vals in zip(*self.columns.values()):
            w.writerow([_fmt(v) for v in vals])
        return buf.getvalue()

    def to_json(self) -> str:
        data = {k: [_json_value(v) for v in vs] for k, vs in self.columns.items()}
        meta = {k: _json_value(v) for k, v in self.meta.items()}
        return json.dumps({"meta": meta, "data": data}, indent=2, allow_nan=False) + "\n"


def _fmt(v) -> str:
    if isinstance(v, str):
        return v
    if isinstance(v, (int, np.integer)) and not isinstance(v, bool):
        return str(int(v))
    return "%.12g" % float(v)


def _json_value(v):
    if isinstance(v, (list, tuple)):
        return [_json_value(x) for x in v]
    if isinstance(v, np.integer):
        return int(v)
    if isinstance(v, (float, np.floating)):
        return None if not math.isfinite(float(v)) else float(v)
    return v


def write_atomic(path: str, text: str) -> None:
    folder = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(prefix=".deforma-", dir=folder)
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def emit(text: str, out: str | None) -> None:
    if out:
        write_atomic(out, text)
    else:
        sys.stdout.write(text)


# -- argument parsing ------------------------------------------------------------

def _output_flags(p, formats=("csv", "json"), default="csv"):
    p.add_argument("--format", choices=formats, default=default)
    p.add_argument("--out", help="write here (atomically) instead of stdout")


def _grid_flags(p):
    p.add_argument("-L", "--L", type=float, default=8.0, help="half width of the grid")
    p.add_argument("-N", "--N", type=int, default=401, help="number of grid points")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="deforma", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="run the identity suite")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--only", action="append", choices=verify.MODULES, help="restrict to a module (repeatable)")
    _output_flags(p, ("text", "csv", "json"), "text")

    p = sub.add_parser("spectrum", help="energy levels")
    p.add_argument("--method", required=True, choices=("q", "wkb", "numeric", "dunkl"))
    p.add_argument("--q", type=float)
    p.add_argument("--alpha", type=float)
    p.add_argument("--D", type=float)
    p.add_argument("--nmax", type=int, default=4)
    _grid_flags(p)
    _output_flags(p)

    p = sub.add_parser("profile", help="density and quantum-potential profiles")
    p.add_argument("--kind", required=True, choices=("density", "qp", "qp-check"))
    p.add_argument("--D", type=float)
    p.add_argument("--p", type=float, help="momentum (density)")
    p.add_argument("--r", help="amplitude expression in x (qp, qp-check)")
    p.add_argument("--parity", choices=("even", "odd"))
    _grid_flags(p)
    _output_flags(p)

    p = sub.add_parser("deriv", help="evaluate a deformed or fractional derivative")
    p.add_argument("--op", required=True, choices=("q", "Q", "caputo", "riesz", "feller", "dunkl"))
    p.add_argument("--f", required=True, help="function of x")
    p.add_argument("--q", type=float)
    p.add_argument("--Q", type=float)
    p.add_argument("--alpha", type=float)
    p.add_argument("--D", type=float)
    p.add_argument("--at", type=float, help="single point; omit for a grid")
    _grid_flags(p)
    _output_flags(p)
    return parser


_REQUIRED = {
    ("spectrum", "q"): ("q",),
    ("spectrum", "wkb"): ("alpha",),
    ("spectrum", "numeric"): ("alpha",),
    ("spectrum", "dunkl"): ("D",),
    ("profile", "density"): ("D", "p"),
    ("profile", "qp"): ("D", "r", "parity"),
    ("profile", "qp-check"): ("D", "r", "parity"),
    ("deriv", "q"): ("q",),
    ("deriv", "Q"): ("Q",),
    ("deriv", "caputo"): ("alpha",),
    ("deriv", "riesz"): ("alpha",),
    ("deriv", "feller"): ("alpha",),
    ("deriv", "dunkl"): ("D",),
}


def _check_required(parser, args) -> None:
    key = (args.command, getattr(args, "method", None) or getattr(args, "kind", None) or getattr(args, "op", None))
    missing = [name for name in _REQUIRED.get(key, ()) if getattr(args, name) is None]
    if missing:
        parser.error(f"{args.command} {key[1]} needs " + ", ".join("--" + m for m in missing))
    if hasattr(args, "N") and args.N < 2:
        parser.error("-N must be at least 2")
    if hasattr(args, "L") and not args.L > 0:
        parser.error("-L must be positive")


def _params(args) -> dict[str, Any]:
    skip = {"out", "format"}
    return {k: v for k, v in vars(args).items() if v is not None and k not in skip}


# -- commands --------------------------------------------------------------------

def cmd_verify(args) -> tuple[str, int]:
    results, infos = verify.run(args.seed, args.only)
    code = EXIT_OK if all(r.passed for r in results) else EXIT_VERIFY
    if args.format == "text":
        return verify.format_report(results, infos), code
    rows = [(r.module, r.name, r.status, r.max_error, r.tol, "") for r in results]
    rows += [(i.module, i.name, "INFO", float("nan"), float("nan"), i.text) for i in infos]
    names = ("module", "check", "status", "max_error", "tol", "note")
    cols = {n: [row[j] for row in rows] for j, n in enumerate(names)}
    meta = dict(_params(args), passed=code == EXIT_OK)
    return _render(Table(cols, meta), args.format), code


def cmd_spectrum(args) -> Table:
    if args.method == "q":
        res, param = spectral.q_oscillator_energies(args.q, args.nmax), args.q
    elif args.method == "wkb":
        res, param = spectral.wkb_energies(args.alpha, args.nmax), args.alpha
    elif args.method == "numeric":
        res = spectral.fractional_oscillator_numeric(args.alpha, args.L, args.N, args.nmax + 1)
        param = args.alpha
    else:
        res, param = spectral.d_oscillator_energies(args.D, args.nmax), args.D
    e = res.energies
    cols = {"n": list(range(e.size)), "energy": list(e), "method": [res.method] * e.size, "param": [param] * e.size}
    return Table(cols, _params(args))


def _masked(fn, xi: np.ndarray, ok: np.ndarray) -> np.ndarray:
    out = np.full(xi.shape, np.nan)
    if np.any(ok):
        out[ok] = np.real(np.atleast_1d(fn(xi[ok])))
    return out


def cmd_profile(args) -> Table:
    grid = Grid.symmetric(args.L, args.N)
    xi = grid.abscissae
    meta = _params(args)
    if args.kind == "density":
        prof = spectral.probability_density(args.p, args.D, grid)
        return Table({"xi": list(xi), "rho": list(np.real(prof.values))}, meta)
    r = parse_expression(args.r)
    with np.errstate(all="ignore"):
        amp = np.real(r(xi))
    # the quantum potential is undefined at xi = 0 and where r vanishes
    ok = (xi != 0.0) & (np.abs(amp) >= qpotential.AMPLITUDE_FLOOR)
    if args.kind == "qp":
        vals = _masked(lambda x: qpotential.qp_deformed(r, args.D, args.parity, x), xi, ok)
    else:
        vals = _masked(lambda x: qpotential.qp_relation_values(r, args.D, args.parity, x), xi, ok)
        if np.any(ok):
            meta.update(qpotential.relation_meta(vals[ok], args.D, args.parity))
    meta["masked_points"] = int(np.count_nonzero(~ok))
    return Table({"xi": list(xi), "value_re": list(vals), "value_im": [0.0] * xi.size}, meta)


def _deriv_op(args, f):
    op = args.op
    if op == "q":
        return qcalc.q_derivative(f, args.q)
    if op == "Q":
        return qcalc.Q_derivative(f, args.Q)
    if op == "dunkl":
        return dcalc.d_derivative(f, args.D)
    if op == "caputo":
        return lambda x: np.array([fractional.caputo(f, args.alpha, float(t)) for t in np.atleast_1d(x)])
    if op == "riesz":
        return lambda x: fractional.riesz(f, args.alpha, x)
    return lambda x: fractional.feller(f, args.alpha, x)


def cmd_deriv(args) -> Table:
    f = parse_expression(args.f)
    g = _deriv_op(args, f)
    meta = _params(args)
    if args.at is not None:
        val = complex(np.atleast_1d(g(args.at))[0])
        return Table({"x": [args.at], "value": [val.real]}, meta)
    grid = Grid.symmetric(args.L, args.N)
    xi = grid.abscissae
    if args.op in ("riesz", "feller"):
        profile = (fractional.riesz_profile if args.op == "riesz" else fractional.feller_profile)(f, args.alpha, grid)
        vals = np.real(profile.values)
        ok = np.ones(xi.shape, bool)
    else:
        # q, Q and dunkl divide by x; caputo needs x > 0
        ok = xi > 0.0 if args.op == "caputo" else xi != 0.0
        vals = _masked(g, xi, ok)
    meta["masked_points"] = int(np.count_nonzero(~ok))
    return Table({"xi": list(xi), "value_re": list(vals), "value_im": [0.0] * xi.size}, meta)


def _render(table: Table, fmt: str) -> str:
    return table.to_json() if fmt == "json" else table.to_csv()


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        _check_required(parser, args)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else EXIT_OK
    try:
        if args.command == "verify":
            text, code = cmd_verify(args)
        else:
            handler = {"spectrum": cmd_spectrum, "profile": cmd_profile, "deriv": cmd_deriv}[args.command]
            table = handler(args)
            text, code = _render(table, args.format), EXIT_OK
    except ExpressionError as exc:
        print(f"deforma: {exc}\n{exc.caret()}", file=sys.stderr)
        return EXIT_USAGE
    except DeformaError as exc:
        print(f"deforma: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    emit(text, args.out)
    return code


if __name__ == "__main__":
    sys.exit(main())
