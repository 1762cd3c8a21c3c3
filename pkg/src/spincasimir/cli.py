"""Command-line front end: ``force``, ``spectrum``, ``energy-scan``, ``verify``.

Exit codes: 0 success, 1 numerical or verification failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import contextlib
import csv
import io
import json
import math
import os
import sys
import time
from fractions import Fraction

from . import boundary as bd
from . import vacuum_energy as ve
from .errors import InputError, NumericalError
from .helicity_modes import MAX_RANK
from .spinor_core import DEFAULT_TOL
from .verification import SUITES, run_suite

UNITS = "natural (hbar=c=1)"
SIG_DIGITS = 12
EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def format_float(x):
    """Fixed 12-significant-digit rendering; scientific below 1e-3."""
    x = float(x)
    if not math.isfinite(x):
        return "null"
    if x != 0.0 and abs(x) < 1e-3:
        return f"{x:.{SIG_DIGITS - 1}e}"
    text = f"{x:.{SIG_DIGITS}g}"
    if not any(c in text for c in ".en"):
        text += ".0"
    return text


def normalize(obj):
    """Round every float to what :func:`format_float` prints."""
    if isinstance(obj, bool) or obj is None or isinstance(obj, (int, str)):
        return obj
    if isinstance(obj, float):
        return float(format_float(obj)) if math.isfinite(obj) else None
    if isinstance(obj, dict):
        return {str(k): normalize(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [normalize(v) for v in obj]
    if hasattr(obj, "item"):  # numpy scalar
        return normalize(obj.item())
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def emit_json(obj, indent=2, _level=0):
    """JSON text with the fixed float format (the stdlib encoder has no hook)."""
    pad = " " * (indent * (_level + 1))
    end = " " * (indent * _level)
    if isinstance(obj, bool) or obj is None:
        return json.dumps(obj)
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, float):
        return format_float(obj)
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{json.dumps(k)}: {emit_json(v, indent, _level + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, list):
        if not obj:
            return "[]"
        if all(not isinstance(v, (dict, list)) for v in obj):
            return "[" + ", ".join(emit_json(v) for v in obj) + "]"
        items = [pad + emit_json(v, indent, _level + 1) for v in obj]
        return "[\n" + ",\n".join(items) + "\n" + end + "]"
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def make_report(quantity, inputs, value, checks, started, timing=True, **extra):
    report = {
        "quantity": quantity,
        "inputs": inputs,
        "value": value,
        "units": UNITS,
        "checks": [c if isinstance(c, dict) else c.as_dict() for c in checks],
        "runtime_ms": (time.perf_counter() - started) * 1000.0 if timing else 0.0,
    }
    report.update(extra)
    return normalize(report)


def _csv_text(header, rows):
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([format_float(v) if isinstance(v, float) else v for v in row])
    return buf.getvalue()


def render(report, fmt, table=None):
    if fmt == "json":
        return emit_json(report) + "\n"
    if table is not None:
        return _csv_text(*table)
    rows = [("quantity", report["quantity"]), ("value", report["value"]), ("units", report["units"])]
    rows += [(f"check:{c['name']}", "pass" if c["pass"] else "fail") for c in report["checks"]]
    return _csv_text(("key", "value"), rows)


def _parse_spin(text):
    try:
        spin = Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"invalid spin {text!r}") from exc
    if spin <= 0 or (2 * spin).denominator != 1:
        raise UsageError(f"spin must be a positive multiple of 1/2, got {text}")
    return spin


def _statistics(args):
    if getattr(args, "spin", None) is not None:
        return bd.Statistics.for_spin(_parse_spin(args.spin))
    if getattr(args, "statistics", None) is not None:
        return bd.Statistics.parse(args.statistics)
    raise UsageError("give --spin or --statistics")


def _positive_distance(d):
    if not (d > 0 and math.isfinite(d)):
        raise UsageError(f"--distance must be positive, got {d}")
    return d


def cmd_force(args, tol):
    started = time.perf_counter()
    d = _positive_distance(args.distance)
    stat = _statistics(args)
    value = ve.casimir_force(stat, d)
    # force-energy consistency by central difference
    h = 1e-5 * d
    numeric = -(ve.casimir_energy(stat, d + h) - ve.casimir_energy(stat, d - h)) / (2 * h)
    rel = abs(numeric / value - 1.0)
    inputs = {"distance": d, "statistics": stat.value}
    if args.spin is not None:
        inputs["spin"] = str(_parse_spin(args.spin))
    report = make_report(
        "casimir_force",
        inputs,
        value,
        [{"name": "energy_derivative", "pass": rel < 1e-8, "residual": rel}],
        started,
        args.timing,
        expression=ve.force_expression(stat),
    )
    return report, None, EXIT_OK


def _rank(args):
    if args.rank is not None:
        m = args.rank
    elif args.spin is not None:
        m = int(2 * _parse_spin(args.spin))
    else:
        raise UsageError("give --spin or --rank")
    if not 1 <= m <= MAX_RANK:
        raise UsageError(f"rank must be in 1..{MAX_RANK}, got {m}")
    return m


def cmd_spectrum(args, tol):
    started = time.perf_counter()
    d = _positive_distance(args.distance)
    m = _rank(args)
    if args.mode_number is not None:
        entries = [bd.allowed_k3(m, d, args.mode_number)]
    else:
        if args.n_max < 0:
            raise UsageError("--n-max must be non-negative")
        entries = bd.spectrum(m, d, args.n_max)
    rows = [(e.n, e.k3, bd.quantization_value(m, d, e.k3)) for e in entries]
    worst = max((abs(r[2]) for r in rows), default=0.0)
    stat = bd.Statistics.for_rank(m)
    report = make_report(
        "spectrum",
        {"rank": m, "distance": d, "n_max": args.n_max, "statistics": stat.value},
        [{"n": n, "k3": k3, "quantization_value": q} for n, k3, q in rows],
        [{"name": "quantization_roots", "pass": worst < 1e-12, "residual": worst}],
        started,
        args.timing,
    )
    return report, (("n", "k3", "quantization_value"), rows), EXIT_OK


def cmd_energy_scan(args, tol):
    started = time.perf_counter()
    d = _positive_distance(args.distance)
    stat = _statistics(args)
    grid = ve.geometric_grid(args.alpha_min, args.alpha_max, args.alpha_points)
    energies = [ve.regulated_energy(stat, d, a) for a in grid]
    fit = ve.extrapolated_energy(stat, d, grid)
    exact = ve.casimir_energy(stat, d)
    rel = abs(fit.c0 / exact - 1.0)
    rows = [(float(a), float(e)) for a, e in zip(grid, energies)]
    report = make_report(
        "casimir_energy",
        {
            "statistics": stat.value,
            "distance": d,
            "alpha_min": args.alpha_min,
            "alpha_max": args.alpha_max,
            "alpha_points": args.alpha_points,
        },
        fit.c0,
        [{"name": "c0_matches_closed_form", "pass": rel < 1e-6, "residual": rel}],
        started,
        args.timing,
        closed_form=exact,
        fit={
            "powers": list(fit.powers),
            "coefficients": [fit.coefficients[p] for p in fit.powers],
            "residual": fit.residual,
            "condition_number": fit.condition_number,
        },
        table=[{"alpha": a, "energy": e} for a, e in rows],
    )
    code = EXIT_OK if rel < 1e-6 else EXIT_FAIL
    return report, (("alpha", "energy"), rows), code


def cmd_verify(args, tol):
    started = time.perf_counter()
    checks = run_suite(args.suite, tol)
    ok = all(c.passed for c in checks)
    report = make_report(
        "verification",
        {"suite": args.suite, "tolerance": tol},
        ok,
        checks,
        started,
        args.timing,
    )
    table = (("name", "pass", "residual"), [(c.name, c.passed, c.residual) for c in checks])
    return report, table, EXIT_OK if ok else EXIT_FAIL


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument("--tolerance", type=float, default=None)
    common.add_argument(
        "--no-timing",
        dest="timing",
        action="store_false",
        help="report runtime_ms as 0 so repeated runs are byte-identical",
    )

    parser = argparse.ArgumentParser(
        prog="spincasimir",
        description="Casimir forces and boundary-condition checks for massless fields of any spin.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("force", parents=[common], help="closed-form Casimir force")
    p.add_argument("--spin")
    p.add_argument("--statistics", choices=("fermionic", "bosonic"))
    p.add_argument("--distance", type=float, required=True)
    p.set_defaults(handler=cmd_force)

    p = sub.add_parser("spectrum", parents=[common], help="allowed k3 values")
    p.add_argument("--spin")
    p.add_argument("--rank", type=int)
    p.add_argument("--distance", type=float, required=True)
    p.add_argument("--n-max", type=int, default=5)
    p.add_argument("--mode-number", type=int, help="request a single mode number")
    p.set_defaults(handler=cmd_spectrum)

    p = sub.add_parser("energy-scan", parents=[common], help="regulated energy over an alpha grid")
    p.add_argument("--spin")
    p.add_argument("--statistics", choices=("fermionic", "bosonic"))
    p.add_argument("--distance", type=float, required=True)
    p.add_argument("--alpha-min", type=float, default=0.01)
    p.add_argument("--alpha-max", type=float, default=0.1)
    p.add_argument("--alpha-points", type=int, default=12)
    p.set_defaults(handler=cmd_energy_scan)

    p = sub.add_parser("verify", parents=[common], help="run an invariant battery")
    p.add_argument("--suite", choices=sorted(SUITES) + ["all"], required=True)
    p.set_defaults(handler=cmd_verify)
    return parser


def _tolerance(args):
    if args.tolerance is not None:
        tol = args.tolerance
    else:
        raw = os.environ.get("CASIMIR_TOL")
        if raw is None:
            return DEFAULT_TOL
        try:
            tol = float(raw)
        except ValueError as exc:
            raise UsageError(f"CASIMIR_TOL is not a number: {raw!r}") from exc
    if not (tol > 0 and math.isfinite(tol)):
        raise UsageError(f"tolerance must be positive, got {tol}")
    return tol


def main(argv=None, stdout=None, stderr=None):
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        with contextlib.redirect_stdout(stdout), contextlib.redirect_stderr(stderr):
            args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        tol = _tolerance(args)
        report, table, code = args.handler(args, tol)
    except (UsageError, InputError) as exc:
        print(f"error: {exc}", file=stderr)
        return EXIT_USAGE
    except NumericalError as exc:
        msg = f"numerical error: {exc}"
        if exc.condition_number is not None:
            msg += f" [condition number {exc.condition_number:.3g}]"
        print(msg, file=stderr)
        return EXIT_FAIL
    stdout.write(render(report, args.format, table))
    return code


if __name__ == "__main__":
    sys.exit(main())
