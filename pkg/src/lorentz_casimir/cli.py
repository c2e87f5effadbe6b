"""Command line entry point: ``lorentz-casimir {pressure,profile,sweep,verify}``.

Exit codes: 0 success, 1 failed verification, 2 invalid arguments.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
import warnings
from pathlib import Path

import numpy as np

from . import verify as _verify
from .correlators import Setup, SetupKind, corr_BB, corr_EB, corr_EE, e2_minus_b2
from .pressure import energy_per_area, net_pressure
from .specfun import GuardBandWarning

HBAR_C = 3.16152677e-26  # J m
OUTPUT_DIR_ENV = "LORENTZ_CASIMIR_OUTPUT_DIR"
QUANTITIES = ("EE", "BB", "EB", "e2mb2", "force_density")


class UsageError(Exception):
    pass


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def read_config(path) -> dict:
    """Flat ``key = value`` file; blank lines and ``#`` comments ignored."""
    out = {}
    for lineno, raw in enumerate(Path(path).read_text().splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UsageError(f"{path}:{lineno}: expected key=value")
        key, value = (s.strip() for s in line.split("=", 1))
        out[key.replace("-", "_")] = value
    return out


def _output_path(name: str | None) -> Path | None:
    if name is None:
        return None
    p = Path(name)
    base = os.environ.get(OUTPUT_DIR_ENV)
    if base and not p.is_absolute():
        p = Path(base) / p
    return p


def _emit(text: str, path: Path | None):
    if path is None:
        sys.stdout.write(text)
    else:
        path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, "w", newline="\n") as fh:
            fh.write(text)


# --- pressure ----------------------------------------------------------------

def _pi2(coeff) -> str:
    sign = "-" if coeff < 0 else "+"
    return f"{sign}{abs(coeff.numerator)}/({coeff.denominator} pi^2)"


def cmd_pressure(args) -> int:
    if not args.a > 0:
        raise UsageError("--a must be positive")
    res = net_pressure(Setup(args.setup, args.a), method=args.method)
    report = {
        "setup": SetupKind.parse(args.setup).value,
        "a": args.a,
        "method": args.method,
        "net_pressure": res.net,
        "left_finite": res.left.finite,
        "right_finite": res.right.finite,
        "divergent_left": _pi2(res.left.divergent),
        "divergent_right": _pi2(res.right.divergent),
        "divergence_cancels": res.divergence_cancels,
        "verdict": res.verdict,
    }
    if args.si:
        # a read as metres: P [Pa] = P_natural [m^-4] * hbar c
        report["units"] = "Pa"
        report["net_pressure_si"] = res.net * HBAR_C
    if args.format == "json":
        text = json.dumps(report, indent=2) + "\n"
    else:
        lines = []
        for k, v in report.items():
            v = _fmt(v) if isinstance(v, float) else str(v).lower() if isinstance(v, bool) else v
            lines.append(f"{k}: {v}")
        text = "\n".join(lines) + "\n"
    _emit(text, _output_path(args.output))
    return 0


# --- profile -----------------------------------------------------------------

def _columns(quantities):
    cols = ["z", "xi"]
    for q in quantities:
        if q in ("EE", "BB", "EB"):
            cols += [f"{q}_{c}" for c in ("xx", "yy", "zz")]
        else:
            cols.append(q)
    return cols


def profile_rows(setup: Setup, z, quantities):
    """One row per z; ``force_density`` is <E^2 - B^2>/8pi, the normal stress on an upward face."""
    rows = []
    for zi in z:
        row = [float(zi), float(setup.xi(zi))]
        for q in quantities:
            if q in ("EE", "BB", "EB"):
                t = {"EE": corr_EE, "BB": corr_BB, "EB": corr_EB}[q](setup, zi)
                row += [t.xx, t.yy, t.zz]
            elif q == "e2mb2":
                row.append(e2_minus_b2(setup, zi))
            else:
                row.append(e2_minus_b2(setup, zi) / (8 * math.pi))
        rows.append(row)
    return rows


def cmd_profile(args) -> int:
    a = args.a
    z_min = args.z_min if args.z_min is not None else 0.01 * a
    z_max = args.z_max if args.z_max is not None else 0.99 * a
    if not (0 < z_min < z_max < a):
        raise UsageError("need 0 < z_min < z_max < a")
    if args.samples < 2:
        raise UsageError("--samples must be >= 2")
    quantities = [q.strip() for q in args.quantities.split(",") if q.strip()]
    bad = [q for q in quantities if q not in QUANTITIES]
    if bad or not quantities:
        raise UsageError(f"unknown quantities {bad}; choose from {','.join(QUANTITIES)}")
    setup = Setup(args.setup, a)
    z = np.linspace(z_min, z_max, args.samples)
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", GuardBandWarning)
        rows = profile_rows(setup, z, quantities)
    if caught:
        print(f"note: {len(caught)} samples used the endpoint expansion", file=sys.stderr)
    cols = _columns(quantities)
    if args.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(cols)
        for r in rows:
            w.writerow([_fmt(v) for v in r])
        text = buf.getvalue()
    else:
        doc = {"setup": setup.kind.value, "a": a, "columns": cols,
               "rows": [[float(_fmt(v)) for v in r] for r in rows]}
        text = json.dumps(doc, indent=1) + "\n"
    _emit(text, _output_path(args.output))
    return 0


# --- sweep -------------------------------------------------------------------

def cmd_sweep(args) -> int:
    if not (0 < args.a_min < args.a_max):
        raise UsageError("need 0 < a_min < a_max")
    if args.samples < 2:
        raise UsageError("--samples must be >= 2")
    space = np.geomspace if args.spacing == "log" else np.linspace
    cols = ["a", "cc", "cp", "ratio", "energy_cc", "energy_cp"]
    rows = []
    for a in space(args.a_min, args.a_max, args.samples):
        s_cc, s_cp = Setup("cc", a), Setup("cp", a)
        cc, cp = net_pressure(s_cc).net, net_pressure(s_cp).net
        rows.append([a, cc, cp, cp / cc, energy_per_area(s_cc), energy_per_area(s_cp)])
    if args.si:
        rows = [[r[0]] + [v * HBAR_C for v in r[1:3]] + [r[3]] + [v * HBAR_C for v in r[4:]] for r in rows]
    if args.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(cols)
        for r in rows:
            w.writerow([_fmt(v) for v in r])
        text = buf.getvalue()
    else:
        doc = {"units": "SI" if args.si else "natural", "columns": cols,
               "rows": [[float(_fmt(v)) for v in r] for r in rows]}
        text = json.dumps(doc, indent=1) + "\n"
    _emit(text, _output_path(args.output))
    return 0


# --- verify ------------------------------------------------------------------

def cmd_verify(args) -> int:
    report = _verify.run(args.suite)
    _emit(json.dumps(report, indent=2) + "\n", _output_path(args.output))
    return 0 if report["passed"] else 1


# --- parser ------------------------------------------------------------------

def _setup_kind(value):
    try:
        return SetupKind.parse(value).value
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="lorentz-casimir", description=__doc__.splitlines()[0])
    p.add_argument("--config", help="key=value file overriding defaults")
    sub = p.add_subparsers(dest="command", required=True)
    # also accepted after the subcommand; the value is consumed in _apply_config
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", default=argparse.SUPPRESS, help="key=value file overriding defaults")

    pp = sub.add_parser("pressure", parents=[common], help="net Casimir pressure on the plate at z=a")
    pp.add_argument("--setup", type=_setup_kind, default="cc")
    pp.add_argument("--a", type=float, default=1.0, help="plate separation")
    pp.add_argument("--method", choices=("closed", "oracle"), default="closed")
    pp.add_argument("--si", action="store_true", help="read --a in metres and also report pascals")
    pp.add_argument("--format", choices=("text", "json"), default="text")
    pp.add_argument("--output")
    pp.set_defaults(func=cmd_pressure)

    pf = sub.add_parser("profile", parents=[common], help="correlator profile across the gap")
    pf.add_argument("--setup", type=_setup_kind, default="cc")
    pf.add_argument("--a", type=float, default=1.0)
    pf.add_argument("--z-min", type=float)
    pf.add_argument("--z-max", type=float)
    pf.add_argument("--samples", type=int, default=101)
    pf.add_argument("--quantities", default=",".join(QUANTITIES))
    pf.add_argument("--format", choices=("csv", "json"), default="csv")
    pf.add_argument("--output")
    pf.set_defaults(func=cmd_profile)

    ps = sub.add_parser("sweep", parents=[common], help="pressure and energy of both setups over a range of separations")
    ps.add_argument("--a-min", type=float, default=0.5)
    ps.add_argument("--a-max", type=float, default=10.0)
    ps.add_argument("--samples", type=int, default=20)
    ps.add_argument("--spacing", choices=("log", "linear"), default="log")
    ps.add_argument("--si", action="store_true", help="read separations in metres; pressures in Pa, energies in J/m^2")
    ps.add_argument("--format", choices=("csv", "json"), default="csv")
    ps.add_argument("--output")
    ps.set_defaults(func=cmd_sweep)

    pv = sub.add_parser("verify", parents=[common], help="run property suites and print a JSON report")
    pv.add_argument("--suite", choices=_verify.SUITES + ("all",), default="all")
    pv.add_argument("--output")
    pv.set_defaults(func=cmd_verify)
    return p


def _apply_config(parser, argv):
    pre = argparse.ArgumentParser(add_help=False)
    pre.add_argument("--config")
    known, _ = pre.parse_known_args(argv)
    if not known.config:
        return
    values = read_config(known.config)
    for action in parser._subparsers._group_actions:
        for sp in action.choices.values():
            dests = {a.dest: a for a in sp._actions}
            overrides = {}
            for key, raw in values.items():
                if key in dests:
                    act = dests[key]
                    if isinstance(act, argparse._StoreTrueAction):
                        overrides[key] = raw.lower() in ("1", "true", "yes", "on")
                    else:
                        overrides[key] = act.type(raw) if act.type else raw
            sp.set_defaults(**overrides)


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    parser = build_parser()
    try:
        _apply_config(parser, argv)
        args = parser.parse_args(argv)
        return args.func(args)
    except (UsageError, ValueError, OSError) as exc:
        print(f"lorentz-casimir: error: {exc}", file=sys.stderr)
        return 2
