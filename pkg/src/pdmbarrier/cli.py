"""Command-line interface.

Commands: ``sweep``, ``fig1``, ``fig2``, ``fig4``, ``validate``.  Values come
from, in decreasing priority: command-line flags, a ``--config`` file of
``key = value`` lines (keys are flag names without the leading dashes), and
built-in defaults.

Exit codes: 0 success, 1 usage error, 2 too many numerical failures,
3 validation failure.
"""

from __future__ import annotations

import argparse
import configparser
import os
import sys
from typing import Optional, Sequence

from . import figures, sweep, validate
from .analytic import Engine
from .errors import DomainError
from .oracle import BACKEND, DEFAULT_SLICES
from .profiles import DELTA, KIND_NAMES, M_OUT, SIGMA, V0, WIDTH, BarrierSpec, PotentialMode

EXIT_OK, EXIT_USAGE, EXIT_NUMERIC, EXIT_VALIDATION = 0, 1, 2, 3
FAILURE_BUDGET = 0.10

DEFAULTS = {
    "profile": "quadratic",
    "sigma": SIGMA,
    "delta": DELTA,
    "v0": V0,
    "d": WIDTH,
    "m_out": M_OUT,
    "m1": M_OUT,
    "emin": 1.0,
    "emax": 1000.0,
    "points": 1000,
    "engine": None,
    "slices": DEFAULT_SLICES,
    "potential_mode": "corrected",
    "out": None,
    "jobs": 1,
    # fig2
    "a": None,
    "omega_min": 1.0,
    "omega_max": 10.0,
    "m0": M_OUT,
}

# None means "derive from other values" for that command
COMMAND_DEFAULTS = {
    "fig2": {"points": 2000, "d": None},
    "fig4": {"points": 2000, "emax": None},
}

_FLOATS = {"sigma", "delta", "v0", "d", "m_out", "m1", "emin", "emax", "omega_min", "omega_max", "m0"}
_INTS = {"points", "slices", "jobs"}
_CHOICES = {
    "profile": KIND_NAMES,
    "engine": tuple(e.value for e in Engine),
    "potential_mode": tuple(m.value for m in PotentialMode),
}
_LISTS = {"engine": str, "a": float}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _add_shared(p: argparse.ArgumentParser) -> None:
    s = argparse.SUPPRESS
    p.add_argument("--profile", choices=KIND_NAMES, default=s)
    p.add_argument("--sigma", type=float, default=s)
    p.add_argument("--delta", type=float, default=s)
    p.add_argument("--v0", type=float, default=s, help="barrier height (meV)")
    p.add_argument("--d", type=float, default=s, help="barrier width (Angstrom)")
    p.add_argument("--m-out", dest="m_out", type=float, default=s, help="lead mass ratio")
    p.add_argument("--m1", type=float, default=s, help="inside mass ratio (step profile)")
    p.add_argument("--emin", type=float, default=s, help="meV")
    p.add_argument("--emax", type=float, default=s, help="meV")
    p.add_argument("--points", type=int, default=s)
    p.add_argument("--engine", action="append", choices=_CHOICES["engine"], default=s)
    p.add_argument("--slices", type=int, default=s)
    p.add_argument("--potential-mode", dest="potential_mode", choices=_CHOICES["potential_mode"], default=s)
    p.add_argument("--out", default=s, help="output path (default stdout)")
    p.add_argument("--config", default=s, help="key = value file")
    p.add_argument("--jobs", type=int, default=s, help="worker threads")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="pdmbarrier", description=__doc__.split("\n\n")[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name in ("sweep", "fig1", "fig4", "validate"):
        _add_shared(sub.add_parser(name))
    fig2 = sub.add_parser("fig2")
    _add_shared(fig2)
    s = argparse.SUPPRESS
    fig2.add_argument("--a", action="append", type=float, default=s, help="mass ratio m1/m0 (repeatable)")
    fig2.add_argument("--omega-min", dest="omega_min", type=float, default=s)
    fig2.add_argument("--omega-max", dest="omega_max", type=float, default=s)
    fig2.add_argument("--m0", type=float, default=s, help="lead mass; sets d = pi hbar / sqrt(m0 V0)")
    return parser


def _coerce(key: str, raw: str):
    try:
        if key in _LISTS:
            items = [x.strip() for x in raw.replace(",", " ").split()]
            return [_LISTS[key](x) for x in items]
        if key in _FLOATS:
            return float(raw)
        if key in _INTS:
            return int(raw)
    except ValueError:
        raise UsageError(f"invalid value {raw!r} for {key!r} in config file") from None
    return raw


def read_config(path: str) -> dict:
    """Parse a flat ``key = value`` file; keys mirror flag names."""
    if not os.path.exists(path):
        raise UsageError(f"config file not found: {path}")
    parser = configparser.ConfigParser(interpolation=None, comment_prefixes=("#", ";"))
    with open(path, encoding="utf-8") as fh:
        parser.read_string("[config]\n" + fh.read())
    out = {}
    for raw_key, raw in parser["config"].items():
        key = raw_key.strip().lstrip("-").replace("-", "_")
        if key not in DEFAULTS:
            raise UsageError(f"unknown key {raw_key!r} in config file {path}")
        value = _coerce(key, raw.strip())
        allowed = _CHOICES.get(key)
        if allowed is not None:
            for v in value if isinstance(value, list) else [value]:
                if v not in allowed:
                    raise UsageError(f"invalid {key} {v!r} in config file (choose from {', '.join(allowed)})")
        out[key] = value
    return out


def resolve(ns: argparse.Namespace, command: str = "sweep") -> dict:
    """Merge defaults, config file and flags (flags win)."""
    values = dict(DEFAULTS)
    values.update(COMMAND_DEFAULTS.get(command, {}))
    flags = vars(ns).copy()
    config_path = flags.pop("config", None)
    if config_path:
        values.update(read_config(config_path))
    values.update(flags)
    return values


def barrier_from(values: dict) -> BarrierSpec:
    try:
        return BarrierSpec.build(
            values["profile"],
            d=values["d"],
            v0=values["v0"],
            m_out=values["m_out"],
            potential_mode=PotentialMode(values["potential_mode"]),
            sigma=values["sigma"],
            delta=values["delta"],
            m1=values["m1"],
        )
    except DomainError as exc:
        raise UsageError(str(exc)) from None


def parse_config(argv: Optional[Sequence[str]] = None) -> tuple[str, dict, Optional[sweep.SweepConfig]]:
    """Parse ``argv`` into ``(command, merged values, SweepConfig or None)``."""
    ns = build_parser().parse_args(argv)
    command = ns.command
    del ns.command
    values = resolve(ns, command)
    cfg = None
    if command == "sweep":
        barrier = barrier_from(values)
        engines = values["engine"]
        if engines is None:
            engines = ["oracle"] if barrier.potential_mode is PotentialMode.BARE else [e.value for e in sweep.DEFAULT_ENGINES]
        try:
            cfg = sweep.SweepConfig(
                barrier=barrier,
                e_min=values["emin"],
                e_max=values["emax"],
                n_points=values["points"],
                engines=tuple(Engine(e) for e in dict.fromkeys(engines)),
                n_slices=values["slices"],
                out=values["out"],
                jobs=values["jobs"],
            )
        except DomainError as exc:
            raise UsageError(str(exc)) from None
    return command, values, cfg


def cmd_sweep(cfg: sweep.SweepConfig) -> int:
    rows = sweep.run_sweep(cfg)
    sweep.write_csv(sweep.OUTPUT_COLUMNS, rows, cfg.out)
    frac = sweep.failure_fraction(rows)
    if frac > FAILURE_BUDGET:
        print(f"error: {frac:.1%} of points failed (budget {FAILURE_BUDGET:.0%})", file=sys.stderr)
        return EXIT_NUMERIC
    return EXIT_OK


def cmd_fig1(values: dict) -> int:
    rows = figures.fig1_rows(values["sigma"], values["delta"], values["v0"], values["d"], values["m1"])
    sweep.write_csv(figures.FIG1_COLUMNS, rows, values["out"])
    return EXIT_OK


def cmd_fig2(values: dict) -> int:
    a_values = values["a"] or list(figures.FIG2_A_VALUES)
    if any(a <= 0.0 for a in a_values):
        raise UsageError("a values must be positive")
    if not 1.0 <= values["omega_min"] < values["omega_max"]:
        raise UsageError("require 1 <= omega-min < omega-max (energies above the barrier only)")
    if values["points"] < 2:
        raise UsageError("points must be >= 2")
    rows = figures.fig2_rows(
        a_values, values["omega_min"], values["omega_max"], values["points"], values["m0"], values["v0"], values["d"]
    )
    sweep.write_csv(figures.FIG2_COLUMNS, rows, values["out"])
    return EXIT_OK


def cmd_fig4(values: dict) -> int:
    rows = figures.fig4_rows(
        values["sigma"],
        values["delta"],
        values["v0"],
        values["d"],
        values["m_out"],
        n_points=values["points"],
        e_max=values["emax"],
        n_slices=values["slices"],
        jobs=values["jobs"],
    )
    sweep.write_csv(figures.FIG4_COLUMNS, rows, values["out"])
    return EXIT_OK


def cmd_validate(values: dict) -> int:
    results, ledger = validate.run_validation()
    lines = [f"transfer-matrix backend: {BACKEND}"]
    lines += [r.line() for r in results]
    lines.append(ledger.format())
    failed = [r for r in results if r.mandatory and not r.passed]
    lines.append(f"RESULT: {'FAIL' if failed else 'PASS'} ({len(failed)} mandatory failure(s))")
    report = "\n".join(lines) + "\n"
    sys.stdout.write(report)
    if values["out"]:
        with open(values["out"], "w", encoding="utf-8", newline="") as fh:
            fh.write(report)
    return EXIT_VALIDATION if failed else EXIT_OK


def main(argv: Optional[Sequence[str]] = None) -> int:
    try:
        command, values, cfg = parse_config(argv)
        if command == "sweep":
            return cmd_sweep(cfg)
        if values["jobs"] < 1:
            raise UsageError("jobs must be >= 1")
        return {"fig1": cmd_fig1, "fig2": cmd_fig2, "fig4": cmd_fig4, "validate": cmd_validate}[command](values)
    except UsageError as exc:
        print(f"pdmbarrier: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except DomainError as exc:
        print(f"pdmbarrier: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BrokenPipeError:
        # downstream closed early (e.g. `| head`)
        devnull = os.open(os.devnull, os.O_WRONLY)
        os.dup2(devnull, sys.stdout.fileno())
        return EXIT_OK


if __name__ == "__main__":
    raise SystemExit(main())
