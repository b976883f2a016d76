"""Energy sweeps over one or more engines, and deterministic CSV output."""

from __future__ import annotations

import csv
import io
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, NamedTuple, Optional, Sequence

import numpy as np

from .analytic import Engine, boundary_solve, paper_result
from .errors import DomainError
from .oracle import DEFAULT_SLICES, SliceConfig, transmit
from .profiles import BarrierSpec, PotentialMode

DEFAULT_ENGINES = (Engine.BOUNDARY, Engine.ORACLE)
FLOAT_FORMAT = ".12g"


@dataclass(frozen=True)
class SweepConfig:
    barrier: BarrierSpec
    e_min: float = 1.0
    e_max: float = 1000.0
    n_points: int = 1000
    engines: tuple = DEFAULT_ENGINES
    n_slices: int = DEFAULT_SLICES
    out: Optional[str] = None
    jobs: int = field(default=1, compare=False)

    def __post_init__(self):
        if not (math.isfinite(self.e_min) and math.isfinite(self.e_max)):
            raise DomainError("energy bounds must be finite")
        if not 0.0 < self.e_min < self.e_max:
            raise DomainError(f"require 0 < emin < emax, got emin={self.e_min}, emax={self.e_max}")
        if self.n_points < 2:
            raise DomainError(f"points must be >= 2, got {self.n_points}")
        if not self.engines:
            raise DomainError("at least one engine must be selected")
        if self.n_slices < 1:
            raise DomainError(f"slices must be >= 1, got {self.n_slices}")
        if self.jobs < 1:
            raise DomainError(f"jobs must be >= 1, got {self.jobs}")
        if self.barrier.potential_mode is PotentialMode.BARE:
            exact = [e.value for e in self.engines if e is not Engine.ORACLE]
            if exact:
                raise DomainError(f"engine(s) {', '.join(exact)} have no solution for the bare potential")

    def energies(self) -> np.ndarray:
        grid = np.linspace(self.e_min, self.e_max, self.n_points)
        grid[0], grid[-1] = self.e_min, self.e_max
        return grid


class OutputRow(NamedTuple):
    energy_mev: float
    omega: float
    profile: str
    engine: str
    t: float
    r: float
    residual: float
    status: str


OUTPUT_COLUMNS = OutputRow._fields


def evaluate(barrier: BarrierSpec, engine: Engine, e: float, n_slices: int = DEFAULT_SLICES):
    if engine is Engine.BOUNDARY:
        return boundary_solve(barrier, e)
    if engine is Engine.ORACLE:
        return transmit(barrier, SliceConfig(n_slices), e)
    return paper_result(barrier, e)


def omega_of(barrier: BarrierSpec, e: float) -> float:
    return e / barrier.v0 if barrier.v0 != 0.0 else math.nan


def _point_rows(cfg: SweepConfig, e: float) -> list[OutputRow]:
    rows = []
    omega = omega_of(cfg.barrier, e)
    name = cfg.barrier.profile.name
    for engine in cfg.engines:
        try:
            res = evaluate(cfg.barrier, engine, e, cfg.n_slices)
        except (ArithmeticError, ValueError) as exc:
            nan = math.nan
            rows.append(OutputRow(e, omega, name, engine.value, nan, nan, nan, f"fail: {exc}"))
            continue
        status = "ok" if not res.note else f"ok: {res.note}"
        rows.append(OutputRow(e, omega, name, engine.value, res.t, res.r, res.residual, status))
    return rows


def run_sweep(cfg: SweepConfig) -> list[OutputRow]:
    """Evaluate every selected engine on the uniform energy grid.

    Points fan out over ``cfg.jobs`` worker threads; results are collected in
    grid order so the output does not depend on the worker count.  A
    numerical failure at one point becomes a row with a ``fail:`` status.
    """
    energies = [float(e) for e in cfg.energies()]
    if cfg.jobs == 1:
        per_point = [_point_rows(cfg, e) for e in energies]
    else:
        with ThreadPoolExecutor(max_workers=cfg.jobs) as pool:
            per_point = list(pool.map(lambda e: _point_rows(cfg, e), energies))
    rows = [row for chunk in per_point for row in chunk]
    rows.sort(key=lambda row: (row.energy_mev, row.engine))
    return rows


def failure_fraction(rows: Sequence[OutputRow]) -> float:
    if not rows:
        return 0.0
    return sum(row.status.startswith("fail") for row in rows) / len(rows)


def format_value(value) -> str:
    if isinstance(value, (float, np.floating)):
        return format(float(value), FLOAT_FORMAT)
    if isinstance(value, (int, np.integer)) and not isinstance(value, bool):
        return str(int(value))
    return str(value)


def csv_text(header: Sequence[str], rows: Iterable[Sequence]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([format_value(v) for v in row])
    return buf.getvalue()


def write_csv(header: Sequence[str], rows: Iterable[Sequence], out: Optional[str] = None) -> str:
    """Render rows as CSV and write them to ``out`` (stdout when ``None``)."""
    text = csv_text(header, rows)
    if out is None or out == "-":
        sys.stdout.write(text)
    else:
        os.makedirs(os.path.dirname(os.path.abspath(out)), exist_ok=True)
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    return text
