"""Data behind the potential-profile and transmission figures."""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from typing import Sequence

import numpy as np
from scipy import optimize

from .analytic import boundary_solve
from .foundation import HBAR2_OVER_2ME
from .oracle import DEFAULT_SLICES, SliceConfig, transmit
from .profiles import (
    CATALOG_KINDS,
    DELTA,
    GRADED_KINDS,
    M_OUT,
    SIGMA,
    V0,
    WIDTH,
    BarrierSpec,
    potential_profile,
)

FIG1_COLUMNS = ("z_angstrom", "profile", "v_mev", "v_minus_v0_mev")
FIG1_KINDS = ("step",) + GRADED_KINDS
FIG2_COLUMNS = ("omega", "a", "t")
FIG2_A_VALUES = (1.0, 0.5, 0.0665)
FIG4_COLUMNS = (
    "energy_mev",
    "omega",
    "profile",
    "t_boundary",
    "t_oracle",
    "abs_diff",
    "residual_boundary",
    "residual_oracle",
)


def fig1_rows(
    sigma: float = SIGMA,
    delta: float = DELTA,
    v0: float = V0,
    d: float = WIDTH,
    m1: float = M_OUT,
    n_points: int = 1001,
    kinds: Sequence[str] = FIG1_KINDS,
) -> list[tuple]:
    rows = []
    for kind in kinds:
        barrier = BarrierSpec.build(kind, d=d, v0=v0, sigma=sigma, delta=delta, m1=m1)
        for z, v in potential_profile(barrier, n_points):
            rows.append((z, kind, v, v - v0))
    return rows


def step_width(m0: float, v0: float) -> float:
    """``pi * hbar / sqrt(m0 * v0)`` in Angstrom, for mass ratio ``m0`` and ``v0`` in meV."""
    return math.pi * math.sqrt(2.0 * HBAR2_OVER_2ME / (m0 * v0))


def step_barrier(a: float, m0: float = M_OUT, v0: float = V0, d: float | None = None) -> BarrierSpec:
    """Constant-mass barrier with inside mass ``a * m0`` and leads of mass ``m0``."""
    if d is None:
        d = step_width(m0, v0)
    return BarrierSpec.build("step", d=d, v0=v0, m_out=m0, m1=a * m0)


def omega_grid(omega_min: float, omega_max: float, n_points: int) -> np.ndarray:
    """``n_points`` uniform values in ``(omega_min, omega_max]``."""
    j = np.arange(1, n_points + 1)
    grid = omega_min + (omega_max - omega_min) * j / n_points
    grid[-1] = omega_max
    return grid


def fig2_rows(
    a_values: Sequence[float] = FIG2_A_VALUES,
    omega_min: float = 1.0,
    omega_max: float = 10.0,
    n_points: int = 2000,
    m0: float = M_OUT,
    v0: float = V0,
    d: float | None = None,
) -> list[tuple]:
    rows = []
    grid = omega_grid(omega_min, omega_max, n_points)
    for a in a_values:
        barrier = step_barrier(a, m0, v0, d)
        for w in grid:
            rows.append((float(w), float(a), boundary_solve(barrier, float(w) * v0).t))
    return rows


def transmission_minima(barrier: BarrierSpec, e_lo: float, e_hi: float, n_grid: int = 4001) -> list[tuple]:
    """Local minima ``(E, T)`` of the boundary-solve transmission in ``(e_lo, e_hi)``.

    Bracketed on a uniform grid, then refined with a bounded scalar search.
    """
    grid = np.linspace(e_lo, e_hi, n_grid)
    t = np.array([boundary_solve(barrier, e).t for e in grid])
    idx = np.nonzero((t[1:-1] < t[:-2]) & (t[1:-1] <= t[2:]))[0] + 1
    out = []
    for i in idx:
        res = optimize.minimize_scalar(
            lambda e: boundary_solve(barrier, e).t,
            bounds=(grid[i - 1], grid[i + 1]),
            method="bounded",
            options={"xatol": 1e-10 * grid[i]},
        )
        out.append((float(res.x), float(res.fun)))
    return out


def _fig4_point(args):
    barriers, e, n_slices = args
    rows = []
    for name, barrier in barriers:
        b = boundary_solve(barrier, e)
        o = transmit(barrier, SliceConfig(n_slices), e)
        rows.append((e, e / barrier.v0, name, b.t, o.t, abs(b.t - o.t), b.residual, o.residual))
    return rows


def fig4_rows(
    sigma: float = SIGMA,
    delta: float = DELTA,
    v0: float = V0,
    d: float = WIDTH,
    m_out: float = M_OUT,
    n_points: int = 2000,
    e_max: float | None = None,
    n_slices: int = DEFAULT_SLICES,
    kinds: Sequence[str] = CATALOG_KINDS,
    jobs: int = 1,
) -> list[tuple]:
    """Boundary-solve and oracle transmission side by side on ``(0, e_max]``."""
    if e_max is None:
        e_max = 10.0 * v0
    barriers = [
        (k, BarrierSpec.build(k, d=d, v0=v0, m_out=m_out, sigma=sigma, delta=delta)) for k in kinds
    ]
    energies = [e_max * j / n_points for j in range(1, n_points + 1)]
    tasks = [(barriers, e, n_slices) for e in energies]
    if jobs == 1:
        chunks = [_fig4_point(t) for t in tasks]
    else:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            chunks = list(pool.map(_fig4_point, tasks))
    return [row for chunk in chunks for row in chunk]
