"""Transfer-matrix oracle: piecewise-constant slicing of the barrier.

The barrier is cut into equal-width slices with mass and potential sampled at
slice midpoints.  Plane-wave coefficients ``(a, b)`` of
``a exp(ikx) + b exp(-ikx)`` are carried right-to-left through interface and
propagation matrices; for incidence from the left ``t = 1/M11`` and
``r = M21/M11``.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass, field
from functools import lru_cache
from typing import NamedTuple, Sequence

import numpy as np

from .analytic import Engine, ScatteringResult, make_result
from .errors import DomainError, NumericalFailure
from .foundation import HBAR2_OVER_2ME, wavenumber
from .profiles import BarrierSpec

if os.environ.get("PDMBARRIER_PURE"):
    from ._tmm_py import chain_product

    BACKEND = "python"
else:
    try:
        from ._tmmcore import chain_product

        BACKEND = "cython"
    except ImportError:
        from ._tmm_py import chain_product

        BACKEND = "python"

OVERFLOW_EXPONENT = 50.0
DEGENERACY_GAP = 1e-9  # meV
DEFAULT_SLICES = 4096
STATIONARY_RTOL = 1e-11


class Layer(NamedTuple):
    thickness: float
    m: float
    v: float


@dataclass(frozen=True)
class SliceConfig:
    n_slices: int = DEFAULT_SLICES
    sampling: str = "midpoint"

    def __post_init__(self):
        if int(self.n_slices) != self.n_slices or self.n_slices < 1:
            raise DomainError(f"n_slices must be a positive integer, got {self.n_slices!r}")
        if self.sampling != "midpoint":
            raise DomainError(f"unsupported sampling {self.sampling!r}")


@lru_cache(maxsize=64)
def _layer_arrays(barrier: BarrierSpec, n: int):
    edges = barrier.d * np.arange(n + 1) / n
    edges[-1] = barrier.d
    thickness = np.diff(edges)
    mid = 0.5 * (edges[:-1] + edges[1:])
    m, _, _ = barrier.profile.derivs_array(mid)
    v = barrier.potential_array(mid)
    for arr in (thickness, m, v):
        arr.setflags(write=False)
    return thickness, np.asarray(m, dtype=float), v


def slice_barrier(barrier: BarrierSpec, cfg: SliceConfig = SliceConfig()) -> list[Layer]:
    """Equal-width midpoint-sampled layers covering ``[0, d]``."""
    thickness, m, v = _layer_arrays(barrier, int(cfg.n_slices))
    return [Layer(float(h), float(mi), float(vi)) for h, mi, vi in zip(thickness, m, v)]


def interface_transfer(m_left: float, m_right: float, k_left: complex, k_right: complex) -> np.ndarray:
    """Matrix mapping right-side coefficients to left-side ones across a step.

    Continuity of ``psi`` and ``psi'/m`` gives, with
    ``eta = (k_right/m_right) / (k_left/m_left)``,
    ``[[1+eta, 1-eta], [1-eta, 1+eta]] / 2``.
    """
    if m_left <= 0.0 or m_right <= 0.0:
        raise DomainError("masses must be positive")
    if k_left == 0:
        raise NumericalFailure("singular interface: zero wavenumber on the incident side")
    eta = (k_right / m_right) / (k_left / m_left)
    return 0.5 * np.array([[1.0 + eta, 1.0 - eta], [1.0 - eta, 1.0 + eta]], dtype=complex)


def layer_propagation(k: complex, thickness: float) -> np.ndarray:
    """``diag(exp(-ik t), exp(ik t))``: left-edge coefficients from right-edge ones."""
    if thickness < 0.0:
        raise DomainError(f"thickness must be non-negative, got {thickness!r}")
    if abs(complex(k).imag) * thickness > OVERFLOW_EXPONENT:
        raise NumericalFailure(
            "evanescent layer too thick for transfer matrices "
            f"(|Im k| t = {abs(complex(k).imag) * thickness:.3g} > {OVERFLOW_EXPONENT}); "
            "scattering-matrix composition is not supported"
        )
    p = np.exp(-1j * k * thickness)
    return np.diag([p, 1.0 / p]).astype(complex)


def _slice_wavenumbers(m: np.ndarray, de: np.ndarray) -> np.ndarray:
    q = np.sqrt(m * np.abs(de) / HBAR2_OVER_2ME)
    return np.where(de >= 0.0, q + 0j, 1j * q)


def transmit(barrier: BarrierSpec, cfg: SliceConfig, e: float) -> ScatteringResult:
    """Transmission through the sliced barrier at energy ``e`` (meV)."""
    if not math.isfinite(e) or e <= 0.0:
        raise DomainError(f"energy must be positive and finite, got {e!r}")
    thickness, m, v = _layer_arrays(barrier, int(cfg.n_slices))
    note = ""
    if np.any(np.abs(e - v) < DEGENERACY_GAP):
        e_eval = e + DEGENERACY_GAP
        note = f"energy shifted by +{DEGENERACY_GAP:g} meV"
    else:
        e_eval = e
    k = _slice_wavenumbers(m, e_eval - v)
    kappa_t = np.abs(k.imag) * thickness
    if np.any(kappa_t > OVERFLOW_EXPONENT):
        raise NumericalFailure(
            f"evanescent slice exponent {kappa_t.max():.3g} exceeds {OVERFLOW_EXPONENT}"
        )
    k_lead = wavenumber(e_eval, barrier.m_out)
    g = k / m
    phase = np.exp(-1j * k * thickness)
    m11, m21 = chain_product(g, phase, k_lead / barrier.m_out)
    if not (math.isfinite(abs(m11)) and abs(m11) >= 1e-300):
        raise NumericalFailure(f"transfer matrix degenerate at E={e} (|M11|={abs(m11):.3g})")
    # right-lead amplitude referenced to z = d, left lead to z = 0
    t_amp = 1.0 / m11
    r_amp = m21 / m11
    return make_result(e, t_amp, r_amp, Engine.ORACLE, note)


@dataclass(frozen=True)
class ConvergenceReport:
    samples: list = field(default_factory=list)  # (n_slices, T)
    extrapolated: float = float("nan")
    observed_order: float = float("nan")

    @property
    def exact(self) -> bool:
        return math.isinf(self.observed_order)


def observed_order(values: Sequence[float], ratio: float = 2.0) -> float:
    """Convergence order from the last three values of a refinement sequence.

    Returns ``inf`` when the sequence is already stationary.
    """
    if len(values) < 3:
        raise DomainError("need at least three values to estimate an order")
    d1 = values[-2] - values[-3]
    d2 = values[-1] - values[-2]
    scale = max(abs(v) for v in values[-3:]) or 1.0
    # round-off level changes mean the sequence is already converged
    if abs(d1) <= STATIONARY_RTOL * scale and abs(d2) <= STATIONARY_RTOL * scale:
        return math.inf
    if d2 == 0.0:
        return math.inf
    return math.log(abs(d1 / d2)) / math.log(ratio)


def richardson(coarse: float, fine: float, order: float = 2.0, ratio: float = 2.0) -> float:
    return fine + (fine - coarse) / (ratio**order - 1.0)


def convergence(barrier: BarrierSpec, e: float, n_list: Sequence[int]) -> ConvergenceReport:
    """Oracle transmission over a refinement sequence of slice counts."""
    n_list = [int(n) for n in n_list]
    if len(n_list) < 3:
        raise DomainError("n_list needs at least three entries")
    if any(n < 2 for n in n_list) or any(b <= a for a, b in zip(n_list, n_list[1:])):
        raise DomainError(f"n_list must be strictly increasing and >= 2, got {n_list}")
    ts = [transmit(barrier, SliceConfig(n), e).t for n in n_list]
    ratio = n_list[-1] / n_list[-2]
    order = observed_order(ts, ratio)
    extrapolated = ts[-1] if math.isinf(order) else richardson(ts[-2], ts[-1], 2.0, ratio)
    return ConvergenceReport(list(zip(n_list, ts)), extrapolated, order)
