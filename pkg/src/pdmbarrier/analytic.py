"""Exact scattering amplitudes for the corrected-potential barrier.

Inside the barrier the wavefunction is ``m**(1/4) * (A3 exp(-i k f) + A4 exp(i k f))``
with ``f(z) = integral_0^z sqrt(m) dz`` and ``k = wavenumber(E - v0, 1)``.
Outside, plane waves of mass ``m_out``.  Matching uses continuity of ``psi``
and ``psi' / m`` (exponents alpha = gamma = 0, beta = -1).

Two routes are provided.  :func:`boundary_solve` assembles and solves the
4x4 matching system and is authoritative.  :func:`paper_transmission` and
:func:`paper_reflection` are transcriptions of the closed-form amplitude expressions;
as printed these evaluate ``A1/A5`` and (up to an index slip) ``A1/A2``,
so ``corrected=True`` returns the reciprocal with the index fixed.
"""

from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import DomainError, NumericalFailure, SingularityError
from .foundation import wavenumber
from .profiles import BarrierSpec


class MatchingExponents(NamedTuple):
    alpha: float = 0.0
    beta: float = -1.0
    gamma: float = 0.0


MATCHING = MatchingExponents()
assert MATCHING.alpha + MATCHING.beta + MATCHING.gamma == -1.0
assert MATCHING.alpha == MATCHING.gamma

COND_LIMIT = 1e12
DEGENERATE_PHASE = 1e-8


class Engine(enum.Enum):
    PAPER = "paper"
    BOUNDARY = "boundary"
    ORACLE = "oracle"


@dataclass(frozen=True)
class ScatteringResult:
    e: float
    t_amp: complex
    r_amp: complex
    t: float
    r: float
    residual: float
    engine: Engine
    note: str = ""


def coefficients(result: ScatteringResult) -> tuple[float, float]:
    return result.t, result.r


def make_result(e, t_amp, r_amp, engine, note="") -> ScatteringResult:
    """Package amplitudes with ``T = |t|^2``, ``R = |r|^2`` (equal leads)."""
    t = abs(t_amp) ** 2
    r = abs(r_amp) ** 2
    return ScatteringResult(float(e), complex(t_amp), complex(r_amp), t, r, abs(t + r - 1.0), engine, note)


def _check_energy(e: float) -> None:
    if not math.isfinite(e):
        raise DomainError(f"non-finite energy {e!r}")
    if e <= 0.0:
        raise DomainError(f"energy must be positive, got {e!r}")


def interior_k(barrier: BarrierSpec, e: float) -> complex:
    """Wavenumber paired with the phase integral (mass folded into ``f``)."""
    return wavenumber(e - barrier.v0, 1.0)


def interior_wave(barrier: BarrierSpec, e: float, z: float, c1: complex, c2: complex) -> complex:
    barrier.require_corrected()
    k = interior_k(barrier, e)
    f = barrier.profile.phase_integral(0.0, z)
    m = barrier.profile.mass_at(z)
    return (c1 * cmath.exp(-1j * k * f) + c2 * cmath.exp(1j * k * f)) * m**0.25


def _endpoint(barrier: BarrierSpec, endpoint) -> float:
    if endpoint in (0, 0.0, "0"):
        return 0.0
    if endpoint == "d" or endpoint == barrier.d:
        return barrier.d
    raise DomainError(f"endpoint must be 0 or d, got {endpoint!r}")


def kpm(barrier: BarrierSpec, e: float, endpoint) -> tuple[complex, complex]:
    """``K+(a), K-(a) = 4 k' m(a)^2 +- 4 k m_out m(a) f'(a) - i m_out m'(a)``."""
    barrier.require_corrected()
    a = _endpoint(barrier, endpoint)
    k = interior_k(barrier, e)
    kp = wavenumber(e, barrier.m_out)
    m, dm, _ = barrier.profile.mass_derivs(a)
    m0 = barrier.m_out
    common = 4.0 * kp * m * m - 1j * m0 * dm
    cross = 4.0 * k * m0 * m * math.sqrt(m)
    return common + cross, common - cross


def _kpm_bar(barrier: BarrierSpec, e: float, a: float) -> tuple[complex, complex]:
    # conjugate of K+- for real k; the analytic continuation otherwise
    k = interior_k(barrier, e)
    kp = wavenumber(e, barrier.m_out)
    m, dm, _ = barrier.profile.mass_derivs(a)
    m0 = barrier.m_out
    common = 4.0 * kp * m * m + 1j * m0 * dm
    cross = 4.0 * k * m0 * m * math.sqrt(m)
    return common + cross, common - cross


def _paper_inputs(barrier: BarrierSpec, e: float):
    barrier.require_corrected()
    _check_energy(e)
    k = interior_k(barrier, e)
    if k == 0:
        raise SingularityError("k = 0 at E = v0; use boundary_solve for this energy")
    return k, wavenumber(e, barrier.m_out)


def paper_transmission(barrier: BarrierSpec, e: float, corrected: bool = False) -> complex:
    """Closed-form transmission expression.

    ``corrected=False`` returns the closed-form expression verbatim (conjugates
    taken literally), which evaluates to ``A1/A5``.  ``corrected=True`` returns
    its reciprocal, the transmission amplitude ``A5/A1``, using analytically
    continued K-factors so it also holds below the barrier.
    """
    k, kp = _paper_inputs(barrier, e)
    d, m0 = barrier.d, barrier.m_out
    prof = barrier.profile
    m_0, m_d = prof.mass_at(0.0), prof.mass_at(d)
    f0, fd = 0.0, prof.total_phase
    kp0, km0 = kpm(barrier, e, 0.0)
    if corrected:
        kpd_s, kmd_s = _kpm_bar(barrier, e, d)
    else:
        kpd, kmd = kpm(barrier, e, d)
        kpd_s, kmd_s = kpd.conjugate(), kmd.conjugate()
    denom = 64.0 * k * kp * m0 * m_0**1.75 * m_d**1.25 * math.sqrt(m_d)
    phase = cmath.exp(1j * kp * d)
    value = (
        phase * kp0 * kpd_s * cmath.exp(1j * k * (f0 - fd)) / denom
        - phase * km0 * kmd_s * cmath.exp(-1j * k * (f0 - fd)) / denom
    )
    return 1.0 / value if corrected else value


def paper_reflection(barrier: BarrierSpec, e: float, corrected: bool = False) -> complex:
    """Closed-form reflection expression.

    Verbatim, the closed form is ``A1/A2`` with ``K+*(d)`` standing where
    ``K+*(0)`` belongs in the first denominator term.  ``corrected=True``
    fixes that index and returns the reciprocal, ``A2/A1``.
    """
    k, _ = _paper_inputs(barrier, e)
    prof = barrier.profile
    f0, fd = 0.0, prof.total_phase
    kp0, km0 = kpm(barrier, e, 0.0)
    if corrected:
        kp0_s, km0_s = _kpm_bar(barrier, e, 0.0)
        kpd_s, kmd_s = _kpm_bar(barrier, e, barrier.d)
    else:
        kpd, kmd = kpm(barrier, e, barrier.d)
        kp0_s, km0_s = kp0.conjugate(), km0.conjugate()
        kpd_s, kmd_s = kpd.conjugate(), kmd.conjugate()
    e2d, e20 = cmath.exp(2j * k * fd), cmath.exp(2j * k * f0)
    num = km0 * kmd_s * e2d - kp0 * kpd_s * e20
    if corrected:
        den = kp0_s * kmd_s * e2d - km0_s * kpd_s * e20
        return den / num
    den = kpd_s * kmd_s * e2d - km0_s * kpd_s * e20
    return num / den


def paper_result(barrier: BarrierSpec, e: float) -> ScatteringResult:
    """Scattering result from the corrected closed forms."""
    t_amp = paper_transmission(barrier, e, corrected=True)
    r_amp = paper_reflection(barrier, e, corrected=True)
    return make_result(e, t_amp, r_amp, Engine.PAPER)


def _interior_basis(prof, a: float, k: complex, f: float, degenerate: bool):
    """Values and ``psi'/m`` of the two interior basis functions at ``a``."""
    m, dm, _ = prof.mass_derivs(a)
    q = m**0.25
    env = dm / (4.0 * m**0.75)  # d/dz of m**(1/4)
    root = math.sqrt(m)
    if degenerate:
        # E = v0 limit: psi = m^(1/4) (P + Q f)
        vals = (q, q * f)
        ders = (env, env * f + q * root)
    else:
        em, ep = cmath.exp(-1j * k * f), cmath.exp(1j * k * f)
        vals = (q * em, q * ep)
        ders = ((env - 1j * k * root * q) * em, (env + 1j * k * root * q) * ep)
    return vals, (ders[0] / m, ders[1] / m)


def _matching_system(barrier: BarrierSpec, e: float, degenerate: bool):
    prof = barrier.profile
    d, m0 = barrier.d, barrier.m_out
    k = interior_k(barrier, e)
    kp = wavenumber(e, m0)
    fd = prof.total_phase
    (v3_0, v4_0), (g3_0, g4_0) = _interior_basis(prof, 0.0, k, 0.0, degenerate)
    (v3_d, v4_d), (g3_d, g4_d) = _interior_basis(prof, d, k, fd, degenerate)
    out = 1j * kp / m0
    lead_d = cmath.exp(1j * kp * d)
    a = np.array(
        [
            [-1.0, v3_0, v4_0, 0.0],
            [out, g3_0, g4_0, 0.0],
            [0.0, v3_d, v4_d, -lead_d],
            [0.0, g3_d, g4_d, -out * lead_d],
        ],
        dtype=complex,
    )
    return a, np.array([1.0, out, 0.0, 0.0], dtype=complex)


def boundary_solve(barrier: BarrierSpec, e: float) -> ScatteringResult:
    """Solve the matching conditions at ``z = 0`` and ``z = d`` with ``A1 = 1``.

    Unknowns are ``(A2, A3, A4, A5)``.  When ``|k f(d)| < 1e-8`` the interior
    exponentials are replaced by their linear limit.

    Raises
    ------
    NumericalFailure
        If the column-equilibrated system has condition number above 1e12.
    """
    barrier.require_corrected()
    _check_energy(e)
    k = interior_k(barrier, e)
    degenerate = abs(k * barrier.profile.total_phase) < DEGENERATE_PHASE
    a, b = _matching_system(barrier, e, degenerate)
    scale = np.abs(a).max(axis=0)
    cond = np.linalg.cond(a / scale)
    if not math.isfinite(cond) or cond > COND_LIMIT:
        raise NumericalFailure(f"matching system ill-conditioned at E={e} (cond={cond:.3g})")
    a2, _, _, a5 = np.linalg.solve(a, b)
    note = "linear interior limit" if degenerate else ""
    return make_result(e, a5, a2, Engine.BOUNDARY, note)


def boundary_amplitudes(barrier: BarrierSpec, e: float) -> np.ndarray:
    """``(A1, A2, A3, A4, A5)`` in the exponential basis (requires E != v0)."""
    barrier.require_corrected()
    _check_energy(e)
    if interior_k(barrier, e) == 0:
        raise SingularityError("exponential basis is degenerate at E = v0")
    a, b = _matching_system(barrier, e, False)
    return np.concatenate(([1.0 + 0j], np.linalg.solve(a, b)))
