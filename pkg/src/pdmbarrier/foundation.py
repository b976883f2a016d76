"""Units, constants and the wavenumber relation.

Unit system: energies in meV, lengths in Angstrom, masses as ratios to the
free-electron mass.  A single constant, ``HBAR2_OVER_2ME`` = hbar^2 / (2 m_e)
in meV*A^2, carries every dimensional conversion.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from .errors import DomainError

# CODATA 2018 exact/recommended values
_HBAR_JS = 1.054571817e-34
_ME_KG = 9.1093837015e-31
_EV_J = 1.602176634e-19


@dataclass(frozen=True)
class PhysicalConstants:
    hbar2_over_2me: float  # meV * A^2

    @classmethod
    def codata2018(cls) -> "PhysicalConstants":
        # J*m^2 -> meV*A^2: divide by J/eV, times 1e3 meV/eV, times 1e20 A^2/m^2
        c = _HBAR_JS**2 / (2.0 * _ME_KG) / _EV_J * 1e23
        return cls(hbar2_over_2me=c)


CONSTANTS = PhysicalConstants.codata2018()
HBAR2_OVER_2ME = CONSTANTS.hbar2_over_2me


def wavenumber(delta_e: float, m: float) -> complex:
    """Wavenumber of a plane wave with kinetic energy ``delta_e`` and mass ``m``.

    Returns ``sqrt(m * delta_e / C)`` for ``delta_e >= 0`` and
    ``1j * sqrt(m * |delta_e| / C)`` otherwise, so that ``exp(1j*k*z)`` decays
    for growing ``z`` on the evanescent branch.

    Parameters
    ----------
    delta_e : float
        E - V in meV.
    m : float
        Mass ratio, must be positive.

    Returns
    -------
    complex
        Wavenumber in 1/A; either real and non-negative or positive imaginary.
    """
    if not (math.isfinite(delta_e) and math.isfinite(m)):
        raise DomainError(f"non-finite input: delta_e={delta_e!r}, m={m!r}")
    if m <= 0.0:
        raise DomainError(f"mass ratio must be positive, got {m!r}")
    q = math.sqrt(m * abs(delta_e) / HBAR2_OVER_2ME)
    if delta_e >= 0.0:
        return complex(q, 0.0)
    return complex(0.0, q)


def is_valid_wavenumber(k: complex) -> bool:
    """True when ``k`` lies on one of the two allowed branches."""
    k = complex(k)
    if not cmath.isfinite(k):
        return False
    if k.imag == 0.0:
        return k.real >= 0.0
    return k.real == 0.0 and k.imag > 0.0
