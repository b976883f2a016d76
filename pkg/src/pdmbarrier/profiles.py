"""Position-dependent mass catalog and the barrier it defines.

Every profile is written in the dimensionless coordinate ``zeta = z / d`` so
that ``delta * zeta**2 <= delta`` at the far edge of the barrier.  Derivatives
reported by :class:`MassProfile` are taken with respect to the physical
coordinate ``z`` (Angstrom).
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from functools import cached_property
from typing import NamedTuple, Union

import numpy as np

from .errors import DomainError, UnsupportedModeError
from .foundation import HBAR2_OVER_2ME
from .quadrature import adaptive_quadrature

SIGMA = 0.0665
DELTA = 0.0835
V0 = 100.0  # meV
WIDTH = 100.0  # Angstrom
M_OUT = 0.0665
ALLOY_BASE = 0.0665
ALLOY_SLOPE = 0.0835
ALLOY_XMAX = 0.32


def _check_sigma_delta(sigma: float, delta: float) -> None:
    if not (math.isfinite(sigma) and sigma > 0.0):
        raise DomainError(f"sigma must be positive, got {sigma!r}")
    if not (math.isfinite(delta) and delta >= 0.0):
        raise DomainError(f"delta must be non-negative, got {delta!r}")


@dataclass(frozen=True)
class ConstantStep:
    """Constant mass ``m1`` inside the barrier."""

    m1: float
    name = "step"

    def __post_init__(self):
        if not (math.isfinite(self.m1) and self.m1 > 0.0):
            raise DomainError(f"m1 must be positive, got {self.m1!r}")

    def derivs(self, zeta):
        zeta = np.asarray(zeta, dtype=float)
        m = np.full_like(zeta, self.m1)
        return m, np.zeros_like(zeta), np.zeros_like(zeta)

    def sqrt_primitive(self, zeta):
        return math.sqrt(self.m1) * np.asarray(zeta, dtype=float)


@dataclass(frozen=True)
class Quadratic:
    """``sigma + delta * zeta**2``."""

    sigma: float = SIGMA
    delta: float = DELTA
    name = "quadratic"

    def __post_init__(self):
        _check_sigma_delta(self.sigma, self.delta)

    def derivs(self, zeta):
        zeta = np.asarray(zeta, dtype=float)
        m = self.sigma + self.delta * zeta**2
        return m, 2.0 * self.delta * zeta, np.full_like(zeta, 2.0 * self.delta)

    def sqrt_primitive(self, zeta):
        zeta = np.asarray(zeta, dtype=float)
        s, dl = self.sigma, self.delta
        if dl == 0.0:
            return math.sqrt(s) * zeta
        return 0.5 * zeta * np.sqrt(s + dl * zeta**2) + s / (2.0 * math.sqrt(dl)) * np.arcsinh(
            zeta * math.sqrt(dl / s)
        )


@dataclass(frozen=True)
class Exponential:
    """``sigma * exp(sqrt(delta) * zeta)``."""

    sigma: float = SIGMA
    delta: float = DELTA
    name = "exponential"

    def __post_init__(self):
        _check_sigma_delta(self.sigma, self.delta)

    def derivs(self, zeta):
        zeta = np.asarray(zeta, dtype=float)
        rd = math.sqrt(self.delta)
        m = self.sigma * np.exp(rd * zeta)
        return m, rd * m, self.delta * m

    def sqrt_primitive(self, zeta):
        zeta = np.asarray(zeta, dtype=float)
        if self.delta == 0.0:
            return math.sqrt(self.sigma) * zeta
        rd = math.sqrt(self.delta)
        return 2.0 * math.sqrt(self.sigma) / rd * np.exp(0.5 * rd * zeta)


@dataclass(frozen=True)
class TanhStep:
    """``sigma + tanh(sqrt(delta) * zeta)``; no elementary primitive of its root."""

    sigma: float = SIGMA
    delta: float = DELTA
    name = "tanh"

    def __post_init__(self):
        _check_sigma_delta(self.sigma, self.delta)

    def derivs(self, zeta):
        zeta = np.asarray(zeta, dtype=float)
        rd = math.sqrt(self.delta)
        t = np.tanh(rd * zeta)
        sech2 = 1.0 - t**2
        return self.sigma + t, rd * sech2, -2.0 * self.delta * t * sech2

    sqrt_primitive = None


@dataclass(frozen=True)
class Rational:
    """``((sqrt(sigma) + delta*zeta**2) / (1 + delta*zeta**2))**2``."""

    sigma: float = SIGMA
    delta: float = DELTA
    name = "rational"

    def __post_init__(self):
        _check_sigma_delta(self.sigma, self.delta)

    def derivs(self, zeta):
        zeta = np.asarray(zeta, dtype=float)
        c = math.sqrt(self.sigma) - 1.0
        dl = self.delta
        u = 1.0 + dl * zeta**2
        # sqrt(m) = g = 1 + c/u
        g = 1.0 + c / u
        g1 = -2.0 * c * dl * zeta / u**2
        g2 = -c * (2.0 * dl / u**2 - 8.0 * dl**2 * zeta**2 / u**3)
        return g * g, 2.0 * g * g1, 2.0 * g1 * g1 + 2.0 * g * g2

    def sqrt_primitive(self, zeta):
        zeta = np.asarray(zeta, dtype=float)
        c = math.sqrt(self.sigma) - 1.0
        if self.delta == 0.0:
            return math.sqrt(self.sigma) * zeta
        rd = math.sqrt(self.delta)
        return zeta + c * np.arctan(rd * zeta) / rd


@dataclass(frozen=True)
class AlloyGraded:
    """Alloy mass law with composition graded as ``xmax * zeta**2``."""

    base: float = ALLOY_BASE
    slope: float = ALLOY_SLOPE
    xmax: float = ALLOY_XMAX
    name = "alloy"

    def __post_init__(self):
        if not (self.base > 0.0 and self.slope >= 0.0 and self.xmax >= 0.0):
            raise DomainError("alloy parameters must satisfy base > 0, slope >= 0, xmax >= 0")

    def composition(self, zeta):
        return self.xmax * np.asarray(zeta, dtype=float) ** 2

    @property
    def as_quadratic(self) -> Quadratic:
        return Quadratic(self.base, self.slope * self.xmax)

    def derivs(self, zeta):
        return self.as_quadratic.derivs(zeta)

    def sqrt_primitive(self, zeta):
        return self.as_quadratic.sqrt_primitive(zeta)


ProfileKind = Union[ConstantStep, Quadratic, Exponential, TanhStep, Rational, AlloyGraded]

KIND_NAMES = ("step", "quadratic", "exponential", "tanh", "rational", "alloy")
# the four graded profiles of the original study, plus the alloy law
GRADED_KINDS = ("quadratic", "exponential", "tanh", "rational")
CATALOG_KINDS = GRADED_KINDS + ("alloy",)


def make_kind(name: str, sigma: float = SIGMA, delta: float = DELTA, m1: float = M_OUT) -> ProfileKind:
    """Build a profile kind from its CLI name."""
    if name == "step":
        return ConstantStep(m1)
    if name == "quadratic":
        return Quadratic(sigma, delta)
    if name == "exponential":
        return Exponential(sigma, delta)
    if name == "tanh":
        return TanhStep(sigma, delta)
    if name == "rational":
        return Rational(sigma, delta)
    if name == "alloy":
        return AlloyGraded()
    raise DomainError(f"unknown profile kind {name!r}")


class Derivs(NamedTuple):
    m: float
    dm: float
    d2m: float


@dataclass(frozen=True)
class MassProfile:
    """A mass profile placed on a barrier of width ``d``.

    ``mirrored=True`` evaluates the profile as ``m(d - z)``.
    """

    kind: ProfileKind
    d: float
    mirrored: bool = False

    def __post_init__(self):
        if not (math.isfinite(self.d) and self.d > 0.0):
            raise DomainError(f"barrier width must be positive, got {self.d!r}")

    @property
    def name(self) -> str:
        return self.kind.name

    def mirror(self) -> "MassProfile":
        return MassProfile(self.kind, self.d, not self.mirrored)

    def _zeta(self, z) -> np.ndarray:
        z = np.asarray(z, dtype=float)
        if not np.all(np.isfinite(z)) or np.any(z < 0.0) or np.any(z > self.d):
            raise DomainError(f"z outside [0, {self.d}]")
        zeta = z / self.d
        return 1.0 - zeta if self.mirrored else zeta

    def derivs_array(self, z):
        """Vectorized ``(m, m', m'')`` with derivatives per Angstrom."""
        m, mz, mzz = self.kind.derivs(self._zeta(z))
        sign = -1.0 if self.mirrored else 1.0
        return m, sign * mz / self.d, mzz / self.d**2

    def mass_at(self, z: float) -> float:
        return float(self.kind.derivs(self._zeta(z))[0])

    def mass_derivs(self, z: float) -> Derivs:
        m, dm, d2m = self.derivs_array(z)
        return Derivs(float(m), float(dm), float(d2m))

    @property
    def has_closed_form(self) -> bool:
        return self.kind.sqrt_primitive is not None

    def _primitive(self, zeta) -> float:
        return float(self.kind.sqrt_primitive(zeta))

    def phase_integral(self, z1: float, z2: float) -> float:
        """``integral of sqrt(m) dz`` from ``z1`` to ``z2`` in sqrt(ratio)*A."""
        self._zeta(z1), self._zeta(z2)
        if z1 > z2:
            raise DomainError(f"require z1 <= z2, got {z1!r} > {z2!r}")
        if z1 == z2:
            return 0.0
        if not self.has_closed_form:
            return adaptive_quadrature(self._sqrt_mass, z1, z2)
        u1, u2 = z1 / self.d, z2 / self.d
        if self.mirrored:
            return self.d * (self._primitive(1.0 - u1) - self._primitive(1.0 - u2))
        return self.d * (self._primitive(u2) - self._primitive(u1))

    def phase_integral_quadrature(self, z1: float, z2: float, tol: float = 1e-12) -> float:
        """Same integral by adaptive quadrature regardless of kind."""
        return adaptive_quadrature(self._sqrt_mass, z1, z2, tol)

    def _sqrt_mass(self, z: float) -> float:
        return math.sqrt(self.mass_at(z))

    @cached_property
    def total_phase(self) -> float:
        """Phase integral across the whole barrier, cached."""
        return self.phase_integral(0.0, self.d)


def mass_at(profile: MassProfile, z: float) -> float:
    return profile.mass_at(z)


def mass_derivs(profile: MassProfile, z: float) -> Derivs:
    return profile.mass_derivs(z)


def phase_integral(profile: MassProfile, z1: float, z2: float) -> float:
    return profile.phase_integral(z1, z2)


class PotentialMode(enum.Enum):
    CORRECTED = "corrected"
    BARE = "bare"


@dataclass(frozen=True)
class BarrierSpec:
    """The full scattering problem: leads of mass ``m_out`` at zero potential
    on both sides of a barrier of width ``d`` and height ``v0``."""

    d: float
    v0: float
    m_out: float
    profile: MassProfile
    potential_mode: PotentialMode = PotentialMode.CORRECTED

    def __post_init__(self):
        if not (math.isfinite(self.d) and self.d > 0.0):
            raise DomainError(f"barrier width must be positive, got {self.d!r}")
        if not math.isfinite(self.v0):
            raise DomainError(f"v0 must be finite, got {self.v0!r}")
        if not (math.isfinite(self.m_out) and self.m_out > 0.0):
            raise DomainError(f"m_out must be positive, got {self.m_out!r}")
        if self.profile.d != self.d:
            raise DomainError(f"profile width {self.profile.d} != barrier width {self.d}")

    @classmethod
    def build(
        cls,
        kind: Union[str, ProfileKind] = "quadratic",
        *,
        d: float = WIDTH,
        v0: float = V0,
        m_out: float = M_OUT,
        potential_mode: PotentialMode = PotentialMode.CORRECTED,
        mirrored: bool = False,
        **kind_params,
    ) -> "BarrierSpec":
        if isinstance(kind, str):
            kind = make_kind(kind, **kind_params)
        return cls(d, v0, m_out, MassProfile(kind, d, mirrored), potential_mode)

    def mirror(self) -> "BarrierSpec":
        return BarrierSpec(self.d, self.v0, self.m_out, self.profile.mirror(), self.potential_mode)

    def with_mode(self, mode: PotentialMode) -> "BarrierSpec":
        return BarrierSpec(self.d, self.v0, self.m_out, self.profile, mode)

    def require_corrected(self) -> None:
        if self.potential_mode is not PotentialMode.CORRECTED:
            raise UnsupportedModeError(
                "no exact interior solution for the bare potential; use the oracle engine"
            )

    def potential_array(self, z) -> np.ndarray:
        """Interior potential at ``z`` (vectorized), honoring ``potential_mode``."""
        z = np.asarray(z, dtype=float)
        m, dm, d2m = self.profile.derivs_array(z)
        if self.potential_mode is PotentialMode.BARE:
            return np.full_like(m, self.v0)
        return self.v0 + HBAR2_OVER_2ME / (4.0 * m**2) * (d2m - 7.0 * dm**2 / (4.0 * m))


def effective_potential(barrier: BarrierSpec, z: float) -> float:
    """Interior potential at ``z`` in meV.

    Corrected mode adds ``C/(4 m^2) * (m'' - 7 m'^2 / (4 m))`` to ``v0``;
    bare mode returns ``v0`` exactly.
    """
    return float(barrier.potential_array(z))


class PotentialSample(NamedTuple):
    z: float
    v: float


def potential_profile(barrier: BarrierSpec, n_points: int) -> list[PotentialSample]:
    """Potential on ``n_points`` uniformly spaced points of ``[0, d]`` (inclusive)."""
    if n_points < 2:
        raise DomainError(f"n_points must be >= 2, got {n_points!r}")
    z = np.linspace(0.0, barrier.d, n_points)
    v = barrier.potential_array(z)
    return [PotentialSample(float(zi), float(vi)) for zi, vi in zip(z, v)]
