import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from pdmbarrier.errors import DomainError, NumericalFailure
from pdmbarrier.foundation import CONSTANTS, HBAR2_OVER_2ME, is_valid_wavenumber, wavenumber
from pdmbarrier.quadrature import adaptive_quadrature

# hbar^2/(2 m_e) from CODATA 2018 evaluated at 30 digits
C_ORACLE = 3809.98211148596142264713670092
K_100 = 0.0417781643819937415258730670122


def test_constant_matches_unit_conversion():
    assert HBAR2_OVER_2ME == pytest.approx(C_ORACLE, rel=1e-14)
    assert round(HBAR2_OVER_2ME, 4) == 3809.9821
    assert CONSTANTS.hbar2_over_2me > 0


def test_constants_are_frozen():
    with pytest.raises(AttributeError):
        CONSTANTS.hbar2_over_2me = 1.0


@pytest.mark.parametrize(
    "de, m, expected",
    [(100.0, 0.0665, complex(K_100, 0)), (0.0, 0.0665, 0j), (-100.0, 0.0665, complex(0, K_100))],
)
def test_wavenumber_examples(de, m, expected):
    k = wavenumber(de, m)
    assert abs(k - expected) <= 1e-16
    assert is_valid_wavenumber(k)


def test_wavenumber_rounded_value():
    assert abs(wavenumber(100.0, 0.0665) - 0.0417784) < 1e-6


@pytest.mark.parametrize("de, m", [(math.nan, 1.0), (math.inf, 1.0), (1.0, math.nan), (1.0, 0.0), (1.0, -1.0)])
def test_wavenumber_domain(de, m):
    with pytest.raises(DomainError):
        wavenumber(de, m)


energies = st.floats(-1e5, 1e5, allow_nan=False)
masses = st.floats(1e-3, 10.0)


@given(energies, masses)
def test_wavenumber_squared_identity(de, m):
    k = wavenumber(de, m)
    k2 = (k * k).real * HBAR2_OVER_2ME
    assert k2 == pytest.approx(m * de, rel=4 * 2.2e-16, abs=1e-300)


@given(st.floats(0, 1e5), st.floats(0, 1e5), masses)
def test_wavenumber_monotone_in_energy(e1, e2, m):
    lo, hi = sorted((e1, e2))
    assert wavenumber(lo, m).real <= wavenumber(hi, m).real


@given(st.floats(0, 1e5), masses, masses)
def test_wavenumber_monotone_in_mass(e, m1, m2):
    lo, hi = sorted((m1, m2))
    assert wavenumber(e, lo).real <= wavenumber(e, hi).real


def test_quadrature_trivial():
    assert adaptive_quadrature(lambda t: 1.0, 0.0, 1.0) == pytest.approx(1.0, abs=1e-12)
    assert adaptive_quadrature(lambda t: t * t, 0.0, 1.0) == pytest.approx(1.0 / 3.0, abs=1e-12)
    assert adaptive_quadrature(math.sin, 2.0, 2.0) == 0.0


def test_quadrature_against_antiderivative():
    s, dl = 0.0665, 0.0835

    def primitive(t):
        return 0.5 * t * math.sqrt(s + dl * t * t) + s / (2 * math.sqrt(dl)) * math.asinh(t * math.sqrt(dl / s))

    q = adaptive_quadrature(lambda t: math.sqrt(s + dl * t * t), 0.0, 1.0)
    assert abs(q - (primitive(1.0) - primitive(0.0))) <= 1e-12
    assert abs(q - 0.304584880184105304414321860778) <= 1e-12


@pytest.mark.parametrize("degree", range(0, 10))
def test_quadrature_polynomials(degree):
    q = adaptive_quadrature(lambda t: (degree + 1) * t**degree, 0.0, 1.0)
    assert abs(q - 1.0) <= 4 * 2.2e-16


coeffs = st.floats(-10, 10)


@given(coeffs, coeffs)
def test_quadrature_linear(alpha, beta):
    f, g = math.cos, math.exp
    lhs = adaptive_quadrature(lambda t: alpha * f(t) + beta * g(t), 0.0, 2.0)
    rhs = alpha * adaptive_quadrature(f, 0.0, 2.0) + beta * adaptive_quadrature(g, 0.0, 2.0)
    assert abs(lhs - rhs) <= 2e-12 * max(1.0, abs(alpha) + abs(beta))


def test_quadrature_deterministic():
    f = lambda t: math.sqrt(0.0665 + math.tanh(0.3 * t))  # noqa: E731
    assert adaptive_quadrature(f, 0.0, 100.0) == adaptive_quadrature(f, 0.0, 100.0)


def test_quadrature_nonconvergence_reports_estimate():
    with pytest.raises(NumericalFailure) as info:
        adaptive_quadrature(lambda t: math.sin(1.0 / t) if t else 0.0, 0.0, 1.0, tol=1e-14, limit=3)
    assert info.value.estimate is not None and info.value.error is not None


@pytest.mark.parametrize("a, b, tol", [(1.0, 0.0, 1e-12), (0.0, 1.0, 0.0), (0.0, math.inf, 1e-12)])
def test_quadrature_domain(a, b, tol):
    with pytest.raises(DomainError):
        adaptive_quadrature(math.cos, a, b, tol)
