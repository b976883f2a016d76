import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pdmbarrier.errors import DomainError
from pdmbarrier.profiles import (
    CATALOG_KINDS,
    GRADED_KINDS,
    KIND_NAMES,
    AlloyGraded,
    BarrierSpec,
    ConstantStep,
    Exponential,
    MassProfile,
    PotentialMode,
    Quadratic,
    Rational,
    TanhStep,
    effective_potential,
    mass_at,
    mass_derivs,
    phase_integral,
    potential_profile,
)

D = 100.0
ALL_KINDS = [Quadratic(), Exponential(), TanhStep(), Rational(), AlloyGraded(), ConstantStep(0.0665)]

# phase integrals over [0, 100 A], mpmath quadrature at 30 digits
PHASE_ORACLE = {
    "step": 25.7875939164552535032984335957,
    "quadratic": 30.4584880184105304414321860778,
    "exponential": 27.7435693199988651117161691481,
    "tanh": 44.754783453690750822178053572,
    "rational": 27.7554839656585180054467969396,
}


def profile(kind, mirrored=False):
    return MassProfile(kind, D, mirrored)


def test_mass_examples():
    q = profile(Quadratic(0.0665, 0.0835))
    assert mass_at(q, 0.0) == 0.0665
    assert mass_at(q, D) == pytest.approx(0.15, abs=1e-15)
    assert mass_at(profile(Rational(0.0665, 0.0835)), 0.0) == pytest.approx(0.0665, rel=1e-15)


def test_alloy_is_composed_quadratic():
    alloy = AlloyGraded()
    assert alloy.as_quadratic == Quadratic(0.0665, 0.0835 * 0.32)
    zeta = np.linspace(0, 1, 11)
    x = alloy.composition(zeta)
    assert x.min() == 0.0 and x.max() == pytest.approx(0.32)
    np.testing.assert_allclose(alloy.derivs(zeta)[0], 0.0665 + 0.0835 * x, rtol=1e-15)


@pytest.mark.parametrize("z", [-1e-9, D + 1e-9, math.nan])
def test_mass_domain(z):
    with pytest.raises(DomainError):
        mass_at(profile(Quadratic()), z)


@pytest.mark.parametrize("bad", [lambda: Quadratic(0.0, 0.1), lambda: Rational(0.1, -1.0), lambda: ConstantStep(0.0)])
def test_invalid_kinds(bad):
    with pytest.raises(DomainError):
        bad()


def test_exponential_derivative_identity():
    p = profile(Exponential(0.0665, 0.0835))
    for z in (0.0, 37.0, D):
        m, dm, d2m = mass_derivs(p, z)
        assert dm == pytest.approx(math.sqrt(0.0835) / D * m, rel=1e-15)
        assert d2m == pytest.approx(0.0835 / D**2 * m, rel=1e-15)


def test_quadratic_derivs_at_origin():
    m, dm, d2m = mass_derivs(profile(Quadratic(0.0665, 0.0835)), 0.0)
    assert dm == 0.0
    assert d2m == pytest.approx(2 * 0.0835 / D**2, rel=1e-15)


@pytest.mark.parametrize("kind", ALL_KINDS, ids=lambda k: k.name)
@pytest.mark.parametrize("mirrored", [False, True])
def test_derivatives_match_finite_differences(kind, mirrored):
    p = profile(kind, mirrored)
    rng = np.random.default_rng(7)
    h = 1e-3
    for z in rng.uniform(h, D - h, 100):
        m, dm, d2m = p.mass_derivs(z)
        fd1 = (p.mass_at(z + h) - p.mass_at(z - h)) / (2 * h)
        # m'' from central differences of m', which avoids the eps*m/h^2 round-off floor
        fd2 = (p.mass_derivs(z + h).dm - p.mass_derivs(z - h).dm) / (2 * h)
        assert abs(fd1 - dm) <= 1e-6 * max(abs(dm), m / D)
        assert abs(fd2 - d2m) <= 1e-6 * max(abs(d2m), m / D**2)


@pytest.mark.parametrize("kind", ALL_KINDS, ids=lambda k: k.name)
def test_positivity(kind):
    m, _, _ = profile(kind).derivs_array(np.linspace(0, D, 10_000))
    assert np.all(m > 0)


@pytest.mark.parametrize("name, expected", PHASE_ORACLE.items())
def test_phase_integral_against_oracle(name, expected):
    kind = ConstantStep(0.0665) if name == "step" else {k.name: k for k in ALL_KINDS}[name]
    assert phase_integral(profile(kind), 0.0, D) == pytest.approx(expected, abs=1e-11)


def test_phase_integral_quadratic_closed_form():
    s, dl = 0.0665, 0.0835
    closed = D * (0.5 * math.sqrt(s + dl) + s / (2 * math.sqrt(dl)) * math.asinh(math.sqrt(dl / s)))
    assert phase_integral(profile(Quadratic(s, dl)), 0.0, D) == pytest.approx(closed, abs=1e-12)


@pytest.mark.parametrize("kind", [k for k in ALL_KINDS if k.sqrt_primitive is not None], ids=lambda k: k.name)
@pytest.mark.parametrize("mirrored", [False, True])
def test_closed_forms_agree_with_quadrature(kind, mirrored):
    p = profile(kind, mirrored)
    for z1, z2 in [(0.0, D), (12.5, 60.0), (80.0, 99.0)]:
        assert abs(p.phase_integral(z1, z2) - p.phase_integral_quadrature(z1, z2)) <= 1e-10


def test_phase_integral_empty_interval():
    for kind in ALL_KINDS:
        assert phase_integral(profile(kind), 42.0, 42.0) == 0.0


def test_phase_integral_order():
    with pytest.raises(DomainError):
        phase_integral(profile(Quadratic()), 50.0, 10.0)


zs = st.floats(0.0, D)


@settings(max_examples=50, deadline=None)
@given(st.sampled_from(ALL_KINDS), st.booleans(), zs, zs, zs)
def test_phase_integral_additive_and_monotone(kind, mirrored, a, b, c):
    a, b, c = sorted((a, b, c))
    p = profile(kind, mirrored)
    whole = p.phase_integral(a, c)
    assert whole == pytest.approx(p.phase_integral(a, b) + p.phase_integral(b, c), abs=1e-10)
    assert p.phase_integral(a, b) <= whole + 1e-12


def test_mirror_reflects_mass():
    p = profile(TanhStep())
    q = p.mirror()
    for z in (0.0, 13.0, 50.0, 100.0):
        assert q.mass_at(z) == pytest.approx(p.mass_at(D - z), rel=1e-15)
        assert q.mass_derivs(z).dm == pytest.approx(-p.mass_derivs(D - z).dm, rel=1e-15)
    assert q.total_phase == pytest.approx(p.total_phase, abs=1e-11)


def test_effective_potential_examples():
    step = BarrierSpec.build("step", m1=0.0665)
    assert all(effective_potential(step, z) == 100.0 for z in (0.0, 50.0, 100.0))
    exp = BarrierSpec.build("exponential")
    # correction -3 delta C / (16 sigma d^2), 30-digit evaluation
    assert effective_potential(exp, 0.0) - 100.0 == pytest.approx(-0.0896992968916572684561, rel=1e-12)
    quad = BarrierSpec.build("quadratic")
    # correction delta C / (2 sigma^2 d^2)
    assert effective_potential(quad, 0.0) - 100.0 == pytest.approx(3.59696428638224635413, rel=1e-12)


def test_effective_potential_bare_mode():
    b = BarrierSpec.build("tanh", potential_mode=PotentialMode.BARE)
    assert effective_potential(b, 0.0) == 100.0


@settings(max_examples=30, deadline=None)
@given(st.floats(0.01, 5.0), st.floats(-500, 500), zs)
def test_constant_profile_has_no_correction(m1, v0, z):
    b = BarrierSpec.build("step", m1=m1, v0=v0)
    assert effective_potential(b, z) == v0


def test_potential_profile_examples():
    step = BarrierSpec.build("step")
    samples = potential_profile(step, 3)
    assert [s.v for s in samples] == [100.0, 100.0, 100.0]
    ends = potential_profile(BarrierSpec.build("quadratic"), 2)
    assert (ends[0].z, ends[1].z) == (0.0, D)
    with pytest.raises(DomainError):
        potential_profile(step, 1)


def test_correction_magnitudes():
    """Peak |V - V0| per graded profile: exponential is negligible, tanh dominates."""
    peaks = {}
    for name in GRADED_KINDS:
        b = BarrierSpec.build(name)
        peaks[name] = max(abs(s.v - 100.0) for s in potential_profile(b, 10_001))
    assert peaks["exponential"] <= 0.1
    assert max(peaks, key=peaks.get) == "tanh"
    # tanh correction at z=0: -7 delta C / (16 sigma^3 d^2)
    c = 3809.98211148596142264713670092
    assert peaks["tanh"] == pytest.approx(7 * 0.0835 * c / (16 * 0.0665**3 * D**2), rel=1e-9)


def test_barrier_validation():
    with pytest.raises(DomainError):
        BarrierSpec.build("quadratic", d=0.0)
    with pytest.raises(DomainError):
        BarrierSpec.build("quadratic", m_out=-1.0)
    with pytest.raises(DomainError):
        BarrierSpec(50.0, 100.0, 0.0665, MassProfile(Quadratic(), 100.0))
    with pytest.raises(DomainError):
        BarrierSpec.build("nope")


def test_catalog_names():
    assert set(CATALOG_KINDS) | {"step"} == set(KIND_NAMES)
