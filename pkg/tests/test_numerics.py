import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ptspectra import ProblemSpec
from ptspectra.numerics import (
    Contour,
    IntegrationError,
    NoSignChangeError,
    OdeState,
    QuadratureError,
    RootFindingError,
    Tolerances,
    find_root_bracketed,
    gamma_real,
    golden_section_minimize,
    integrate_ode,
    quad_complex_segment,
)
from ptspectra.problem import asymptotic_exponent

# 40-digit mpmath evaluations, frozen
GAMMA_ORACLE = {
    0.1: 9.5135076986687318363,
    0.25: 3.6256099082219083119,
    1 / 3: 2.6789385347077479133,
    0.75: 1.2254167024651776451,
    1.5: 0.88622692545275801365,
    7.5: 1871.2543057977883465,
    29.5: 1.6348125198274266444e30,
}


# gamma

@pytest.mark.parametrize("x, expected", [(0.5, math.sqrt(math.pi)), (1.0, 1.0), (5.0, 24.0)])
def test_gamma_exact_values(x, expected):
    assert gamma_real(x) == pytest.approx(expected, rel=1e-14)


@pytest.mark.parametrize("x", sorted(GAMMA_ORACLE))
def test_gamma_against_oracle(x):
    assert abs(gamma_real(x) / GAMMA_ORACLE[x] - 1.0) < 1e-12


def test_gamma_recurrence():
    for x in np.arange(1, 101) / 10.0:
        assert gamma_real(x + 1) == pytest.approx(x * gamma_real(x), rel=1e-12)


@given(st.floats(min_value=1e-3, max_value=29.0))
def test_gamma_matches_stdlib(x):
    assert gamma_real(x) == pytest.approx(math.gamma(x), rel=1e-12)


@pytest.mark.parametrize("x", [0.0, -1.0, -0.5])
def test_gamma_domain(x):
    with pytest.raises(ValueError):
        gamma_real(x)


# quadrature

def test_quad_constant_on_complex_segment():
    assert quad_complex_segment(lambda t: 1.0, 0.0, 1 + 1j) == pytest.approx(1 + 1j, abs=1e-13)


def test_quad_semicircle():
    value = quad_complex_segment(lambda t: cmath.sqrt(1 - t * t), -1.0, 1.0)
    assert value == pytest.approx(math.pi / 2, abs=1e-11)


def test_quad_inverse_sqrt_endpoints():
    value = quad_complex_segment(lambda t: 1 / cmath.sqrt(1 - t * t), -1.0, 1.0)
    assert value == pytest.approx(math.pi, abs=1e-9)


def test_quad_analytic_complex():
    value = quad_complex_segment(cmath.exp, 0.0, 1j * math.pi)
    assert abs(value - (-2.0)) < 1e-11


def test_quad_gives_up():
    with pytest.raises(QuadratureError):
        quad_complex_segment(lambda t: 1 / (t.real - 0.3), 0.0, 1.0, max_subdivisions=20)


# roots

def test_root_linear():
    assert find_root_bracketed(lambda E: E - 2.0, 0.0, 5.0) == pytest.approx(2.0, abs=1e-9)


def test_root_cos():
    assert abs(find_root_bracketed(math.cos, 1.0, 2.0) - math.pi / 2) < 1e-9


def test_root_respects_energy_tolerance():
    tol = Tolerances(root_tol=1e-4)
    root = find_root_bracketed(lambda E: (E - 0.1234567) ** 3, 0.0, 1.0, tol)
    assert abs(root - 0.1234567) < 1e-4


def test_root_no_sign_change():
    with pytest.raises(NoSignChangeError):
        find_root_bracketed(lambda E: E * E + 1.0, -1.0, 1.0)


def test_root_iteration_cap():
    with pytest.raises(RootFindingError):
        find_root_bracketed(lambda E: E - 1e-3, 0.0, 1.0, Tolerances(root_tol=1e-15), max_iter=3)


@given(st.floats(min_value=-10, max_value=10))
def test_root_of_shifted_cubic(c):
    root = find_root_bracketed(lambda x: (x - c) ** 3 + (x - c), -20.0, 20.0)
    assert abs(root - c) < 1e-9


def test_golden_section():
    x, fx = golden_section_minimize(lambda t: (t - 0.3) ** 2 + 1.0, 0.0, 1.0, 1e-9)
    # a quadratic minimum is only resolvable to about sqrt(machine epsilon)
    assert x == pytest.approx(0.3, abs=1e-7)
    assert fx == pytest.approx(1.0)


# ODE

HO = ProblemSpec(1, 0.0)
PT = ProblemSpec(1, 2.0)


def test_ode_linear_solution():
    start = OdeState(0.0, 1.0, 1.0)
    end = integrate_ode(HO, 0.0, Contour([0.0, 2.0]), start, coupling=0.0)
    assert end.psi * math.exp(end.log_scale) == pytest.approx(3.0, abs=1e-10)
    assert end.dpsi * math.exp(end.log_scale) == pytest.approx(1.0, abs=1e-10)


def test_ode_gaussian_ground_state():
    start = OdeState(-6.0, math.exp(-18.0), 6.0 * math.exp(-18.0))
    end = integrate_ode(HO, 1.0, Contour([-6.0, 0.0]), start)
    scale = math.exp(end.log_scale)
    assert abs(end.psi * scale - 1.0) < 1e-6
    assert abs(end.dpsi * scale) < 1e-5


def test_ode_smoke_inside_right_wedge():
    ray = cmath.exp(-1j * math.pi / 6)

    def inward(radius):
        x0 = radius * ray
        S = asymptotic_exponent(PT, "minus", x0)
        start = OdeState(x0, cmath.exp(1j * S.imag), 3.0 * S / x0 * cmath.exp(1j * S.imag), S.real)
        return integrate_ode(PT, 1.5, Contour([x0, 0.1 * ray]), start)

    near = inward(8.0)
    far = inward(16.0)
    for state in (near, far):
        assert all(map(math.isfinite, (state.psi.real, state.psi.imag, state.log_scale)))
        assert state.psi != 0
    assert abs(near.log_derivative - far.log_derivative) < 1e-8 * abs(far.log_derivative)


def test_ode_forward_backward():
    contour = Contour([-3.0, -1.0 - 0.7j, 2.5 - 0.3j])
    start = OdeState(-3.0, 0.3 - 0.2j, 1.1 + 0.4j)
    there = integrate_ode(PT, 2.2, contour, start)
    back = integrate_ode(PT, 2.2, contour.reversed(), there)
    scale = math.exp(back.log_scale)
    assert abs(back.psi * scale - start.psi) < 1e-8 * abs(start.psi)
    assert abs(back.dpsi * scale - start.dpsi) < 1e-8 * abs(start.dpsi)


@settings(max_examples=20, deadline=None)
@given(st.complex_numbers(min_magnitude=0.1, max_magnitude=10.0, allow_nan=False, allow_infinity=False))
def test_ode_linearity(c):
    contour = Contour([-2.0, -0.5j, 2.0])
    start = OdeState(-2.0, 0.4 + 0.1j, -0.3j)
    base = integrate_ode(PT, 3.0, contour, start)
    scaled = integrate_ode(PT, 3.0, contour, OdeState(-2.0, c * start.psi, c * start.dpsi))
    ratio = math.exp(scaled.log_scale - base.log_scale)
    assert abs(scaled.psi * ratio - c * base.psi) < 1e-8 * abs(c * base.psi)
    assert abs(scaled.dpsi * ratio - c * base.dpsi) < 1e-8 * abs(c * base.dpsi)


def test_ode_wronskian_is_conserved():
    points = [-1.5 - 0.5j, -0.5 - 1.0j, 0.5 - 0.3j, 1.5 - 0.6j]
    one = OdeState(points[0], 1.0, 0.0)
    two = OdeState(points[0], 0.0, 1.0)
    w0 = one.psi * two.dpsi - two.psi * one.dpsi
    for k in range(2, len(points) + 1):
        contour = Contour(points[:k])
        a = integrate_ode(PT, 1.0, contour, one)
        b = integrate_ode(PT, 1.0, contour, two)
        w = (a.psi * b.dpsi - b.psi * a.dpsi) * math.exp(a.log_scale + b.log_scale)
        assert abs(w - w0) < 1e-8 * abs(w0)


def test_ode_tolerance_halving():
    coarse = Tolerances(ode_rel=1e-8, ode_abs=1e-10)
    fine = Tolerances(ode_rel=5e-9, ode_abs=5e-11)
    contour = Contour([-3.0, -1.0j, 3.0])
    start = OdeState(-3.0, 1.0, 1j)
    a = integrate_ode(PT, 4.0, contour, start, coarse)
    b = integrate_ode(PT, 4.0, contour, start, fine)
    ratio = math.exp(a.log_scale - b.log_scale)
    assert abs(a.psi * ratio - b.psi) < coarse.ode_rel * abs(b.psi)


def test_ode_rescales_instead_of_overflowing():
    start = OdeState(0.0, 1.0, 0.0)
    end = integrate_ode(HO, 1.0, Contour([0.0, 40.0]), start)
    assert end.log_scale + math.log(abs(end.psi)) > 700.0
    assert end.log_scale > 0.0
    assert 1e-100 <= abs(end.psi) <= 1e100


def test_ode_start_mismatch():
    with pytest.raises(ValueError):
        integrate_ode(HO, 1.0, Contour([0.0, 1.0]), OdeState(0.5, 1.0, 0.0))


def test_ode_zero_state():
    with pytest.raises(ValueError):
        integrate_ode(HO, 1.0, Contour([0.0, 1.0]), OdeState(0.0, 0.0, 0.0))


def test_contour_needs_distinct_points():
    with pytest.raises(ValueError):
        Contour([1.0])
    with pytest.raises(ValueError):
        Contour([1.0, 1.0])


def test_integration_error_carries_position():
    err = IntegrationError("stuck", position=1 + 2j)
    assert err.position == 1 + 2j


def test_tolerances_validation():
    with pytest.raises(ValueError):
        Tolerances(ode_rel=0.0)
    t = Tolerances()
    assert (t.ode_rel, t.ode_abs, t.root_tol, t.quad_tol) == (1e-10, 1e-12, 1e-9, 1e-11)
    assert t.scaled(0.1).ode_rel == pytest.approx(1e-11)
