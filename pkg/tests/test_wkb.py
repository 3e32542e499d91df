import cmath
import math

import pytest

from ptspectra import ProblemSpec, action_integral, energy_brackets
from ptspectra import wkb_energy_closed_form, wkb_energy_quadrature
from ptspectra.problem import potential, turning_points
from ptspectra.wkb import action_along_path, action_closed_form

# 40-digit mpmath values: the Gamma formula and an independent mpmath
# quadrature along the same segment agree to all printed digits.
ACTION_AT_ONE = {
    1: 1.236049784867581279,
    2: 1.5774548684911360438,
    3: 1.7200309771691853624,
    4: 1.7948159420592871085,
}
LEVELS = {
    (1, 0): 1.3765074034713133716,
    (1, 1): 5.9558016335444043949,
    (1, 3): 18.43214754792130795,
    (1, 10): 79.751270642496772335,
    (2, 0): 0.99367508667784572413,
    (2, 3): 18.403120143450917139,
    (3, 10): 112.84560396023000909,
    (4, 1): 4.9969156938284038517,
}


@pytest.mark.parametrize("K", range(1, 5))
def test_action_at_unit_energy(K):
    assert action_integral(ProblemSpec(K), 1.0) == pytest.approx(ACTION_AT_ONE[K], rel=1e-12)
    assert action_closed_form(ProblemSpec(K)) == pytest.approx(ACTION_AT_ONE[K], rel=1e-13)


def test_action_homogeneity_example():
    spec = ProblemSpec(1)
    assert action_integral(spec, 16.0) == pytest.approx(8.0 * ACTION_AT_ONE[1], rel=1e-12)


@pytest.mark.parametrize("K", [1, 2, 3])
@pytest.mark.parametrize("lam", [2.0, 10.0])
def test_action_homogeneity(K, lam):
    spec = ProblemSpec(K)
    power = (K + 2) / (2 * K + 2)
    for E in (0.7, 3.0):
        assert action_integral(spec, lam * E) == pytest.approx(lam ** power * action_integral(spec, E), rel=1e-9)


@pytest.mark.parametrize("K", [1, 2, 4])
def test_action_monotone(K):
    spec = ProblemSpec(K)
    values = [action_integral(spec, 0.25 * 1.5 ** j) for j in range(12)]
    assert all(b > a for a, b in zip(values, values[1:]))


def test_harmonic_hook():
    value = action_along_path(lambda t: t * t, 1.0, lambda s: s, lambda s: 1.0)
    assert value == pytest.approx(math.pi / 2, abs=1e-11)


@pytest.mark.parametrize("K", [1, 2, 3])
def test_path_independence(K):
    spec = ProblemSpec(K)
    E = 2.5
    tp = turning_points(spec, E)
    mid = 0.5 * (tp.x_left + tp.x_right)
    half = 0.5 * (tp.x_right - tp.x_left)
    bulge = 0.15 * abs(half)

    # shallow arc bowing away from the real axis, same endpoints
    def path(s):
        return mid + half * s - 1j * bulge * (1.0 - s * s)

    def dpath(s):
        return half + 2j * bulge * s

    arc = action_along_path(lambda t: potential(spec, t), E, path, dpath)
    assert abs(arc.imag) < 1e-8
    assert arc.real == pytest.approx(action_integral(spec, E), rel=1e-8)


@pytest.mark.parametrize("K, n", sorted(LEVELS))
def test_closed_form_levels(K, n):
    assert wkb_energy_closed_form(ProblemSpec(K), n).energy == pytest.approx(LEVELS[K, n], rel=1e-13)


def test_closed_form_ground_state_value():
    # coefficient of (n + 1/2) for K = 1 is 2.5416392543819373
    E0 = wkb_energy_closed_form(ProblemSpec(1), 0).energy
    assert E0 == pytest.approx(1.37650740347, rel=1e-10)
    assert wkb_energy_closed_form(ProblemSpec(1), 10).energy == pytest.approx(
        (2.5416392543819373 * 10.5) ** (4 / 3), rel=1e-13)


@pytest.mark.parametrize("K", range(1, 5))
def test_quadrature_matches_closed_form(K):
    spec = ProblemSpec(K)
    for n in range(11):
        quad = wkb_energy_quadrature(spec, n)
        assert quad.source == "quadrature"
        assert quad.energy == pytest.approx(wkb_energy_closed_form(spec, n).energy, rel=1e-6)


@pytest.mark.parametrize("K, n", [(1, 0), (2, 3), (3, 10), (4, 3)])
def test_action_inverts_closed_form(K, n):
    spec = ProblemSpec(K)
    E = wkb_energy_closed_form(spec, n).energy
    assert action_integral(spec, E) == pytest.approx((n + 0.5) * math.pi, rel=1e-6)


def test_levels_increase():
    spec = ProblemSpec(3)
    energies = [wkb_energy_closed_form(spec, n).energy for n in range(20)]
    assert all(b > a for a, b in zip(energies, energies[1:]))


def test_brackets_examples():
    spec = ProblemSpec(1)
    (lo, hi), = energy_brackets(spec, 0, 0.4)
    assert lo < 1.3765 < hi and lo > 0.0
    wide = energy_brackets(spec, 20, 0.45)
    assert len(wide) == 21
    assert all(a[1] < b[0] for a, b in zip(wide, wide[1:]))
    six = energy_brackets(ProblemSpec(3), 5, 0.3)
    assert len(six) == 6 and all(lo < hi for lo, hi in six)
    assert all(a[1] < b[0] for a, b in zip(six, six[1:]))


def test_brackets_reject_bad_margin():
    with pytest.raises(ValueError):
        energy_brackets(ProblemSpec(1), 3, 0.5)
    with pytest.raises(ValueError):
        energy_brackets(ProblemSpec(1), -1, 0.3)


def test_wkb_needs_real_family():
    with pytest.raises(ValueError):
        action_integral(ProblemSpec(1, 1.0), 1.0)
    with pytest.raises(ValueError):
        wkb_energy_closed_form(ProblemSpec(1), -1)
