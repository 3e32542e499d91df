import math

import pytest

from ptspectra import ProblemSpec, ShootingConfig, compute_spectrum_shooting, wkb_energy_closed_form
from ptspectra import wronskian_mismatch
from ptspectra.numerics import Tolerances, find_root_bracketed
from ptspectra.shooting import boundary_state, check_cutoff, convergence_radius

from conftest import reflection_length, reflection_run, shooting_run

HO = ProblemSpec(1, 0.0)
PT = ProblemSpec(1, 2.0)


def test_harmonic_levels():
    levels, _ = shooting_run(1, 0.0, 5)
    for lv in levels[:4]:
        assert abs(lv.energy - (2 * lv.n + 1)) < 1e-7
        assert lv.method == "shooting" and lv.converged


def test_wronskian_at_and_off_an_eigenvalue():
    assert abs(wronskian_mismatch(HO, 1.0).value) < 1e-6
    assert abs(wronskian_mismatch(HO, 2.0).value) > 1e-2


def test_wronskian_is_normalised():
    for E in (0.3, 2.0, 4.4, 10.0):
        assert abs(wronskian_mismatch(PT, E).value) <= 1.0 + 1e-15


def test_root_finder_on_wronskian():
    f = lambda E: wronskian_mismatch(HO, E).value.real
    assert abs(find_root_bracketed(f, 0.5, 1.5) - 1.0) < 1e-7


def test_ground_state_of_minus_x4():
    # published value 1.477149754 for H = p^2 - x^4
    levels, _ = shooting_run(1, 2.0, 5)
    assert levels[0].energy == pytest.approx(1.477149754, abs=1e-9)


def test_levels_follow_wkb():
    levels, _ = shooting_run(1, 2.0, 5)
    energies = [lv.energy for lv in levels]
    assert all(b > a for a, b in zip(energies, energies[1:]))
    wkb5 = wkb_energy_closed_form(PT, 5).energy
    assert abs(energies[5] - wkb5) < 0.01 * wkb5


def test_k2_deviation_from_wkb_decreases():
    spec = ProblemSpec(2)
    levels, _ = shooting_run(2, 2.0, 5)
    dev = [abs(lv.energy - wkb_energy_closed_form(spec, lv.n).energy) / lv.energy for lv in levels[:3]]
    assert all(lv.energy > 0 for lv in levels)
    assert dev[0] > dev[1] > dev[2]


def test_boundary_branches():
    state = boundary_state(HO, "right", 1.0, 8.0)
    assert state.position == 8.0
    # |psi| falls off outward: d log|psi| / d|x| < 0
    assert state.log_derivative.real < 0.0
    assert state.log_scale == pytest.approx(-32.0)
    right = boundary_state(PT, "right", 1.0, 8.0)
    assert right.log_scale == pytest.approx(-8.0 ** 3 / 3.0)
    left_k2 = boundary_state(ProblemSpec(2), "left", 1.0, 8.0)
    assert left_k2.log_scale == pytest.approx(-8.0 ** 4 / 4.0)


def test_cutoff_check():
    with pytest.raises(ValueError):
        check_cutoff(PT, 2.0)
    with pytest.raises(ValueError):
        ShootingConfig(cutoff_radius=-1.0)
    with pytest.raises(ValueError):
        ShootingConfig(matching_point=0.5j)
    assert convergence_radius(PT, 8.0) == 16.0
    assert convergence_radius(ProblemSpec(3), 8.0) < 16.0


def test_cross_method_residual():
    L = reflection_length(1, 5)
    refl, _ = reflection_run(1, 5, L)
    assert abs(wronskian_mismatch(PT, refl[0].energy).value) < 1e-6


@pytest.mark.parametrize("K", [1, 2])
def test_residual_insensitive_to_cutoff(K):
    levels, _ = shooting_run(K, 2.0, 5)
    shifted = ShootingConfig(10.0)
    for lv in levels:
        assert abs(wronskian_mismatch(ProblemSpec(K), lv.energy, shifted).value) < 1e-6


def test_matching_point_independence():
    base, _ = shooting_run(1, 2.0, 5)
    moved = compute_spectrum_shooting(PT, 3, ShootingConfig(matching_point=-1.0j))
    for a, b in zip(base, moved):
        assert abs(a.energy - b.energy) < 10 * Tolerances().root_tol


def test_epsilon_continuity():
    eps_grid = [0.0, 0.5, 1.0, 1.5, 2.0]
    ground = [compute_spectrum_shooting(ProblemSpec(1, eps), 0)[0].energy for eps in eps_grid]
    assert ground[0] == pytest.approx(1.0, abs=1e-7)
    assert ground[-1] == pytest.approx(1.4771497535, abs=1e-8)
    slopes = [(b - a) / 0.5 for a, b in zip(ground, ground[1:])]
    for i in range(1, len(slopes)):
        assert abs(ground[i + 1] - ground[i]) <= 1.5 * max(abs(slopes[i - 1]), abs(slopes[i])) * 0.5


def test_non_integer_epsilon_spectrum():
    levels = compute_spectrum_shooting(ProblemSpec(1, 1.0), 3)
    energies = [lv.energy for lv in levels]
    assert energies[0] == pytest.approx(1.1562670719881, abs=1e-7)
    assert all(b > a > 0 for a, b in zip(energies, energies[1:]))
    assert all(lv.converged for lv in levels)


def test_level_count_and_gaps():
    levels, _ = shooting_run(2, 2.0, 5)
    assert [lv.n for lv in levels] == list(range(6))
    gaps = [b.energy - a.energy for a, b in zip(levels, levels[1:])]
    assert min(gaps) > 100 * Tolerances().root_tol
    for lv in levels:
        assert lv.meta["cutoff_shift"] < 10 * Tolerances().root_tol
        lo, hi = lv.meta["bracket"]
        assert lo <= lv.energy <= hi


def test_rejects_negative_n():
    with pytest.raises(ValueError):
        compute_spectrum_shooting(PT, -1)
