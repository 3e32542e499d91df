import functools
import time

import pytest

from ptspectra import ProblemSpec, ShootingConfig, compute_spectrum_reflectionless, compute_spectrum_shooting
from ptspectra.reflection import default_length
from ptspectra.wkb import energy_brackets

_ACCEPTANCE = {}


@functools.lru_cache(maxsize=None)
def shooting_run(K, epsilon, n_max, cutoff=8.0):
    """(levels, seconds) for a shooting spectrum, cached for the session."""
    start = time.perf_counter()
    levels = compute_spectrum_shooting(ProblemSpec(K, epsilon), n_max, ShootingConfig(cutoff))
    return levels, time.perf_counter() - start


def reflection_length(K, n_max):
    spec = ProblemSpec(K)
    return default_length(spec, energy_brackets(spec, n_max, 0.45)[-1][1])


@functools.lru_cache(maxsize=None)
def reflection_run(K, n_max, L, verify_length=True):
    start = time.perf_counter()
    levels = compute_spectrum_reflectionless(ProblemSpec(K), n_max, L, verify_length=verify_length)
    return levels, time.perf_counter() - start


@pytest.fixture(scope="session")
def acceptance():
    """Record (passed, detail) per criterion; printed in the terminal summary."""
    return _ACCEPTANCE


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(_ACCEPTANCE):
        passed, detail = _ACCEPTANCE[key]
        terminalreporter.write_line(f"criterion {key}: {'PASS' if passed else 'FAIL'}  {detail}")
