"""Eigenvalues of H = p^2 + x^(2K) (ix)^eps by shooting inside the Stokes wedges.

Decaying asymptotic data is placed on the centre ray of each wedge at
``|x| = cutoff_radius`` and carried inward along a straight ray to a common
matching point on the negative imaginary axis. The two solutions match at an
eigenvalue, which shows up as a zero of their normalised Wronskian.

For real E the PT symmetry of the problem makes the boundary data of the two
wedges mirror images (x -> -conj(x), complex conjugation), and on the
imaginary axis the Wronskian of two mirror solutions is real. Its real part
therefore changes sign at each eigenvalue, which is what the root search
brackets.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from .numerics import (
    DEFAULT_TOLERANCES,
    Contour,
    NoSignChangeError,
    OdeState,
    Tolerances,
    find_root_bracketed,
    integrate_ode,
)
from .problem import (
    EnergyLevel,
    ProblemSpec,
    asymptotic_exponent,
    branch_power,
    decaying_branch,
    wedge_geometry,
)

__all__ = [
    "ShootingConfig",
    "WronskianResidual",
    "MissedLevelError",
    "boundary_state",
    "wronskian_mismatch",
    "compute_spectrum_shooting",
    "convergence_radius",
    "check_cutoff",
]

MIN_BOUNDARY_EXPONENT = 25.0


class MissedLevelError(RuntimeError):
    """Fewer eigenvalues were bracketed than requested.

    ``scan`` holds the (energy, residual) grid that was searched.
    """

    def __init__(self, message, found=(), scan=()):
        super().__init__(message)
        self.found = list(found)
        self.scan = list(scan)


@dataclass(frozen=True)
class ShootingConfig:
    cutoff_radius: float = 8.0
    matching_point: complex = -0.5j
    tolerances: Tolerances = field(default_factory=lambda: DEFAULT_TOLERANCES)

    def __post_init__(self):
        if not self.cutoff_radius > 0.0:
            raise ValueError(f"cutoff_radius must be > 0, got {self.cutoff_radius!r}")
        mp = complex(self.matching_point)
        if mp.imag > 0.0 or (mp.imag == 0.0 and mp != 0):
            raise ValueError(
                f"matching_point must lie in the lower half plane or at 0, got {mp!r}"
            )
        object.__setattr__(self, "matching_point", mp)

    def with_cutoff(self, cutoff_radius):
        return ShootingConfig(cutoff_radius, self.matching_point, self.tolerances)


@dataclass(frozen=True)
class WronskianResidual:
    energy: float
    value: complex


def _wedge_angle(spec, wedge):
    geom = wedge_geometry(spec)
    if wedge == "right":
        return geom.theta_right
    if wedge == "left":
        return geom.theta_left
    raise ValueError(f"wedge must be 'left' or 'right', got {wedge!r}")


def _wedge_point(spec, wedge, radius):
    theta = _wedge_angle(spec, wedge)
    if wedge == "left" and spec.epsilon == 0.0:
        return complex(-radius, 0.0)
    if wedge == "right" and spec.epsilon == 0.0:
        return complex(radius, 0.0)
    return complex(radius * math.cos(theta), radius * math.sin(theta))


def boundary_state(spec: ProblemSpec, wedge: str, E: float, cutoff_radius: float) -> OdeState:
    """Decaying leading-order data at ``cutoff_radius * exp(i theta_wedge)``.

    psi is the bare exponential of the decaying branch and psi' is the
    exponent's derivative times psi; no amplitude prefactor is included.
    The modulus is stored in ``log_scale`` so large exponents cannot
    underflow. ``E`` does not enter the leading-order data.
    """
    del E
    branch = decaying_branch(spec, wedge)
    x = _wedge_point(spec, wedge, cutoff_radius)
    exponent = asymptotic_exponent(spec, branch, x)
    p = spec.exponent
    # d/dx of ±i^(eps/2) x^p / p on the same branch
    slope = exponent * p / x
    psi = complex(math.cos(exponent.imag), math.sin(exponent.imag))
    return OdeState(position=x, psi=psi, dpsi=slope * psi, log_scale=exponent.real)


def check_cutoff(spec, radius):
    """Raise ValueError unless radius > 0 and radius^p / p exceeds 25."""
    if not radius > 0.0:
        raise ValueError(f"cutoff_radius must be > 0, got {radius!r}")
    magnitude = radius ** spec.exponent / spec.exponent
    if magnitude <= MIN_BOUNDARY_EXPONENT:
        raise ValueError(
            f"cutoff_radius {radius!r} too small: leading exponent magnitude "
            f"{magnitude:.3g} must exceed {MIN_BOUNDARY_EXPONENT}"
        )


EXPONENT_BUDGET = 5000.0


def convergence_radius(spec: ProblemSpec, cutoff_radius: float) -> float:
    """Radius for the cutoff re-check: 2 * cutoff, unless that is too costly.

    Step counts grow with the leading exponent |x|^p / p, so the doubled
    radius is reduced until the exponent is at most
    max(5000, 2 * exponent at the cutoff).
    """
    p = spec.exponent
    budget = max(EXPONENT_BUDGET, 2.0 * cutoff_radius ** p / p)
    return min(2.0 * cutoff_radius, (p * budget) ** (1.0 / p))


def _inward_state(spec, wedge, E, config):
    start = boundary_state(spec, wedge, E, config.cutoff_radius)
    contour = Contour([start.position, config.matching_point])
    return integrate_ode(spec, E, contour, start, config.tolerances)


def wronskian_mismatch(spec: ProblemSpec, E: float, config: ShootingConfig = ShootingConfig()) -> WronskianResidual:
    """Normalised Wronskian of the two wedge solutions at the matching point.

    ``value = (psiL psiR' - psiR psiL') / (|psiL psiR'| + |psiR psiL'|)``
    so ``|value| <= 1`` and the accumulated rescaling factors cancel.
    """
    check_cutoff(spec, config.cutoff_radius)
    E = float(E)
    left = _inward_state(spec, "left", E, config)
    right = _inward_state(spec, "right", E, config)
    a = left.psi * right.dpsi
    b = right.psi * left.dpsi
    norm = abs(a) + abs(b)
    value = (a - b) / norm if norm > 0.0 else 0j
    return WronskianResidual(energy=E, value=complex(value))


def _residual(spec, config):
    def f(E):
        return wronskian_mismatch(spec, E, config).value.real
    return f


def _scan_sign_changes(f, grid):
    values = [f(E) for E in grid]
    brackets = []
    for (e0, v0), (e1, v1) in zip(zip(grid[:-1], values[:-1]), zip(grid[1:], values[1:])):
        if v0 == 0.0:
            brackets.append((e0, e0))
        elif v0 * v1 < 0.0:
            brackets.append((e0, e1))
    return brackets, list(zip(grid, values))


def _geometric_grid(upper, start=0.2, ratio=1.3):
    grid = [start]
    while grid[-1] < upper:
        grid.append(grid[-1] * ratio)
    return grid


def _refine_grid(lo, hi, pieces):
    return list(np.linspace(lo, hi, pieces + 1))


def _locate_brackets(spec, config, n_max):
    """Sign-change brackets for levels 0..n_max, plus the scan record."""
    f = _residual(spec, config)
    scan = []
    if spec.is_real_family:
        from .wkb import energy_brackets

        brackets = []
        for lo, hi in energy_brackets(spec, n_max, margin=0.45):
            lo = max(lo, 1e-6)
            found, record = _scan_sign_changes(f, _refine_grid(lo, hi, 4))
            scan.extend(record)
            if len(found) != 1:
                brackets = None
                break
            brackets.append(found[0])
        if brackets is not None:
            return brackets, scan

    # Geometric ladder first; its cells can hide pairs of crossings, so every
    # cell is then subdivided and the crossings recounted.
    upper = 2.0
    while True:
        grid = _geometric_grid(upper)
        coarse, _ = _scan_sign_changes(f, grid)
        if len(coarse) > n_max + 1:
            top = coarse[n_max + 1][0]
            fine = sorted({float(e) for lo, hi in zip(grid[:-1], grid[1:])
                           if lo <= top for e in _refine_grid(lo, hi, 8)})
            brackets, scan = _scan_sign_changes(f, fine)
            if len(brackets) >= n_max + 1:
                return brackets[: n_max + 1], scan
        upper *= 2.0
        if upper > 1e7:
            break
    raise MissedLevelError(
        f"fewer than {n_max + 1} sign changes found below E = {upper:g}",
        scan=list(zip(grid, map(f, grid))),
    )


def _solve_level(spec, config, lo, hi):
    f = _residual(spec, config)
    if lo == hi:
        return lo
    return find_root_bracketed(f, lo, hi, config.tolerances)


def compute_spectrum_shooting(spec: ProblemSpec, n_max: int,
                              config: ShootingConfig = ShootingConfig()) -> list:
    """Lowest ``n_max + 1`` eigenvalues as ``EnergyLevel`` records.

    Each level is re-solved at :func:`convergence_radius` (normally twice the
    cutoff); the level is marked converged when that moves it by less than
    ``10 * root_tol``. The re-solve uses a narrow bracket around the first
    root.

    Raises
    ------
    MissedLevelError
        When fewer sign changes than requested are found.
    """
    if n_max < 0:
        raise ValueError(f"n_max must be >= 0, got {n_max!r}")
    check_cutoff(spec, config.cutoff_radius)
    brackets, _ = _locate_brackets(spec, config, n_max)
    doubled = config.with_cutoff(convergence_radius(spec, config.cutoff_radius))
    tol = config.tolerances
    levels = []
    for n, (lo, hi) in enumerate(brackets):
        energy = _solve_level(spec, config, lo, hi)
        residual = abs(wronskian_mismatch(spec, energy, config).value)
        width = max(1e3 * tol.root_tol, 1e-6 * energy)
        try:
            shifted = find_root_bracketed(
                _residual(spec, doubled), energy - width, energy + width, tol
            )
        except NoSignChangeError:
            shifted = float("nan")
        shift = abs(shifted - energy)
        levels.append(EnergyLevel(
            n=n,
            energy=energy,
            method="shooting",
            residual=residual,
            converged=bool(shift < 10.0 * tol.root_tol),
            meta={
                "bracket": (lo, hi),
                "cutoff_radius": config.cutoff_radius,
                "check_radius": doubled.cutoff_radius,
                "energy_check_radius": shifted,
                "cutoff_shift": shift,
            },
        ))
    energies = [lv.energy for lv in levels]
    if any(b - a <= 100.0 * tol.root_tol for a, b in zip(energies[:-1], energies[1:])):
        raise MissedLevelError("duplicate or unordered levels", found=levels)
    return levels
