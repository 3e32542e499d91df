"""Spectra of PT-symmetric oscillators by shooting, reflectionlessness and WKB.

The Hamiltonians are H = p^2 + x^(2K) (ix)^eps. Complex-contour shooting
handles any eps >= 0. For eps = 2 the same levels are also found as the
energies at which the real potential -x^(2K+2) does not reflect, and
compared with the WKB quantisation formula.
"""

from .numerics import DEFAULT_TOLERANCES, Contour, OdeState, Tolerances, integrate_ode
from .problem import (
    EnergyLevel,
    ProblemSpec,
    SolutionRole,
    TurningPoints,
    WedgeGeometry,
    asymptotic_wave,
    classify_roles,
    current_sign,
    decaying_branch,
    turning_points,
    wedge_geometry,
)
from .reflection import (
    ScatteringResult,
    compute_spectrum_reflectionless,
    lg_wave,
    reflection_amplitude,
)
from .shooting import (
    ShootingConfig,
    WronskianResidual,
    compute_spectrum_shooting,
    wronskian_mismatch,
)
from .wkb import (
    WkbEstimate,
    action_integral,
    energy_brackets,
    wkb_energy_closed_form,
    wkb_energy_quadrature,
)

__version__ = "0.1.0"

__all__ = [
    "DEFAULT_TOLERANCES", "Contour", "OdeState", "Tolerances", "integrate_ode",
    "EnergyLevel", "ProblemSpec", "SolutionRole", "TurningPoints", "WedgeGeometry",
    "asymptotic_wave", "classify_roles", "current_sign", "decaying_branch",
    "turning_points", "wedge_geometry",
    "ScatteringResult", "compute_spectrum_reflectionless", "lg_wave", "reflection_amplitude",
    "ShootingConfig", "WronskianResidual", "compute_spectrum_shooting", "wronskian_mismatch",
    "WkbEstimate", "action_integral", "energy_brackets", "wkb_energy_closed_form",
    "wkb_energy_quadrature",
]
