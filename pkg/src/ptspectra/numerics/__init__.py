"""Self-contained numerical kernel: Gamma, quadrature, root finding, ODEs."""

from .gamma import gamma_real
from .ode import Contour, IntegrationError, OdeState, integrate_ode
from .quadrature import QuadratureError, quad_complex_segment
from .roots import (
    NoSignChangeError,
    RootFindingError,
    find_root_bracketed,
    golden_section_minimize,
)
from .tolerances import DEFAULT_TOLERANCES, Tolerances

__all__ = [
    "gamma_real",
    "Contour",
    "IntegrationError",
    "OdeState",
    "integrate_ode",
    "QuadratureError",
    "quad_complex_segment",
    "NoSignChangeError",
    "RootFindingError",
    "find_root_bracketed",
    "golden_section_minimize",
    "DEFAULT_TOLERANCES",
    "Tolerances",
]
