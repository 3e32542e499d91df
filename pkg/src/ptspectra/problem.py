"""Problem definition for the deformed oscillator H = p^2 + x^(2K) (ix)^eps.

Everything here is closed form: the Stokes wedges where the eigenfunctions
decay, the leading asymptotic exponentials, which of them decays or grows in
each wedge, their travel direction on the real axis when eps = 2, and the
complex turning points of the eps = 2 family V(x) = -x^(2K+2).
"""

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

__all__ = [
    "ProblemSpec",
    "WedgeGeometry",
    "SolutionRole",
    "TurningPoints",
    "EnergyLevel",
    "wedge_geometry",
    "asymptotic_exponent",
    "asymptotic_wave",
    "decaying_branch",
    "classify_roles",
    "current_sign",
    "pt_image_branch",
    "turning_points",
    "potential",
    "branch_power",
]

BRANCHES = ("plus", "minus")
WEDGES = ("left", "right")


def _sign_of(branch):
    if branch == "plus":
        return 1
    if branch == "minus":
        return -1
    raise ValueError(f"branch must be 'plus' or 'minus', got {branch!r}")


def _exact(value):
    """Exact rational for a float, read through its shortest repr."""
    return Fraction(repr(float(value)))


@dataclass(frozen=True)
class ProblemSpec:
    """The pair (K, epsilon) selecting H = p^2 + x^(2K) (ix)^epsilon."""

    K: int
    epsilon: float = 2.0

    def __post_init__(self):
        if isinstance(self.K, bool) or int(self.K) != self.K or self.K < 1:
            raise ValueError(f"K must be an integer >= 1, got {self.K!r}")
        object.__setattr__(self, "K", int(self.K))
        eps = float(self.epsilon)
        if not math.isfinite(eps) or eps < 0.0:
            raise ValueError(f"epsilon must be finite and >= 0, got {self.epsilon!r}")
        object.__setattr__(self, "epsilon", eps)

    @property
    def degree(self) -> float:
        """Power of |x| in the potential, 2K + epsilon."""
        return 2 * self.K + self.epsilon

    @property
    def exponent(self) -> float:
        """Power K + 1 + epsilon/2 in the leading asymptotic exponent."""
        return self.K + 1 + 0.5 * self.epsilon

    @property
    def is_real_family(self) -> bool:
        """True when epsilon == 2, i.e. V(x) = -x^(2K+2) is real."""
        return self.epsilon == 2.0

    def require_real_family(self, what="this operation"):
        if not self.is_real_family:
            raise ValueError(f"{what} requires epsilon = 2, got epsilon = {self.epsilon!r}")


@dataclass(frozen=True)
class WedgeGeometry:
    """Centres, edges and opening angle of the two Stokes wedges, in radians."""

    theta_right: float
    theta_left: float
    opening_angle: float
    right_upper_edge: float
    right_lower_edge: float
    left_upper_edge: float
    left_lower_edge: float
    # the same angles as exact multiples of pi, when epsilon is a finite decimal
    pi_multiples: Optional[dict] = None


def wedge_geometry(spec: ProblemSpec) -> WedgeGeometry:
    """Closed-form Stokes-wedge geometry for ``spec``.

    Angles are assembled as exact rationals times pi and rounded once, so
    the eps = 2 upper edges come out as exactly 0 and -pi.
    """
    eps = _exact(spec.epsilon)
    denom = 4 * spec.K + 2 * eps + 4
    right = -eps / denom
    left = -1 + eps / denom
    opening = Fraction(2) / (2 * spec.K + eps + 2)
    half = opening / 2
    fracs = {
        "theta_right": right,
        "theta_left": left,
        "opening_angle": opening,
        "right_upper_edge": right + half,
        "right_lower_edge": right - half,
        "left_upper_edge": left - half,
        "left_lower_edge": left + half,
    }
    radians = {name: float(frac) * math.pi for name, frac in fracs.items()}
    return WedgeGeometry(pi_multiples=fracs, **radians)


def branch_power(x: complex, p: float) -> complex:
    """``x**p`` with arg(x) taken in (-3pi/2, pi/2].

    The branch cut runs up the positive imaginary axis, so the whole lower
    half plane and the real axis are cut-free. Integer powers are computed
    directly.
    """
    x = complex(x)
    if float(p).is_integer():
        return x ** int(p)
    if x == 0:
        return 0j
    angle = cmath.phase(x)
    if angle > 0.5 * math.pi:
        angle -= 2.0 * math.pi
    return abs(x) ** p * cmath.exp(1j * p * angle)


def _check_cut(x):
    if x.real == 0.0 and x.imag > 0.0:
        raise ValueError(f"x = {x!r} lies on the branch cut (positive imaginary axis)")


def potential(spec: ProblemSpec, x: complex) -> complex:
    """V(x) = x^(2K) (ix)^epsilon with the principal branch of (ix)^epsilon."""
    x = complex(x)
    if spec.epsilon.is_integer():
        return x ** (2 * spec.K) * (1j * x) ** int(spec.epsilon)
    if x == 0:
        return 0j
    return x ** (2 * spec.K) * cmath.exp(spec.epsilon * cmath.log(1j * x))


def asymptotic_exponent(spec: ProblemSpec, branch: str, x: complex) -> complex:
    """Exponent ``±i^(eps/2) x^p / p`` of the leading asymptotic wave, p = K+1+eps/2."""
    sign = _sign_of(branch)
    x = complex(x)
    _check_cut(x)
    p = spec.exponent
    phase = cmath.exp(0.25j * math.pi * spec.epsilon)
    if spec.epsilon == 2.0:
        phase = 1j
    elif spec.epsilon == 0.0:
        phase = 1.0
    return sign * phase * branch_power(x, p) / p


def asymptotic_wave(spec: ProblemSpec, branch: str, x: complex) -> complex:
    """Leading-order exponential ``exp(±i^(eps/2) x^p / p)``.

    Raises ``ValueError`` when ``x`` sits on the branch cut.
    """
    return cmath.exp(asymptotic_exponent(spec, branch, x))


def decaying_branch(spec: ProblemSpec, wedge: str) -> str:
    """Branch of the asymptotic wave that decays inside ``wedge``."""
    if wedge == "right":
        return "minus"
    if wedge == "left":
        return "minus" if spec.K % 2 == 1 else "plus"
    raise ValueError(f"wedge must be 'left' or 'right', got {wedge!r}")


@dataclass(frozen=True)
class SolutionRole:
    branch: str
    wedge: str
    behavior: str
    travel: Optional[str] = None


def current_sign(spec: ProblemSpec, branch: str, x: float) -> int:
    """Sign of Im(psi* psi') for the eps = 2 wave ``exp(±i x^(K+2)/(K+2))``.

    The current equals ``±x^(K+1)``, so +1 means rightward travel.
    """
    spec.require_real_family("current_sign")
    x = float(x)
    if x == 0.0:
        raise ValueError("current_sign is undefined at x = 0")
    sign = _sign_of(branch)
    return sign if (x > 0.0 or spec.K % 2 == 1) else -sign


def classify_roles(spec: ProblemSpec) -> list:
    """Full (branch, wedge) table of decay/growth and, for eps = 2, travel.

    Travel refers to the half of the real axis bounding the wedge: x > 0 for
    the right wedge and x < 0 for the left one.
    """
    roles = []
    for wedge in WEDGES:
        decays = decaying_branch(spec, wedge)
        probe = 1.0 if wedge == "right" else -1.0
        for branch in BRANCHES:
            travel = None
            if spec.is_real_family:
                travel = "rightward" if current_sign(spec, branch, probe) > 0 else "leftward"
            roles.append(SolutionRole(
                branch=branch,
                wedge=wedge,
                behavior="decays" if branch == decays else "grows",
                travel=travel,
            ))
    return roles


def pt_image_branch(spec: ProblemSpec, branch: str) -> str:
    """Branch equal to the eps = 2 wave after x -> -x, i -> -i.

    ``exp(±i x^(K+2)/(K+2))`` maps to itself for odd K and to the other
    branch for even K.
    """
    spec.require_real_family("pt_image_branch")
    _sign_of(branch)
    if spec.K % 2 == 1:
        return branch
    return "minus" if branch == "plus" else "plus"


@dataclass(frozen=True)
class TurningPoints:
    x_right: complex
    x_left: complex
    energy: float


def turning_points(spec: ProblemSpec, E: float) -> TurningPoints:
    """Solutions of -x^(2K+2) = E lying in the two Stokes wedges."""
    spec.require_real_family("turning_points")
    E = float(E)
    if not E > 0.0:
        raise ValueError(f"turning points need E > 0, got {E!r}")
    m = 2 * spec.K + 2
    radius = E ** (1.0 / m)
    angle = math.pi / m
    x_right = complex(radius * math.cos(angle), -radius * math.sin(angle))
    # x_left = -conj(x_right)
    x_left = complex(-x_right.real, x_right.imag)
    return TurningPoints(x_right=x_right, x_left=x_left, energy=E)


@dataclass
class EnergyLevel:
    """One eigenvalue as produced by a solver.

    ``residual`` is the solver's own zero-test quantity (normalised
    Wronskian for shooting, |r| for reflection). ``meta`` carries the
    convergence record: bracket, shifted-cutoff energy, iteration counts.
    """

    n: int
    energy: float
    method: str
    residual: float = float("nan")
    converged: bool = True
    meta: dict = None

    def __post_init__(self):
        if self.meta is None:
            self.meta = {}
