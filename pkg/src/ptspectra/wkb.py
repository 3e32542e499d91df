"""WKB estimates for the eps = 2 family V(x) = -x^(2K+2).

The quantisation integral of sqrt(E - V) runs between the two complex
turning points in the lower half plane. Because V is a pure power the
integral is homogeneous in E, which gives the closed-form levels

    E_n = ((n + 1/2) sqrt(pi) (K+2) Gamma((K+2)/(2K+2))
           / (Gamma(1/(2K+2)) cos(pi/(2K+2)))) ** ((2K+2)/(K+2)).
"""

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .numerics import (
    DEFAULT_TOLERANCES,
    find_root_bracketed,
    gamma_real,
    quad_complex_segment,
)
from .problem import ProblemSpec, potential, turning_points

__all__ = [
    "WkbEstimate",
    "BranchTrackingError",
    "action_integral",
    "action_along_path",
    "action_closed_form",
    "wkb_energy_closed_form",
    "wkb_energy_quadrature",
    "energy_brackets",
]

_TRACK_SAMPLES = 2001


class BranchTrackingError(RuntimeError):
    """The tracked action has a sizeable imaginary part."""


@dataclass(frozen=True)
class WkbEstimate:
    n: int
    energy: float
    source: str


def _tracked_sqrt(q, path):
    """Continuous branch of sqrt(q(path(s))) for s in [-1, 1].

    The branch is followed on a grid uniform in sigma, s = sin(pi sigma/2),
    seeded with the principal root at the midpoint; between grid points the
    root nearer the interpolated reference is taken.
    """
    sigma = np.linspace(-1.0, 1.0, _TRACK_SAMPLES)
    s_grid = np.sin(0.5 * np.pi * sigma)
    raw = np.array([cmath.sqrt(q(path(s))) for s in s_grid])
    ref = np.empty_like(raw)
    mid = _TRACK_SAMPLES // 2
    ref[mid] = raw[mid]
    for i in range(mid + 1, _TRACK_SAMPLES):
        ref[i] = raw[i] if abs(raw[i] - ref[i - 1]) <= abs(raw[i] + ref[i - 1]) else -raw[i]
    for i in range(mid - 1, -1, -1):
        ref[i] = raw[i] if abs(raw[i] - ref[i + 1]) <= abs(raw[i] + ref[i + 1]) else -raw[i]

    def root(s):
        s = min(1.0, max(-1.0, s))
        pos = (2.0 / np.pi * math.asin(s) + 1.0) * 0.5 * (_TRACK_SAMPLES - 1)
        i = min(int(pos), _TRACK_SAMPLES - 2)
        frac = pos - i
        guess = ref[i] * (1.0 - frac) + ref[i + 1] * frac
        w = cmath.sqrt(q(path(s)))
        return w if abs(w - guess) <= abs(w + guess) else -w

    return root


def action_along_path(V, E, path, dpath, tol=DEFAULT_TOLERANCES):
    """Integral of sqrt(E - V(t)) dt along ``t = path(s)``, s from -1 to 1.

    Returns the complex value on the continuously tracked branch, with the
    overall sign chosen so the real part is non-negative.
    """
    def q(t):
        return E - V(t)

    root = _tracked_sqrt(q, path)

    def g(s):
        s = s.real
        return root(s) * dpath(s)

    value = quad_complex_segment(g, -1.0, 1.0, tol)
    return -value if value.real < 0.0 else value


def _segment_path(a, b):
    mid = 0.5 * (a + b)
    half = 0.5 * (b - a)
    return (lambda s: mid + half * s), (lambda s: half)


def action_integral(spec: ProblemSpec, E: float, tol=DEFAULT_TOLERANCES) -> float:
    """Real action of sqrt(E - V) along the straight left-to-right turning-point segment.

    Raises
    ------
    BranchTrackingError
        If the imaginary part exceeds ``1e-8 * (1 + |I|)``.
    """
    spec.require_real_family("action_integral")
    tp = turning_points(spec, E)
    path, dpath = _segment_path(tp.x_left, tp.x_right)
    value = action_along_path(lambda t: potential(spec, t), float(E), path, dpath, tol)
    if abs(value.imag) > 1e-8 * (1.0 + abs(value)):
        raise BranchTrackingError(
            f"action at E={E!r} has imaginary part {value.imag:.3e} (real {value.real:.6g})"
        )
    return value.real


def action_closed_form(spec: ProblemSpec, E: float = 1.0) -> float:
    """Exact action E^((K+2)/(2K+2)) * sqrt(pi) Gamma(1/m) cos(pi/m) / ((K+2) Gamma((K+2)/m)), m = 2K+2."""
    spec.require_real_family("action_closed_form")
    K = spec.K
    m = 2 * K + 2
    unit = (math.sqrt(math.pi) * gamma_real(1.0 / m) * math.cos(math.pi / m)
            / ((K + 2) * gamma_real((K + 2) / m)))
    return unit * float(E) ** ((K + 2) / m)


def wkb_energy_closed_form(spec: ProblemSpec, n: int) -> WkbEstimate:
    """Large-n WKB level E_n from the Gamma-function formula."""
    spec.require_real_family("wkb_energy_closed_form")
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n!r}")
    K = spec.K
    m = 2 * K + 2
    base = ((n + 0.5) * math.sqrt(math.pi) * (K + 2) * gamma_real((K + 2) / m)
            / (gamma_real(1.0 / m) * math.cos(math.pi / m)))
    return WkbEstimate(n=n, energy=base ** (m / (K + 2)), source="closed_form")


def wkb_energy_quadrature(spec: ProblemSpec, n: int, tol=DEFAULT_TOLERANCES) -> WkbEstimate:
    """Solve action_integral(E) = (n + 1/2) pi numerically.

    The root is bracketed by [0.5, 2] times the closed-form level.
    """
    guess = wkb_energy_closed_form(spec, n).energy
    target = (n + 0.5) * math.pi

    def f(E):
        return action_integral(spec, E, tol) - target

    energy = find_root_bracketed(f, 0.5 * guess, 2.0 * guess, tol)
    return WkbEstimate(n=n, energy=energy, source="quadrature")


def energy_brackets(spec: ProblemSpec, n_max: int, margin: float) -> list:
    """Disjoint intervals around the closed-form levels 0..n_max.

    Each interval is centred on E_n with half-width ``margin`` times the
    smaller neighbouring WKB spacing (the upper spacing for n = 0). The
    lower end is kept positive.
    """
    if not 0.0 < margin < 0.5:
        raise ValueError(f"margin must lie in (0, 0.5), got {margin!r}")
    if n_max < 0:
        raise ValueError(f"n_max must be >= 0, got {n_max!r}")
    centres = [wkb_energy_closed_form(spec, n).energy for n in range(n_max + 2)]
    out = []
    for n in range(n_max + 1):
        gaps = [centres[n + 1] - centres[n]]
        if n > 0:
            gaps.append(centres[n] - centres[n - 1])
        half = margin * min(gaps)
        lo = max(centres[n] - half, 0.5 * centres[n] * (1.0 - margin))
        out.append((lo, centres[n] + half))
    for (_, hi), (lo, _) in zip(out[:-1], out[1:]):
        if hi >= lo:
            raise ValueError(f"brackets overlap for margin {margin!r}")
    return out
