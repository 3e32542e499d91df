"""Real-axis scattering off V(x) = -x^(2K+2) and its reflectionless energies.

The potential is negative everywhere, so E - V = E + x^(2K+2) > 0 on the
whole real line and Liouville-Green travelling waves

    psi_pm(x) = w(x)^(-1/2) exp(±i Phi(x)),   Phi(x) = sgn(x)^K int_0^|x| sqrt(Q) dt

serve as asymptotic bases at x = ±L. The ``sgn(x)^K`` factor makes the
labels agree with the bare waves exp(±i x^(K+2)/(K+2)): psi_plus carries
current sgn(x)^(K+1), i.e. it moves right for x > 0 and, for even K, left
for x < 0.

A unit left-moving wave is imposed at x = -L and integrated to +L, where it
is split into incoming (left-moving) and reflected (right-moving) parts.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from .numerics import (
    DEFAULT_TOLERANCES,
    Contour,
    NoSignChangeError,
    OdeState,
    find_root_bracketed,
    golden_section_minimize,
    integrate_ode,
    quad_complex_segment,
)
from .problem import EnergyLevel, ProblemSpec, current_sign

__all__ = [
    "ScatteringResult",
    "WaveBasis",
    "IllConditionedBasisError",
    "LevelNotFoundError",
    "lg_wave",
    "wave_basis",
    "transmitted_branch",
    "reflection_amplitude",
    "reflectionless_proxy",
    "default_length",
    "basis_length",
    "compute_spectrum_reflectionless",
]

REFLECTIONLESS_THRESHOLD = 1e-5
MAX_CONDITION = 1e8


class IllConditionedBasisError(RuntimeError):
    def __init__(self, message, condition):
        super().__init__(message)
        self.condition = condition


class LevelNotFoundError(RuntimeError):
    pass


@dataclass(frozen=True)
class ScatteringResult:
    energy: float
    r: complex
    t: complex
    flux_error: float


@dataclass(frozen=True)
class WaveBasis:
    side: str
    branch: str
    value: complex
    derivative: complex


def _sgn_pow(x, k):
    return -1.0 if (x < 0.0 and k % 2 == 1) else 1.0


def _q_derivs(spec, E, x):
    m = 2 * spec.K + 2
    q = E + x ** m
    q1 = m * x ** (m - 1)
    q2 = m * (m - 1) * x ** (m - 2)
    q3 = m * (m - 1) * (m - 2) * x ** (m - 3) if m >= 3 else 0.0
    return q, q1, q2, q3


def _local_wavenumber(spec, E, x, order):
    """(w, w') with w^2 = Q at first order, Q + Q^(1/4) (Q^(-1/4))'' at second."""
    q, q1, q2, q3 = _q_derivs(spec, E, x)
    if order == 1:
        w = math.sqrt(q)
        return w, q1 / (2.0 * w)
    if order != 2:
        raise ValueError(f"order must be 1 or 2, got {order!r}")
    g = -q2 / (4.0 * q) + 5.0 * q1 * q1 / (16.0 * q * q)
    dg = (-q3 / (4.0 * q) + 0.875 * q1 * q2 / (q * q)
          - 0.625 * q1 ** 3 / q ** 3)
    w2 = q + g
    if w2 <= 0.0:
        raise ValueError(f"second-order wavenumber undefined at x = {x!r}, E = {E!r}")
    w = math.sqrt(w2)
    return w, (q1 + dg) / (2.0 * w)


def _phase(spec, E, x, tol):
    """sgn(x)^K times the integral of sqrt(E + t^(2K+2)) from 0 to |x|."""
    if x == 0.0:
        return 0.0
    m = 2 * spec.K + 2

    def g(t):
        return math.sqrt(E + t.real ** m)

    integral = quad_complex_segment(g, 0.0, abs(x), tol, endpoint_substitution=False)
    return _sgn_pow(x, spec.K) * integral.real


def lg_wave(spec: ProblemSpec, E: float, branch: str, x: float, x_ref: float = 0.0,
            tol=DEFAULT_TOLERANCES, order: int = 1):
    """Liouville-Green travelling wave and its x-derivative at real ``x``.

    Returns ``(value, derivative)`` of ``w^(-1/2) exp(±i (Phi(x) - Phi(x_ref)))``.
    At ``order=1`` the wavenumber is ``w = sqrt(E + x^(2K+2))``; ``order=2``
    adds the next WKB correction to ``w`` (amplitude and log-derivative only,
    the phase integral stays first order).
    """
    spec.require_real_family("lg_wave")
    sign = {"plus": 1, "minus": -1}[branch]
    x = float(x)
    w, dw = _local_wavenumber(spec, E, x, order)
    phi = _phase(spec, E, x, tol) - _phase(spec, E, float(x_ref), tol)
    # dPhi/dx = sgn(x)^(K+1) sqrt(Q); the correction rides on the same direction
    direction = _sgn_pow(x, spec.K + 1)
    value = complex(math.cos(sign * phi), math.sin(sign * phi)) / math.sqrt(w)
    derivative = (-dw / (2.0 * w) + 1j * sign * direction * w) * value
    return value, derivative


def transmitted_branch(spec: ProblemSpec) -> str:
    """Branch that travels left on x < 0: minus for odd K, plus for even K."""
    spec.require_real_family("transmitted_branch")
    return "minus" if current_sign(spec, "minus", -1.0) < 0 else "plus"


BASIS_REMAINDER_TARGET = 1e-14


def basis_length(spec: ProblemSpec) -> float:
    """Smallest L where the neglected third-order basis term is below 1e-14.

    The second-order correction to Q is about (5/16)(2K+2)^2 / x^(2K+4)
    relative to Q; the first neglected term is its square.
    """
    m = 2 * spec.K + 2
    coef = 5.0 * m * m / 16.0
    return (coef / math.sqrt(BASIS_REMAINDER_TARGET)) ** (1.0 / (m + 2))


def default_length(spec: ProblemSpec, e_max: float) -> float:
    """Default cutoff max(8, 4 * e_max^(1/(2K+2)), basis_length(spec))."""
    return max(8.0, 4.0 * max(e_max, 0.0) ** (1.0 / (2 * spec.K + 2)), basis_length(spec))


def _check_length(spec, E, L):
    need = 4.0 * E ** (1.0 / (2 * spec.K + 2))
    if not L >= need:
        raise ValueError(f"L = {L!r} is below the required 4*E^(1/(2K+2)) = {need:.6g}")


def wave_basis(spec: ProblemSpec, E: float, L: float, side: str, branch: str,
               tol=DEFAULT_TOLERANCES, order: int = 2) -> WaveBasis:
    """Liouville-Green wave of ``branch`` at ``x = -L`` (left) or ``x = +L`` (right)."""
    if side not in ("left", "right"):
        raise ValueError(f"side must be 'left' or 'right', got {side!r}")
    x = -float(L) if side == "left" else float(L)
    value, derivative = lg_wave(spec, E, branch, x, 0.0, tol, order)
    return WaveBasis(side=side, branch=branch, value=value, derivative=derivative)


def _left_state(spec, E, L, tol, order, branch):
    wave = wave_basis(spec, E, L, "left", branch, tol, order)
    return OdeState(position=complex(-L), psi=wave.value, dpsi=wave.derivative)


def reflection_amplitude(spec: ProblemSpec, E: float, L: float, tol=DEFAULT_TOLERANCES, *,
                         order: int = 2, transmitted: str = None) -> ScatteringResult:
    """Reflection and transmission amplitudes for a wave incident from +infinity.

    ``transmitted`` overrides the branch imposed at ``-L`` (test hook for the
    parity convention); by default it is :func:`transmitted_branch`.

    Raises
    ------
    ValueError
        If ``L`` is below ``4 * E^(1/(2K+2))`` or ``E <= 0``.
    IllConditionedBasisError
        If the 2x2 basis matrix at ``+L`` has condition number above 1e8.
    """
    spec.require_real_family("reflection_amplitude")
    E = float(E)
    L = float(L)
    if not E > 0.0:
        raise ValueError(f"E must be > 0, got {E!r}")
    _check_length(spec, E, L)
    branch = transmitted or transmitted_branch(spec)
    start = _left_state(spec, E, L, tol, order, branch)
    end = integrate_ode(spec, E, Contour([-L, L]), start, tol, resolve_oscillation=True)
    scale = math.exp(end.log_scale)

    plus = wave_basis(spec, E, L, "right", "plus", tol, order)
    minus = wave_basis(spec, E, L, "right", "minus", tol, order)
    basis = np.array([[plus.value, minus.value], [plus.derivative, minus.derivative]],
                     dtype=complex)
    condition = float(np.linalg.cond(basis))
    if not condition < MAX_CONDITION:
        raise IllConditionedBasisError(
            f"basis at x = {L!r} is ill-conditioned (cond = {condition:.3e})", condition
        )
    a_plus, a_minus = np.linalg.solve(basis, np.array([end.psi * scale, end.dpsi * scale]))
    # on x > 0 minus moves left (incoming), plus moves right (reflected)
    r = complex(a_plus / a_minus)
    t = complex(1.0 / a_minus)
    flux_error = abs(abs(r) ** 2 + abs(t) ** 2 - 1.0)
    return ScatteringResult(energy=E, r=r, t=t, flux_error=flux_error)


def reflectionless_proxy(spec: ProblemSpec, E: float, L: float, tol=DEFAULT_TOLERANCES, *,
                         order: int = 2) -> float:
    """cos of arg(psi') - arg(psi) at x = 0 for the transmitted solution.

    For even V and real E, the solution that is purely left-moving at
    -infinity is also purely left-moving at +infinity exactly when it is
    invariant (up to a constant) under x -> -x with complex conjugation,
    which at x = 0 means Re(conj(psi) psi') = 0. The proxy therefore
    changes sign at each reflectionless energy and costs half an
    integration.
    """
    spec.require_real_family("reflectionless_proxy")
    E = float(E)
    _check_length(spec, E, L)
    start = _left_state(spec, E, float(L), tol, order, transmitted_branch(spec))
    end = integrate_ode(spec, E, Contour([-float(L), 0.0]), start, tol, resolve_oscillation=True)
    z = end.psi.conjugate() * end.dpsi
    denom = abs(end.psi) * abs(end.dpsi)
    return z.real / denom if denom > 0.0 else 0.0


def _refine_level(spec, E_lo, E_hi, L, tol, order):
    """Proxy root in [E_lo, E_hi], then golden-section minimum of |r|^2 around it."""
    f = lambda E: reflectionless_proxy(spec, E, L, tol, order=order)
    coarse = find_root_bracketed(f, E_lo, E_hi, tol)
    half = max(50.0 * tol.root_tol, 1e-7 * coarse)

    def r2(E):
        return abs(reflection_amplitude(spec, E, L, tol, order=order).r) ** 2

    energy, value = golden_section_minimize(r2, coarse - half, coarse + half, tol.root_tol)
    return energy, math.sqrt(value), coarse


def _proxy_root_near(spec, energy, L, tol, order):
    """Proxy root within a narrow window of ``energy``; NaN if it left the window."""
    half = max(1e3 * tol.root_tol, 1e-6 * energy)
    f = lambda E: reflectionless_proxy(spec, E, L, tol, order=order)
    try:
        return find_root_bracketed(f, energy - half, energy + half, tol)
    except NoSignChangeError:
        return float("nan")


def compute_spectrum_reflectionless(spec: ProblemSpec, n_max: int, L: float = None,
                                    tol=DEFAULT_TOLERANCES, *, order: int = 2,
                                    margin: float = 0.45, scan_points: int = 5,
                                    verify_length: bool = True) -> list:
    """Reflectionless energies 0..n_max, one per WKB bracket.

    Within each bracket the proxy is sampled on ``scan_points`` energies to
    find its sign change, the crossing is refined to ``root_tol`` and |r|^2
    is then minimised by golden section in a small window around it. A level
    is accepted when min |r| < 1e-5 and the proxy root found with 2L is
    within ``10 * root_tol`` of the one found with L. Failed indices come back with
    ``converged=False`` and the reason in ``meta['error']``.

    ``verify_length=False`` skips the 2L re-solve, which costs roughly
    2^(K+2) times the base run; only the |r| threshold is then checked.
    """
    from .wkb import energy_brackets

    spec.require_real_family("compute_spectrum_reflectionless")
    if n_max < 0:
        raise ValueError(f"n_max must be >= 0, got {n_max!r}")
    brackets = energy_brackets(spec, n_max, margin)
    if L is None:
        L = default_length(spec, brackets[-1][1])
    _check_length(spec, brackets[-1][1], L)

    levels = []
    for n, (lo, hi) in enumerate(brackets):
        grid = np.linspace(lo, hi, scan_points)
        values = [reflectionless_proxy(spec, E, L, tol, order=order) for E in grid]
        cells = [(a, b) for a, b, fa, fb in zip(grid[:-1], grid[1:], values[:-1], values[1:])
                 if fa * fb <= 0.0]
        if len(cells) != 1:
            levels.append(EnergyLevel(
                n=n, energy=float("nan"), method="reflectionless", converged=False,
                meta={"bracket": (lo, hi), "L": L,
                      "error": f"{len(cells)} proxy sign changes in bracket"},
            ))
            continue
        energy, min_r, proxy_root = _refine_level(spec, *cells[0], L, tol, order)
        shifted = float("nan")
        shift = 0.0
        if verify_length:
            shifted = _proxy_root_near(spec, proxy_root, 2.0 * L, tol, order)
            shift = abs(shifted - proxy_root)
        error = None
        if not min_r < REFLECTIONLESS_THRESHOLD:
            error = f"min |r| = {min_r:.3e} is above {REFLECTIONLESS_THRESHOLD:g}"
        elif not shift < 10.0 * tol.root_tol:
            error = f"L-doubling shift {shift:.3e} exceeds 10*root_tol"
        meta = {"bracket": (lo, hi), "L": L, "proxy_root": proxy_root,
                "energy_doubled_L": shifted, "length_shift": shift}
        if error:
            meta["error"] = error
        levels.append(EnergyLevel(
            n=n, energy=energy, method="reflectionless", residual=min_r,
            converged=error is None, meta=meta,
        ))
    found = [lv.energy for lv in levels if lv.converged]
    if any(b - a <= 100.0 * tol.root_tol for a, b in zip(found[:-1], found[1:])):
        raise LevelNotFoundError("duplicate or unordered reflectionless levels")
    return levels
