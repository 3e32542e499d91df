"""Adaptive Dormand-Prince integration of psi'' = (V(x) - E) psi on complex contours.

The potential is the deformed oscillator ``V(x) = c * x^(2K) (ix)^eps`` with
a coupling ``c`` (1 for physics, 0 to switch the potential off in tests).
Each straight segment of a contour is parametrised by arclength ``s`` with
``x = a + s*u``, ``|u| = 1``, and the first-order system

    d psi / ds = u * psi',    d psi' / ds = u * (V(x) - E) * psi

is stepped with the 5(4) Dormand-Prince pair under PI step control. The
kernel is compiled with numba; it is the only hot loop in the package.
"""

import math
from dataclasses import dataclass

import numba
import numpy as np

from .tolerances import DEFAULT_TOLERANCES

__all__ = ["OdeState", "Contour", "IntegrationError", "integrate_ode"]

RESCALE_ABOVE = 1e100
RESCALE_BELOW = 1e-100

_SAFETY = 0.9
_FAC_MIN = 0.2
_FAC_MAX = 5.0
# PI controller exponents (Hairer & Wanner), order 5
_ALPHA = 0.7 / 5.0
_BETA = 0.4 / 5.0
_MAX_STEPS = 20_000_000

_OK = 0
_UNDERFLOW = 1
_TOO_MANY = 2
_NONFINITE = 3


class IntegrationError(RuntimeError):
    """The integrator could not advance; ``position`` is where it stopped."""

    def __init__(self, message, position=None):
        super().__init__(message)
        self.position = position


@dataclass(frozen=True)
class OdeState:
    """(psi, psi') at ``position``; the true values are multiplied by exp(log_scale)."""

    position: complex
    psi: complex
    dpsi: complex
    log_scale: float = 0.0

    @property
    def log_derivative(self) -> complex:
        return self.dpsi / self.psi


@dataclass(frozen=True)
class Contour:
    """Polyline of complex points traversed in order."""

    points: tuple

    def __post_init__(self):
        pts = tuple(complex(p) for p in self.points)
        if len(pts) < 2:
            raise ValueError("a contour needs at least two points")
        for a, b in zip(pts[:-1], pts[1:]):
            if a == b:
                raise ValueError(f"repeated contour point {a!r}")
        object.__setattr__(self, "points", pts)

    @property
    def start(self) -> complex:
        return self.points[0]

    @property
    def end(self) -> complex:
        return self.points[-1]

    def segments(self):
        return list(zip(self.points[:-1], self.points[1:]))

    def reversed(self) -> "Contour":
        return Contour(self.points[::-1])


@numba.njit(cache=True)
def _potential(x, K, eps, eps_int, coupling):
    if coupling == 0.0:
        return 0j
    x2 = x * x
    v = 1.0 + 0j
    for _ in range(K):
        v = v * x2
    if eps_int >= 0:
        ix = 1j * x
        for _ in range(eps_int):
            v = v * ix
    elif x != 0:
        v = v * np.exp(eps * np.log(1j * x))
    else:
        v = 0j
    return coupling * v


@numba.njit(cache=True)
def _max_step(x, K, eps, eps_int, coupling, E, length):
    # quarter of the local wavelength 2 pi / sqrt|V - E|
    q = abs(_potential(x, K, eps, eps_int, coupling) - E)
    if q <= 0.0:
        return length
    h = 0.5 * np.pi / np.sqrt(q)
    return h if h < length else length


@numba.njit(cache=True)
def _segment(a, b, psi, dpsi, log_scale, K, eps, eps_int, coupling, E,
             rtol, atol, resolve, h_init):
    length = abs(b - a)
    u = (b - a) / length

    # Dormand-Prince 5(4) tableau
    c2, c3, c4, c5 = 1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0
    a21 = 1.0 / 5.0
    a31, a32 = 3.0 / 40.0, 9.0 / 40.0
    a41, a42, a43 = 44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0
    a51, a52, a53, a54 = 19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0
    a61, a62, a63, a64, a65 = (9017.0 / 3168.0, -355.0 / 33.0, 46732.0 / 5247.0,
                               49.0 / 176.0, -5103.0 / 18656.0)
    b1, b3, b4, b5, b6 = 35.0 / 384.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0
    e1, e3, e4, e5, e6, e7 = (71.0 / 57600.0, -71.0 / 16695.0, 71.0 / 1920.0,
                              -17253.0 / 339200.0, 22.0 / 525.0, -1.0 / 40.0)

    s = 0.0
    y0 = psi
    y1 = dpsi
    x = a
    w = _potential(x, K, eps, eps_int, coupling) - E
    k1_0 = u * y1
    k1_1 = u * w * y0

    h = h_init
    if h <= 0.0:
        scale = abs(w) + 1.0
        h = 0.01 / np.sqrt(scale)
    err_prev = 1e-4
    nsteps = 0
    nreject = 0
    while s < length:
        if nsteps + nreject > _MAX_STEPS:
            return y0, y1, log_scale, nsteps, nreject, _TOO_MANY, s, h
        hmax = length - s
        if resolve:
            hm = _max_step(x, K, eps, eps_int, coupling, E, length)
            if hm < hmax:
                hmax = hm
        last = False
        if h >= length - s:
            h = length - s
            last = True
        if h > hmax:
            h = hmax
            last = h >= length - s
        if h < 1e-14 * (length + abs(a)) and not last:
            return y0, y1, log_scale, nsteps, nreject, _UNDERFLOW, s, h

        xs = a + s * u
        y0s = y0 + h * (a21 * k1_0)
        y1s = y1 + h * (a21 * k1_1)
        k2_0 = u * y1s
        k2_1 = u * (_potential(xs + c2 * h * u, K, eps, eps_int, coupling) - E) * y0s

        y0s = y0 + h * (a31 * k1_0 + a32 * k2_0)
        y1s = y1 + h * (a31 * k1_1 + a32 * k2_1)
        k3_0 = u * y1s
        k3_1 = u * (_potential(xs + c3 * h * u, K, eps, eps_int, coupling) - E) * y0s

        y0s = y0 + h * (a41 * k1_0 + a42 * k2_0 + a43 * k3_0)
        y1s = y1 + h * (a41 * k1_1 + a42 * k2_1 + a43 * k3_1)
        k4_0 = u * y1s
        k4_1 = u * (_potential(xs + c4 * h * u, K, eps, eps_int, coupling) - E) * y0s

        y0s = y0 + h * (a51 * k1_0 + a52 * k2_0 + a53 * k3_0 + a54 * k4_0)
        y1s = y1 + h * (a51 * k1_1 + a52 * k2_1 + a53 * k3_1 + a54 * k4_1)
        k5_0 = u * y1s
        k5_1 = u * (_potential(xs + c5 * h * u, K, eps, eps_int, coupling) - E) * y0s

        y0s = y0 + h * (a61 * k1_0 + a62 * k2_0 + a63 * k3_0 + a64 * k4_0 + a65 * k5_0)
        y1s = y1 + h * (a61 * k1_1 + a62 * k2_1 + a63 * k3_1 + a64 * k4_1 + a65 * k5_1)
        k6_0 = u * y1s
        xn = a + (s + h) * u if not last else b
        k6_1 = u * (_potential(xs + h * u, K, eps, eps_int, coupling) - E) * y0s

        n0 = y0 + h * (b1 * k1_0 + b3 * k3_0 + b4 * k4_0 + b5 * k5_0 + b6 * k6_0)
        n1 = y1 + h * (b1 * k1_1 + b3 * k3_1 + b4 * k4_1 + b5 * k5_1 + b6 * k6_1)
        wn = _potential(xn, K, eps, eps_int, coupling) - E
        k7_0 = u * n1
        k7_1 = u * wn * n0

        err0 = h * (e1 * k1_0 + e3 * k3_0 + e4 * k4_0 + e5 * k5_0 + e6 * k6_0 + e7 * k7_0)
        err1 = h * (e1 * k1_1 + e3 * k3_1 + e4 * k4_1 + e5 * k5_1 + e6 * k6_1 + e7 * k7_1)
        sc0 = atol + rtol * max(abs(y0), abs(n0))
        sc1 = atol + rtol * max(abs(y1), abs(n1))
        err = max(abs(err0) / sc0, abs(err1) / sc1)
        if not np.isfinite(err):
            if h < 1e-14 * (length + abs(a)):
                return y0, y1, log_scale, nsteps, nreject, _NONFINITE, s, h
            h *= _FAC_MIN
            nreject += 1
            continue

        if err <= 1.0:
            s = length if last else s + h
            x = xn
            y0 = n0
            y1 = n1
            k1_0 = k7_0
            k1_1 = k7_1
            nsteps += 1
            if err == 0.0:
                fac = _FAC_MAX
            else:
                fac = _SAFETY * err ** (-_ALPHA) * err_prev ** _BETA
                fac = min(_FAC_MAX, max(_FAC_MIN, fac))
            err_prev = max(err, 1e-4)
            h = h * fac
            m = max(abs(y0), abs(y1))
            if m > RESCALE_ABOVE or (m < RESCALE_BELOW and m > 0.0):
                y0 = y0 / m
                y1 = y1 / m
                k1_0 = k1_0 / m
                k1_1 = k1_1 / m
                log_scale += np.log(m)
        else:
            fac = max(_FAC_MIN, _SAFETY * err ** (-0.2))
            h = h * fac
            nreject += 1
    return y0, y1, log_scale, nsteps, nreject, _OK, s, h


def _eps_int(eps):
    return int(eps) if float(eps).is_integer() else -1


def integrate_ode(spec, energy, contour, initial, tol=DEFAULT_TOLERANCES, *,
                  coupling=1.0, resolve_oscillation=False, stats=None):
    """Carry (psi, psi') along ``contour`` for ``-psi'' + (V - E) psi = 0``.

    Parameters
    ----------
    spec : ProblemSpec
        Supplies K and epsilon of the potential.
    energy : float or complex
    contour : Contour
        ``initial.position`` must equal ``contour.start``.
    initial : OdeState
    tol : Tolerances
        ``ode_rel`` and ``ode_abs`` set the per-step error target.
    coupling : float
        Multiplies the potential; 0 leaves ``psi'' = -E psi``.
    resolve_oscillation : bool
        Cap each step at a quarter of the local wavelength ``2 pi / sqrt|V-E|``.
    stats : dict, optional
        If given, receives ``steps`` and ``rejected`` counts.

    Returns
    -------
    OdeState
        State at ``contour.end``. Whenever ``max(|psi|, |psi'|)`` leaves
        [1e-100, 1e100] the pair is renormalised and the log of the factor
        added to ``log_scale``.

    Raises
    ------
    IntegrationError
        On step-size underflow or a non-finite error estimate; carries the
        position reached.
    """
    if not isinstance(contour, Contour):
        contour = Contour(contour)
    if complex(initial.position) != contour.start:
        raise ValueError(
            f"initial position {initial.position!r} differs from contour start {contour.start!r}"
        )
    if initial.psi == 0 and initial.dpsi == 0:
        raise ValueError("initial state is identically zero")
    K = int(spec.K)
    eps = float(spec.epsilon)
    eps_i = _eps_int(eps)
    E = complex(energy)
    psi = complex(initial.psi)
    dpsi = complex(initial.dpsi)
    log_scale = float(initial.log_scale)
    total_steps = 0
    total_rejected = 0
    for a, b in contour.segments():
        psi, dpsi, log_scale, n, nrej, status, s, _ = _segment(
            a, b, psi, dpsi, log_scale, K, eps, eps_i, float(coupling), E,
            float(tol.ode_rel), float(tol.ode_abs), bool(resolve_oscillation), 0.0,
        )
        total_steps += n
        total_rejected += nrej
        if status != _OK:
            where = a + s * (b - a) / abs(b - a)
            reason = {
                _UNDERFLOW: "step size underflow",
                _TOO_MANY: "step budget exhausted",
                _NONFINITE: "non-finite error estimate",
            }[status]
            raise IntegrationError(f"{reason} at x = {where!r}", position=where)
    if stats is not None:
        stats["steps"] = total_steps
        stats["rejected"] = total_rejected
    return OdeState(position=contour.end, psi=psi, dpsi=dpsi, log_scale=log_scale)
