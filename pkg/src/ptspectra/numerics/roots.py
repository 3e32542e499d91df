"""Bracketed scalar root finding and golden-section minimisation."""

import math

from .tolerances import DEFAULT_TOLERANCES

__all__ = [
    "RootFindingError",
    "NoSignChangeError",
    "find_root_bracketed",
    "golden_section_minimize",
]


class RootFindingError(RuntimeError):
    """The root finder exhausted its iteration budget."""


class NoSignChangeError(RootFindingError):
    """``f(lo)`` and ``f(hi)`` have the same sign."""


def find_root_bracketed(f, lo, hi, tol=DEFAULT_TOLERANCES, max_iter=200):
    """Root of ``f`` in ``[lo, hi]`` by bisection with secant acceleration.

    Each iteration proposes the secant (false-position) point of the current
    bracket and falls back to bisection whenever that point lands outside the
    middle of the bracket or the previous step failed to halve it. The loop
    stops once the bracket is narrower than ``tol.root_tol``.

    Parameters
    ----------
    f : callable
        Real function of one real variable, continuous on the bracket.
    lo, hi : float
        Bracket ends with ``f(lo) * f(hi) < 0``.
    tol : Tolerances
    max_iter : int

    Returns
    -------
    float
    """
    a, b = float(lo), float(hi)
    if a > b:
        a, b = b, a
    fa, fb = f(a), f(b)
    if fa == 0.0:
        return a
    if fb == 0.0:
        return b
    if (fa < 0.0) == (fb < 0.0):
        raise NoSignChangeError(
            f"no sign change on [{a!r}, {b!r}]: f(lo)={fa!r}, f(hi)={fb!r}"
        )

    xtol = tol.root_tol
    force_bisect = False
    for _ in range(max_iter):
        width = b - a
        if width <= xtol:
            return a if abs(fa) < abs(fb) else b
        if force_bisect:
            x = 0.5 * (a + b)
        else:
            x = b - fb * (b - a) / (fb - fa)
            # keep the secant point away from the bracket ends
            guard = max(0.5 * xtol, 1e-3 * width)
            if not (a + guard <= x <= b - guard):
                x = 0.5 * (a + b)
        fx = f(x)
        if fx == 0.0:
            return x
        # compare signs, not the product, which can underflow to zero
        if (fa < 0.0) != (fx < 0.0):
            b, fb = x, fx
        else:
            a, fa = x, fx
        force_bisect = (b - a) > 0.5 * width
    raise RootFindingError(
        f"root not converged after {max_iter} iterations; bracket [{a!r}, {b!r}]"
    )


_INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0


def golden_section_minimize(f, lo, hi, xtol, max_iter=200):
    """Minimiser and minimum of a unimodal ``f`` on ``[lo, hi]``.

    Returns ``(x, f(x))`` with the bracket shrunk below ``xtol``.
    """
    a, b = float(lo), float(hi)
    c = b - _INV_PHI * (b - a)
    d = a + _INV_PHI * (b - a)
    fc, fd = f(c), f(d)
    for _ in range(max_iter):
        if b - a <= xtol:
            break
        if fc <= fd:
            b, d, fd = d, c, fc
            c = b - _INV_PHI * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + _INV_PHI * (b - a)
            fd = f(d)
    return (c, fc) if fc <= fd else (d, fd)
