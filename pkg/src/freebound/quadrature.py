"""Quadrature primitives shared by the density / resolvent / functional layers.

Band integrands here routinely carry inverse-square-root endpoint weights and
logarithmic endpoint factors, with an optional Cauchy pole inside.  Three
tools cover all of it:

* ``gauss_band``     - Gauss-Legendre after the u = lo + (hi-lo) sin^2(phi)
                       change of variable, which turns sqrt-edge behaviour
                       into a smooth integrand (doubling until converged).
* ``tanh_sinh``      - double-exponential rule on (0, 1); handles log and
                       power endpoint singularities at machine precision.
                       Nodes are returned with their distances to *both*
                       endpoints so integrands can be formed without
                       cancellation.
* ``pv_integral``    - Cauchy principal value with analytic pole subtraction
                       on top of the sin^2 substitution.
"""

from __future__ import annotations

import math
from functools import lru_cache
from typing import Callable

import numpy as np


@lru_cache(maxsize=None)
def _leggauss(n: int) -> tuple[np.ndarray, np.ndarray]:
    from scipy.special import roots_legendre

    x, w = roots_legendre(n)
    return x, w


def gauss_rule(lo: float, hi: float, n: int) -> tuple[np.ndarray, np.ndarray]:
    """Gauss-Legendre nodes/weights mapped to [lo, hi]."""
    x, w = _leggauss(n)
    half = 0.5 * (hi - lo)
    return lo + half * (x + 1.0), half * w


def gauss_band(f: Callable[[np.ndarray], np.ndarray], lo: float, hi: float,
               n: int = 64, tol: float = 1e-12, n_max: int = 4096) -> float:
    """Integral of f over [lo, hi] with the sin^2 endpoint substitution,
    doubling the node count until two levels agree within tol (relative)."""
    if hi <= lo:
        return 0.0
    span = hi - lo

    def level(m: int) -> float:
        phi, w = gauss_rule(0.0, 0.5 * math.pi, m)
        s, c = np.sin(phi), np.cos(phi)
        u = lo + span * s * s
        return float(np.sum(w * f(u) * span * 2.0 * s * c))

    prev = level(n)
    m = n
    while m < n_max:
        m *= 2
        cur = level(m)
        if abs(cur - prev) <= tol * max(1.0, abs(cur)):
            return cur
        prev = cur
    return prev


# ---------------------------------------------------------------------------
# tanh-sinh rule on (0, 1)
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def tanh_sinh_rule(n: int, t_max: float = 4.0) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Return (v, one_minus_v, weights) for the double-exponential rule on
    (0,1) with 2n+1 nodes.  one_minus_v is computed directly so integrands
    singular at either endpoint can be assembled without cancellation."""
    h = t_max / n
    t = h * np.arange(-n, n + 1)
    x = 0.5 * math.pi * np.sinh(t)
    v = 1.0 / (1.0 + np.exp(-2.0 * x))
    omv = 1.0 / (1.0 + np.exp(2.0 * x))
    w = h * 0.5 * math.pi * np.cosh(t) * 2.0 * v * omv
    keep = w > 1e-300
    return v[keep], omv[keep], w[keep]


def tanh_sinh(f: Callable[[np.ndarray, np.ndarray], np.ndarray], n: int = 160) -> float:
    """Integral over (0,1) of f(v, 1-v); f may blow up integrably at 0 or 1."""
    v, omv, w = tanh_sinh_rule(n)
    return float(np.sum(w * f(v, omv)))


# ---------------------------------------------------------------------------
# principal values
# ---------------------------------------------------------------------------


def pv_integral(f: Callable[[np.ndarray], np.ndarray], lo: float, hi: float,
                pole: float, n: int = 64, tol: float = 1e-12,
                n_max: int = 4096) -> float:
    """Cauchy principal value of  integral f(u) / (pole - u) du  over [lo,hi].

    The pole is subtracted analytically: the remainder (f(u) - f(pole)) /
    (pole - u) is integrated with the sin^2 substitution (which also absorbs
    integrable endpoint singularities of f), and the subtracted piece is the
    exact log term.  For a pole outside [lo, hi] the integral is regular and
    the same route applies without subtraction.
    """
    if not lo < hi:
        raise ValueError("empty band")
    if lo < pole < hi:
        fp = float(f(np.array([pole]))[0])

        def g(u: np.ndarray) -> np.ndarray:
            return (f(u) - fp) / (pole - u)

        base = fp * math.log((pole - lo) / (hi - pole))
        return gauss_band(g, lo, hi, n=n, tol=tol, n_max=n_max) + base
    if pole == lo or pole == hi:
        raise ValueError("pole may not sit on a band endpoint")

    def g(u: np.ndarray) -> np.ndarray:
        return f(u) / (pole - u)

    return gauss_band(g, lo, hi, n=n, tol=tol, n_max=n_max)


def chebyshev_pv_zero(w: float) -> float:
    """PV integral of 1/(sqrt(v(1-v)) (w-v)) over [0,1]: 0 inside, explicit
    closed form outside."""
    if 0.0 < w < 1.0:
        return 0.0
    s = 1.0 if w > 1.0 else -1.0
    return s * math.pi / math.sqrt(w * (w - 1.0))


# ---------------------------------------------------------------------------
# exact log-weighted moments on [0,1] against 1/sqrt(v(1-v))
# ---------------------------------------------------------------------------


def log_moment(m: int) -> float:
    """integral v^m log(v) / sqrt(v(1-v)) dv over [0,1] (exact closed form)."""
    if m < 0:
        raise ValueError("m >= 0")
    odd_harmonic = sum(1.0 / (2 * j - 1) for j in range(1, m + 1))
    harmonic = sum(1.0 / j for j in range(1, m + 1))
    central = math.comb(2 * m, m) / 4.0**m
    return math.pi * central * (2.0 * odd_harmonic - harmonic - 2.0 * math.log(2.0))


def plain_moment(m: int) -> float:
    """integral v^m / sqrt(v(1-v)) dv over [0,1]."""
    return math.pi * math.comb(2 * m, m) / 4.0**m
