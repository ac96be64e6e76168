"""Large-deviation rate functional for endpoint densities.

Used comparatively only (minimality spot checks): the functional is evaluated
on a closed-form minimizer and on mass-preserving, support-preserving
perturbations of it, and the minimizer must win.

Uniform case (aspect ratio lam):

    S[rho] = int (L0(mu) + L0(lam+1-mu)) rho(mu) dmu
             - 1/2 double-int log|mu-nu| rho(mu) rho(nu)

with L0(x) = x log x - x.  The quadratic term sometimes written next to L0
is spurious: it breaks stationarity of the closed-form minimizer (checked
against the singular integral equation, which carries no linear term), so it
is omitted here.

q-weighted case (alpha, beta):

    S[rho] = int (mu(mu-2 beta)/2 + L(mu) + L(alpha+beta-mu)) rho dmu
             - 1/2 double-int log|e^{-mu} - e^{-nu}| rho rho

with L(x) = int_0^x log(1-e^{-t}) dt = Li2(e^{-x}) - pi^2/6.

The log kernel is integrated spectrally: on each band the density is sampled
at a cosine grid and the classical expansion
log|x - y| = -log 2 - sum_{n>=1} (2/n) T_n(x) T_n(y) turns the double
integral into a fast-converging sum over Chebyshev moments.
"""

from __future__ import annotations

import math
from typing import Callable

import numpy as np
from scipy.special import spence

from .density import Band, DensityProfile


def dilog_l(x):
    """L(x) = int_0^x log(1 - e^{-t}) dt, vectorized."""
    x = np.asarray(x, dtype=float)
    return spence(1.0 - np.exp(-x)) - math.pi**2 / 6.0


def _theta_grid(m: int) -> tuple[np.ndarray, np.ndarray]:
    theta = np.linspace(0.0, math.pi, m + 1)
    w = np.full(m + 1, math.pi / m)
    w[0] = w[-1] = math.pi / (2 * m)
    return theta, w


def _chebyshev_moments(f: Callable[[np.ndarray], np.ndarray], band: Band,
                       n_modes: int, m_grid: int = 4096) -> np.ndarray:
    """t_n = int_band T_n(x(mu)) f(mu) dmu via the theta substitution
    mu = mid + half cos(theta); trapezoid is spectral for the periodic
    integrand."""
    theta, w = _theta_grid(m_grid)
    half = band.width / 2.0
    mid = (band.lo + band.hi) / 2.0
    mu = mid + half * np.cos(theta)
    vals = f(mu) * np.sin(theta) * half
    n = np.arange(n_modes + 1)
    return (np.cos(np.outer(n, theta)) * (w * vals)).sum(axis=1)


def _log_kernel_same_band(f, band: Band, n_modes: int = 800) -> float:
    """double-int over band^2 of log|mu-nu| f(mu) f(nu)."""
    t = _chebyshev_moments(f, band, n_modes)
    half = band.width / 2.0
    out = math.log(half) * t[0] ** 2 - math.log(2.0) * t[0] ** 2
    out -= sum((2.0 / n) * t[n] ** 2 for n in range(1, n_modes + 1))
    return out


def _smooth_double(f, band: Band, kernel, m_grid: int = 600) -> float:
    """double-int over band^2 of kernel(mu, nu) f(mu) f(nu) for smooth
    kernels (theta-grid tensor trapezoid)."""
    theta, w = _theta_grid(m_grid)
    half = band.width / 2.0
    mid = (band.lo + band.hi) / 2.0
    mu = mid + half * np.cos(theta)
    fv = f(mu) * np.sin(theta) * half * w
    km = kernel(mu[:, None], mu[None, :])
    return float(fv @ km @ fv)


def _v_integral(f, band: Band, v: Callable[[np.ndarray], np.ndarray], m_grid: int = 4096) -> float:
    theta, w = _theta_grid(m_grid)
    half = band.width / 2.0
    mid = (band.lo + band.hi) / 2.0
    mu = mid + half * np.cos(theta)
    return float(np.sum(w * v(mu) * f(mu) * np.sin(theta) * half))


def _single_band(profile: DensityProfile) -> tuple[Band, Callable]:
    if profile.frozen_regions or len(profile.bands) != 1:
        raise ValueError("rate functional implemented for single-band profiles")
    return profile.bands[0]


def rate_functional_uniform(profile: DensityProfile, lam: float) -> float:
    band, f = _single_band(profile)

    def v(mu):
        a = np.where(mu > 0, mu * np.log(np.where(mu > 0, mu, 1.0)) - mu, 0.0)
        r = lam + 1.0 - mu
        b = np.where(r > 0, r * np.log(np.where(r > 0, r, 1.0)) - r, 0.0)
        return a + b

    return _v_integral(f, band, v) - 0.5 * _log_kernel_same_band(f, band)


def rate_functional_qcut(profile: DensityProfile, alpha: float, beta: float) -> float:
    band, f = _single_band(profile)

    def v(mu):
        return 0.5 * mu * (mu - 2.0 * beta) + dilog_l(mu) + dilog_l(alpha + beta - mu)

    def smooth_part(mu, nu):
        # log|e^-mu - e^-nu| = log|mu-nu| + log((1-e^-(nu-mu))/(nu-mu)) - mu
        d = nu - mu
        near = np.abs(d) < 1e-12
        ds = np.where(near, 1.0, d)
        ratio = np.where(near, 1.0 - d / 2.0, -np.expm1(-ds) / ds)
        return np.log(ratio) - mu

    double = _log_kernel_same_band(f, band) + _smooth_double(f, band, smooth_part)
    return _v_integral(f, band, v) - 0.5 * double


def rate_functional(profile: DensityProfile, geometry: dict) -> float:
    """Dispatch on geometry: {'family': 'uniform', 'lam': ...} or
    {'family': 'qcut', 'alpha': ..., 'beta': ...}."""
    fam = geometry["family"]
    if fam == "uniform":
        return rate_functional_uniform(profile, geometry["lam"])
    if fam == "qcut":
        return rate_functional_qcut(profile, geometry["alpha"], geometry["beta"])
    raise ValueError(f"no rate functional for family {fam!r}")


def perturbed_profile(profile: DensityProfile, seed: int, amplitude: float = 0.01):
    """Mass-preserving, support-preserving perturbation of a single-band
    profile: a random low-order bump, projected to zero integral and scaled
    to the requested amplitude."""
    band, f = _single_band(profile)
    rng = np.random.default_rng(seed)
    coeffs = rng.normal(size=5)

    def envelope(x):
        return 1.0 - x * x

    def bump(x):
        out = np.zeros_like(x)
        for j, c in enumerate(coeffs, start=1):
            out += c * np.sin(j * math.pi * (x + 1.0) / 2.0)
        return out * envelope(x)

    # zero-mass projection against the envelope
    xs = np.linspace(-1.0, 1.0, 20001)
    num = np.trapezoid(bump(xs), xs)
    den = np.trapezoid(envelope(xs), xs)
    shift = num / den

    def delta_x(x):
        return bump(x) - shift * envelope(x)

    peak = np.max(np.abs(delta_x(xs)))
    scale = amplitude / peak
    half = band.width / 2.0
    mid = (band.lo + band.hi) / 2.0

    def g(mu):
        x = (np.asarray(mu, dtype=float) - mid) / half
        return f(mu) + scale * delta_x(x)

    return DensityProfile(bands=[(band, g)], mass=profile.mass)
