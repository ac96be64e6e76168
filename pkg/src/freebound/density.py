"""Closed-form limit densities of boundary endpoints.

Families (all lengths in lattice units divided by the path count k):

* ``uniform_*``     - cut hexagon, uniform weights; aspect ratio lam = n/k.
* ``qcut_*``        - cut hexagon with weight q^volume, q = exp(-eps),
                      alpha = n*eps, beta = k*eps.
* ``two_corner_*``  - uniform cut hexagon with forbidden corner intervals
                      [0, nu] and [theta, lam+1] on the free boundary.
* ``hexagon_*``     - full hexagon 1 x lam x theta sliced at position x.
* ``halfcut_*``     - half-cut hexagon (zig-zag floor), alpha = n/k.
* ``triangle_rho`` / ``tsscpp_rho`` - sixth of the regular hexagon and the
                      totally-symmetric self-complementary plane partition
                      triangle; both are restrictions of the lam = theta = 1
                      hexagon slice.

Every family produces a :class:`DensityProfile`: frozen pieces carry value 0
or 1, liquid bands carry an evaluator with range [0, 1] vanishing (or
reaching 1) continuously at the band edges.  The uniform band is
[(1+lam) -+ sqrt(1+2*lam)] / 2; it is cross-checked in several independent
ways (q->1 limit of the q-weighted band, corner-interval degeneration, full
hexagon at x = theta = lam, arctic-curve diagonal), all of which pin the
sqrt(1+2*lam) form.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np
from scipy.integrate import quad

_EDGE_CLIP = -1e-14  # radicand rounding absorbed at band edges


def _safe_sqrt(x):
    x = np.asarray(x, dtype=float)
    return np.sqrt(np.where(x > 0.0, x, np.where(x > _EDGE_CLIP * (1.0 + np.abs(x)), 0.0, np.nan)))


@dataclass(frozen=True)
class Band:
    lo: float
    hi: float

    def __post_init__(self):
        if not self.lo <= self.hi:
            raise ValueError(f"band [{self.lo}, {self.hi}] is inverted")

    @property
    def width(self) -> float:
        return self.hi - self.lo


@dataclass
class DensityProfile:
    """Piecewise limit density: frozen intervals (value 0 or 1) plus liquid
    bands with pointwise evaluators.  Points outside all pieces have density
    zero."""

    frozen_regions: list[tuple[tuple[float, float], int]] = field(default_factory=list)
    bands: list[tuple[Band, Callable[[np.ndarray], np.ndarray]]] = field(default_factory=list)
    mass: float = 0.0

    def rho(self, z):
        z = np.asarray(z, dtype=float)
        out = np.zeros_like(z)
        for (lo, hi), value in self.frozen_regions:
            if value:
                out = np.where((z >= lo) & (z <= hi), float(value), out)
        for band, f in self.bands:
            inside = (z > band.lo) & (z < band.hi)
            if band.width > 0 and np.any(inside):
                vals = np.zeros_like(z)
                vals[inside] = f(z[inside])
                out = np.where(inside, vals, out)
        return out if out.shape else float(out)

    def band_mass(self, rtol: float = 1e-11) -> float:
        """Liquid-band mass by adaptive quadrature after the sin^2 edge
        substitution (Gauss-Kronrod underneath)."""
        total = 0.0
        for band, f in self.bands:
            if band.width <= 0:
                continue
            span = band.width

            def phi_integrand(phi, f=f, lo=band.lo, span=span):
                s, c = math.sin(phi), math.cos(phi)
                u = lo + span * s * s
                return float(f(np.array([u]))[0]) * span * 2.0 * s * c

            val, _ = quad(phi_integrand, 0.0, 0.5 * math.pi, epsabs=1e-13, epsrel=rtol, limit=200)
            total += val
        return total

    def total_mass(self, rtol: float = 1e-11) -> float:
        frozen = sum(v * (hi - lo) for (lo, hi), v in self.frozen_regions)
        return frozen + self.band_mass(rtol)


# ---------------------------------------------------------------------------
# uniform cut hexagon
# ---------------------------------------------------------------------------


def uniform_band(lam: float) -> Band:
    if lam <= 0:
        raise ValueError("lam must be positive")
    r = math.sqrt(1.0 + 2.0 * lam)
    return Band((1.0 + lam - r) / 2.0, (1.0 + lam + r) / 2.0)


def uniform_rho(t, lam: float):
    """(2/pi) atan( sqrt(2*lam + 1 - 4 (t-(lam+1)/2)^2) / lam ) on the band."""
    if lam <= 0:
        raise ValueError("lam must be positive")
    t = np.asarray(t, dtype=float)
    rad = 2.0 * lam + 1.0 - 4.0 * (t - (lam + 1.0) / 2.0) ** 2
    out = np.where(rad > 0.0, (2.0 / math.pi) * np.arctan(_safe_sqrt(rad) / lam), 0.0)
    return out if out.shape else float(out)


def uniform_profile(lam: float) -> DensityProfile:
    band = uniform_band(lam)
    return DensityProfile(bands=[(band, lambda z, lam=lam: uniform_rho(z, lam))], mass=1.0)


# ---------------------------------------------------------------------------
# q-weighted cut hexagon
# ---------------------------------------------------------------------------


def qcut_band(alpha: float, beta: float) -> Band:
    """Support [B, A] of the q-weighted endpoint density in mu = m*eps units.

    e^{-edge} = e^{-(alpha+beta)/2} (cosh((alpha+beta)/2) -+ sqrt(sinh(beta/2)
    sinh((2 alpha+beta)/2))); the two edges satisfy
    e^{-A} + e^{-B} = 1 + e^{-(alpha+beta)}.
    """
    if beta <= 0:
        raise ValueError("beta must be positive")
    if 2.0 * alpha + beta <= 0:
        raise ValueError("need 2*alpha + beta > 0 (reflect the region instead)")
    half = 0.5 * (alpha + beta)
    root = math.sqrt(math.sinh(0.5 * beta) * math.sinh(alpha + 0.5 * beta))
    u_lo = math.exp(-half) * (math.cosh(half) - root)
    u_hi = math.exp(-half) * (math.cosh(half) + root)
    if not 0.0 < u_lo <= u_hi:
        raise ArithmeticError("band edges out of order")
    return Band(-math.log(u_hi), -math.log(u_lo))


def qcut_rho(mu, alpha: float, beta: float, band: Band | None = None):
    """(2/pi) atan( sqrt( (u - u_lo)(u_hi - u) / ((u_lo - L)(1 - u_lo)) ) )
    with u = e^{-mu}, L = e^{-(alpha+beta)}; zero off the band.

    This is the explicit boundary value of the resolvent; it satisfies the
    defining singular integral equation and integrates to beta at machine
    precision (the sinh-ratio rewrite of it floating around fails both and is
    not used).  Symmetric in the two band edges since u_lo + u_hi = 1 + L.
    """
    if band is None:
        band = qcut_band(alpha, beta)
    u_lo, u_hi = math.exp(-band.hi), math.exp(-band.lo)
    big_l = math.exp(-(alpha + beta))
    mu = np.asarray(mu, dtype=float)
    u = np.exp(-mu)
    rad = (u - u_lo) * (u_hi - u) / ((u_lo - big_l) * (1.0 - u_lo))
    inside = (mu > band.lo) & (mu < band.hi)
    out = np.where(
        inside, (2.0 / math.pi) * np.arctan(_safe_sqrt(np.where(inside, rad, 0.0))), 0.0
    )
    return out if out.shape else float(out)


def qcut_profile(alpha: float, beta: float) -> DensityProfile:
    band = qcut_band(alpha, beta)
    return DensityProfile(
        bands=[(band, lambda z, a=alpha, b=beta, bd=band: qcut_rho(z, a, b, bd))],
        mass=beta,
    )


# ---------------------------------------------------------------------------
# two forbidden corner intervals
# ---------------------------------------------------------------------------


def two_corner_thresholds(lam: float, nu: float, theta: float) -> dict[str, float]:
    """theta_c, nu_c and the uniform-degeneration critical values."""
    theta_c = (1.0 + lam + nu + math.sqrt(3.0 * (1.0 + 2.0 * lam) + (1.0 + lam - 2.0 * nu) ** 2)) / 3.0
    nu_c = (1.0 + lam + theta - math.sqrt(3.0 * (1.0 + 2.0 * lam) + (1.0 + lam - 2.0 * theta) ** 2)) / 3.0
    r = math.sqrt(1.0 + 2.0 * lam)
    return {
        "theta_c": theta_c,
        "nu_c": nu_c,
        "nu_crit": (1.0 + lam - r) / 2.0,
        "theta_crit": (1.0 + lam + r) / 2.0,
    }


def _two_corner_uv(lam: float, nu: float, theta: float) -> tuple[float, float]:
    u = (nu + theta) * (1.0 - (nu - theta) ** 2) - (lam + 1.0) * (
        (1.0 - nu - theta) * (1.0 + 2.0 * lam + nu + theta) + 4.0 * nu * theta
    )
    v = (
        (1.0 - nu - theta)
        * (1.0 - nu + theta)
        * (1.0 + nu - theta)
        * (1.0 + nu - theta + 2.0 * lam)
        * (1.0 - nu + theta + 2.0 * lam)
        * (1.0 - nu - theta + 2.0 * lam)
    )
    return u, v


def _rho_two_corner_generic(z, lam, nu, theta, a, b):
    z = np.asarray(z, dtype=float)
    x = _safe_sqrt((b - z) / (z - a))
    y = _safe_sqrt((z - a) / (b - z))
    val = 1.0 + (2.0 / math.pi) * (
        np.arctan(x * math.sqrt((a - nu) / (b - nu)))
        - np.arctan(x * math.sqrt(a / b))
        + np.arctan(y * math.sqrt(max(theta - b, 0.0) / (theta - a)))
        - np.arctan(y * math.sqrt((lam + 1.0 - b) / (lam + 1.0 - a)))
    )
    return val


def _rho_two_corner_merged(z, lam, nu, a, b):
    # lower interval detached: band edge b = theta_c, rho(a)=1, rho(b)=0
    z = np.asarray(z, dtype=float)
    x = _safe_sqrt((b - z) / (z - a))
    y = _safe_sqrt((z - a) / (b - z))
    return 1.0 + (2.0 / math.pi) * (
        np.arctan(x * math.sqrt((a - nu) / (b - nu)))
        - np.arctan(x * math.sqrt(a / b))
        - np.arctan(y * math.sqrt((lam + 1.0 - b) / (lam + 1.0 - a)))
    )


@dataclass
class TwoCornerSolution:
    regime: str
    band: Band
    profile: DensityProfile
    lam: float
    nu: float
    theta: float


def two_corner_solution(lam: float, nu: float, theta: float) -> TwoCornerSolution:
    """Limit density with forbidden corner intervals [0,nu] and
    [theta, lam+1].

    Regimes: Generic (both corners bind, density 1 at both band edges),
    LowerMerged / UpperMerged (one corner detached behind an empty gap),
    BothMerged (uniform density), Collapsed (band of zero width; reached on
    the vanishing locus of the endpoint discriminant).
    """
    if not (0.0 <= nu < theta <= lam + 1.0):
        raise ValueError("need 0 <= nu < theta <= lam+1")
    if lam <= 0:
        raise ValueError("lam must be positive")
    thr = two_corner_thresholds(lam, nu, theta)
    u, v = _two_corner_uv(lam, nu, theta)
    scale = (1.0 + 2.0 * lam) ** 3
    if abs(v) <= 1e-12 * scale:
        a = u / (4.0 * lam * lam)
        band = Band(a, a)
        profile = DensityProfile(mass=0.0)
        if abs(theta - nu - 1.0) <= 1e-9:
            # paths exactly fill the free interval
            profile = DensityProfile(frozen_regions=[((nu, theta), 1)], mass=theta - nu)
        return TwoCornerSolution("Collapsed", band, profile, lam, nu, theta)
    if v < 0:
        raise ValueError("infeasible corner intervals (free interval shorter than the path mass)")

    if nu <= thr["nu_crit"] and theta >= thr["theta_crit"]:
        band = uniform_band(lam)
        profile = DensityProfile(
            bands=[(band, lambda z, lam=lam: uniform_rho(z, lam))], mass=1.0
        )
        return TwoCornerSolution("BothMerged", band, profile, lam, nu, theta)

    if theta >= thr["theta_c"]:
        b = thr["theta_c"]
        a = b * (1.0 + lam + nu - b) ** 2 / lam**2
        band = Band(a, b)
        profile = DensityProfile(
            frozen_regions=[((nu, a), 1)],
            bands=[(band, lambda z, lam=lam, nu=nu, a=a, b=b: _rho_two_corner_merged(z, lam, nu, a, b))],
            mass=1.0,
        )
        return TwoCornerSolution("LowerMerged", band, profile, lam, nu, theta)

    if nu <= thr["nu_c"]:
        # mirror of LowerMerged under mu -> lam+1-mu
        nu_r = lam + 1.0 - theta
        thr_r = two_corner_thresholds(lam, nu_r, lam + 1.0 - nu)
        b_r = thr_r["theta_c"]
        a_r = b_r * (1.0 + lam + nu_r - b_r) ** 2 / lam**2
        a, b = lam + 1.0 - b_r, lam + 1.0 - a_r
        band = Band(a, b)
        profile = DensityProfile(
            frozen_regions=[((b, theta), 1)],
            bands=[
                (
                    band,
                    lambda z, lam=lam, nu_r=nu_r, a_r=a_r, b_r=b_r: _rho_two_corner_merged(
                        lam + 1.0 - np.asarray(z, dtype=float), lam, nu_r, a_r, b_r
                    ),
                )
            ],
            mass=1.0,
        )
        return TwoCornerSolution("UpperMerged", band, profile, lam, nu, theta)

    a = (u - math.sqrt(v)) / (4.0 * lam * lam)
    b = (u + math.sqrt(v)) / (4.0 * lam * lam)
    if not (nu < a < b < theta):
        raise ArithmeticError(f"generic endpoints left the corner window: {nu} {a} {b} {theta}")
    band = Band(a, b)
    profile = DensityProfile(
        frozen_regions=[((nu, a), 1), ((b, theta), 1)],
        bands=[
            (
                band,
                lambda z, lam=lam, nu=nu, th=theta, a=a, b=b: _rho_two_corner_generic(
                    z, lam, nu, th, a, b
                ),
            )
        ],
        mass=1.0,
    )
    return TwoCornerSolution("Generic", band, profile, lam, nu, theta)


# ---------------------------------------------------------------------------
# full hexagon slice
# ---------------------------------------------------------------------------


def hexagon_band(lam: float, theta: float, x: float) -> Band:
    sa = math.sqrt(lam * (lam + theta - x))
    sb = math.sqrt(x * theta * (1.0 + lam + theta))
    return Band(((sa - sb) / (lam + theta)) ** 2, ((sa + sb) / (lam + theta)) ** 2)


def hexagon_touch_points(lam: float, theta: float) -> dict[str, float]:
    return {
        "x1": 0.0,
        "x2": theta / (1.0 + lam),
        "x3": lam / (1.0 + theta),
        "x4": theta * (1.0 + lam + theta) / (1.0 + theta),
        "x5": lam * (1.0 + lam + theta) / (1.0 + lam),
        "x6": lam + theta,
    }


def _hexagon_frozen_values(lam: float, theta: float, x: float) -> tuple[int, int]:
    t = hexagon_touch_points(lam, theta)
    top = 0 if t["x2"] <= x <= t["x4"] else 1
    bottom = 1 if (x <= t["x3"] or x >= t["x5"]) else 0
    return bottom, top


def _hexagon_case_tag(lam: float, theta: float, x: float) -> str:
    bottom, top = _hexagon_frozen_values(lam, theta, x)
    if (bottom, top) == (1, 0):
        return "ii"
    if (bottom, top) == (0, 0):
        return "iii"
    if (bottom, top) == (0, 1):
        return "iv"
    return "i" if x <= (lam + theta) / 2.0 else "v"


def _hexagon_rho_factory(lam, theta, x, a, b, bottom, top):
    # ratios 1+x-b, 1+theta-b, lam-x+a are perfect squares of the geometry and
    # may vanish at the touch points; atan(inf) = pi/2 is the right limit
    r1 = math.sqrt((1.0 + theta - a) / (1.0 + theta - b)) if 1.0 + theta - b > 0 else math.inf
    r2 = math.sqrt((1.0 + x - a) / (1.0 + x - b)) if 1.0 + x - b > 0 else math.inf
    r3 = math.sqrt(a / b) if b > 0 else 0.0
    r4 = math.sqrt(max(lam - x + a, 0.0) / (lam - x + b))
    base = float(top)
    s2 = 1.0 if top == 0 else -1.0
    s3 = 1.0 if bottom == 1 else -1.0

    def rho(z):
        z = np.asarray(z, dtype=float)
        xr = _safe_sqrt((b - z) / (z - a))
        return base + (1.0 / math.pi) * (
            np.arctan(xr * r1)
            + s2 * np.arctan(xr * r2)
            + s3 * np.arctan(xr * r3)
            - np.arctan(xr * r4)
        )

    return rho


@dataclass
class HexagonSolution:
    case: str
    band: Band
    profile: DensityProfile
    support: tuple[float, float]
    lam: float
    theta: float
    x: float


def hexagon_solution(lam: float, theta: float, x: float) -> HexagonSolution:
    """Density of path points crossing the slice at position x of the full
    hexagon 1 x lam x theta (lam >= theta).

    Slices past the midpoint are evaluated through the exact reflection
    rho(z; x) = rho(1+theta-z; lam+theta-x), which maps bands onto bands;
    the closed-form window expressions are only normalized correctly on the
    first-half windows.  Very elongated hexagons (theta (1+lam+theta) < lam)
    have a middle window where the density is frozen at 1 on both sides of
    the band and none of the closed forms apply; that window is rejected.
    """
    if not lam >= theta > 0:
        raise ValueError("need lam >= theta > 0")
    if not 0.0 <= x <= lam + theta:
        raise ValueError("slice position x outside [0, lam+theta]")
    mid = (lam + theta) / 2.0
    tag = _hexagon_case_tag(lam, theta, x)
    bottom, top = _hexagon_frozen_values(lam, theta, x)
    t = hexagon_touch_points(lam, theta)
    if t["x4"] < t["x3"] and t["x4"] < min(x, lam + theta - x) and max(x, lam + theta - x) < t["x3"]:
        raise ValueError("middle slice of an elongated hexagon has no closed form here")
    if x > mid:
        inner = hexagon_solution(lam, theta, lam + theta - x)
        c = 1.0 + theta
        lo = max(0.0, x - lam)
        hi = 1.0 + min(x, theta)
        band = Band(c - inner.band.hi, c - inner.band.lo)
        frozen = [((c - b, c - a), v) for (a, b), v in inner.profile.frozen_regions]
        bands = [
            (Band(c - bd.hi, c - bd.lo), lambda z, f=f, c=c: f(c - np.asarray(z, dtype=float)))
            for bd, f in inner.profile.bands
        ]
        profile = DensityProfile(frozen_regions=frozen, bands=bands, mass=1.0)
        return HexagonSolution(tag, band, profile, (lo, hi), lam, theta, x)
    lo = max(0.0, x - lam)
    hi = 1.0 + min(x, theta)
    band = hexagon_band(lam, theta, x)
    frozen = []
    if bottom and band.lo > lo:
        frozen.append(((lo, band.lo), 1))
    if top and band.hi < hi:
        frozen.append(((band.hi, hi), 1))
    bands = []
    if band.width > 1e-15:
        bands.append((band, _hexagon_rho_factory(lam, theta, x, band.lo, band.hi, bottom, top)))
    elif not (bottom and top):
        raise ArithmeticError("zero-width band must sit inside a frozen slice")
    else:
        frozen = [((lo, hi), 1)]
    profile = DensityProfile(frozen_regions=frozen, bands=bands, mass=1.0)
    return HexagonSolution(tag, band, profile, (lo, hi), lam, theta, x)


def hexagon_slice_slopes(z, x: float, lam: float, theta: float):
    """Height-gradient components (hx, hy) along the slice at position x,
    parameterized by the point z on the slice segment.

    Solves the spectral quadratic on the line y = u + (lam - x) through the
    point (u, y) = (z, z + lam - x), picking the upper-half-plane root.
    Outside the liquid chord the tile fractions are frozen at 0 or 1 (real
    double root side); those values are returned rounded.
    """
    z = np.asarray(z, dtype=float)
    t = lam - x
    u = z
    y = z + t
    a2 = lam * theta - (u - y) ** 2 - (lam - theta) * (u - y)
    a1 = lam * theta + 2.0 * y * (u - y) + (lam - theta) * y - (1.0 + lam) * (u - y)
    a0 = (1.0 + lam) * y - y * y
    disc = a1 * a1 - 4.0 * a2 * a0
    root = np.sqrt(np.abs(disc))
    liquid = disc < 0
    # upper-half-plane root of a2 w^2 + a1 w + a0
    zc = np.where(liquid, (-a1 + 1j * root) / (2.0 * a2), (-a1 + root) / (2.0 * a2))
    zc = np.where(np.imag(zc) < 0, np.conj(zc), zc)
    wc = -1.0 - zc
    hx = np.angle(-wc) / math.pi
    hy = np.angle(-1.0 / zc) / math.pi
    # frozen side: collapse to exact 0/1
    hx = np.where(liquid, hx, np.round(hx))
    hy = np.where(liquid, hy, np.round(hy))
    return hx, hy


# ---------------------------------------------------------------------------
# half-cut hexagon (zig-zag floor)
# ---------------------------------------------------------------------------


def halfcut_edge(alpha: float) -> float:
    return math.sqrt(0.75 + alpha)


def halfcut_rho(z, alpha: float):
    """(2/pi) atan( sqrt(3 + 4 alpha - 4 z^2) / (1 + 2 alpha) ) on
    [0, sqrt(3/4 + alpha)], zero beyond."""
    if alpha < 0:
        raise ValueError("alpha must be >= 0")
    z = np.asarray(z, dtype=float)
    rad = 3.0 + 4.0 * alpha - 4.0 * z * z
    out = np.where(
        (z >= 0.0) & (rad > 0.0),
        (2.0 / math.pi) * np.arctan(_safe_sqrt(rad) / (1.0 + 2.0 * alpha)),
        0.0,
    )
    return out if out.shape else float(out)


def halfcut_profile(alpha: float) -> DensityProfile:
    """As a profile, sigma carries mass exactly 1/2: it is the uniform
    density at aspect ratio 2 alpha + 1 restricted to the upper half-range
    (that is its defining reflection identity)."""
    edge = halfcut_edge(alpha)
    return DensityProfile(
        bands=[(Band(0.0, edge), lambda z, a=alpha: halfcut_rho(z, a))], mass=0.5
    )


def halfcut_endpoint_rho(z, alpha: float):
    """Limit density of half-cut endpoint positions m/k (mass 1).

    Doubling the region through the zig-zag floor yields a cut hexagon with
    2k paths and aspect ratio alpha = n/k, at half the coordinate scale, so
    the endpoint density is the uniform profile evaluated at (z+alpha+1)/2:
    support [0, sqrt(1+2 alpha)].  Exact small-size marginals confirm this
    (and rule out ``halfcut_rho`` as the endpoint-density limit)."""
    z = np.asarray(z, dtype=float)
    return uniform_rho((z + alpha + 1.0) / 2.0, alpha)


# ---------------------------------------------------------------------------
# sixth-of-hexagon triangle and TSSCPP
# ---------------------------------------------------------------------------

TRIANGLE_FROZEN_X = 1.0 - math.sqrt(3.0) / 2.0


def exit_density(z):
    """Path density along the free edge of the unit triangle (lam = 1 slice
    at x = 1): (2/pi) atan sqrt(3 - 4 (z-1)^2) on [1 - sqrt(3)/2, 1]."""
    z = np.asarray(z, dtype=float)
    rad = 3.0 - 4.0 * (z - 1.0) ** 2
    out = np.where((z >= TRIANGLE_FROZEN_X) & (rad > 0.0), (2.0 / math.pi) * np.arctan(_safe_sqrt(rad)), 0.0)
    out = np.where(z < TRIANGLE_FROZEN_X, 0.0, out)
    return out if out.shape else float(out)


def enter_density(z):
    """Complement 1 - exit_density on [0, 1]: 1 on [0, 1-sqrt(3)/2], then
    (2/pi) atan( 1 / sqrt(3 - 4 (z-1)^2) )."""
    z = np.asarray(z, dtype=float)
    rad = 3.0 - 4.0 * (z - 1.0) ** 2
    with np.errstate(divide="ignore"):
        val = (2.0 / math.pi) * np.arctan(1.0 / _safe_sqrt(np.where(rad > 0, rad, np.nan)))
    out = np.where(z < TRIANGLE_FROZEN_X, 1.0, np.where(rad > 0, val, 0.0))
    return out if out.shape else float(out)


def triangle_rho(z, x: float):
    """Density of paths crossing the line at distance x in the triangle
    (z measured along the line, 0 <= z <= x)."""
    if not 0.0 <= x <= 1.0:
        raise ValueError("x must be in [0, 1]")
    z = np.asarray(z, dtype=float)
    if np.any((z < -1e-12) | (z > x + 1e-12)):
        raise ValueError("z outside [0, x]")
    if x <= TRIANGLE_FROZEN_X:
        out = np.ones_like(z)
        return out if out.shape else float(out)
    sol = hexagon_solution(1.0, 1.0, x)
    return sol.profile.rho(z)


def tsscpp_rho(z, x: float):
    """TSSCPP slice density on x <= z <= (1+x)/2.

    The TSSCPP paths cross the slice through the third tile type (the one the
    ordinary slice paths never use), so the crossing density is the single
    tile fraction hx of the lam = theta = 1 hexagon rather than the two-type
    sum hx + hy; at the zig-zag line z = x it reduces to the entering-tile
    density.  Frozen values outside the liquid chord are taken from the
    chord-edge limits.
    """
    if not 0.0 <= x <= 1.0:
        raise ValueError("x must be in [0, 1]")
    z = np.asarray(z, dtype=float)
    if np.any((z < x - 1e-12) | (z > (1.0 + x) / 2.0 + 1e-12)):
        raise ValueError("z outside [x, (1+x)/2]")
    band = hexagon_band(1.0, 1.0, x)
    eps = 1e-9 * max(band.width, 1e-6)
    zc = np.clip(z, band.lo + eps, band.hi - eps)
    hx, _ = hexagon_slice_slopes(zc, x, 1.0, 1.0)
    inside = (z > band.lo) & (z < band.hi)
    out = np.where(inside, hx, np.round(hx))
    return out if out.shape else float(out)


def triangle_profile(x: float) -> DensityProfile:
    """Triangle slice as a profile on [0, x]; mass is whatever the slice
    carries (not 1), fixed by construction-time quadrature."""
    if x <= TRIANGLE_FROZEN_X:
        return DensityProfile(frozen_regions=[((0.0, x), 1)], mass=x)
    sol = hexagon_solution(1.0, 1.0, x)
    a = sol.band.lo
    frozen = []
    if x <= 0.5 and a > 0:
        frozen.append(((0.0, a), 1))
    band = Band(max(a, 0.0), x)
    prof = DensityProfile(frozen_regions=frozen, bands=[(band, sol.profile.rho)], mass=0.0)
    prof.mass = prof.total_mass()
    return prof


def tsscpp_profile(x: float) -> DensityProfile:
    mid = (1.0 + x) / 2.0
    if x == 0.0:
        return DensityProfile(frozen_regions=[((0.0, 0.5), 1)], mass=0.5)
    band = hexagon_band(1.0, 1.0, x)
    a = band.lo
    frozen = []
    lo = x
    if a > x:
        value = float(tsscpp_rho((x + a) / 2.0, x)) if a - x > 1e-12 else 1.0
        frozen.append(((x, a), int(round(value))))
        lo = a
    prof = DensityProfile(
        frozen_regions=frozen,
        bands=[(Band(lo, mid), lambda z, x=x: tsscpp_rho(z, x))],
        mass=0.0,
    )
    prof.mass = prof.total_mass()
    return prof
