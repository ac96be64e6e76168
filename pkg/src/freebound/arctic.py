"""Arctic curves and slope fields from the spectral-curve description.

For uniform rhombus tilings the spectral polynomial is 1 + z + w = 0; the
second equation of the characteristic system is quadratic in z for both
regions treated here, so the slope field is explicit:

    grad h = (hx, hy) = (Arg(-w), Arg(-1/z)) / pi,

with the root chosen in the upper half plane inside the liquid region.  The
arctic curve is the vanishing locus of the discriminant; for the full
hexagon 1 x lam x theta it is the inscribed ellipse

    ((1+lam) x + (1+theta) y - (1+lam)(1+theta))^2 / (1+lam+theta)
      + ((1+lam) x - (1+theta) y)^2 / (lam theta) = (1+lam)(1+theta)

tangent to x=0, x=1+theta, y=0, y=1+lam, y=x+lam, y=x-theta (the latter two
verified here; the tangent-line list sometimes quoted with x=theta, y=lam
fails the double-root check and is not used).  For the cut hexagon (n x k x
n, lam = n/k) the curve is

    (1+2 lam)(x-y)^2 + lam^2 (x+y-lam-1)^2 = lam^2 (1+2 lam).

Along any slice line y = x + t the sum hx + hy reproduces the closed-form
slice density, which is the consistency check exported to the test suite.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .density import hexagon_band, hexagon_solution, uniform_rho


@dataclass(frozen=True)
class ConicCurve:
    """a x^2 + b xy + c y^2 + d x + e y + f = 0."""

    a: float
    b: float
    c: float
    d: float
    e: float
    f: float

    def value(self, x, y):
        return (
            self.a * x * x
            + self.b * x * y
            + self.c * y * y
            + self.d * x
            + self.e * y
            + self.f
        )

    def tangency_residual(self, line: tuple[float, float, float]) -> float:
        """Discriminant of the conic restricted to the line p x + q y + r = 0,
        normalized by the squared coefficient scale; 0 iff tangent."""
        p, q, r = line
        if abs(q) >= abs(p):
            # y = -(p x + r)/q
            aa = self.a * q * q - self.b * p * q + self.c * p * p
            bb = -self.b * q * r + 2.0 * self.c * p * r + self.d * q * q - self.e * p * q
            cc = self.c * r * r - self.e * q * r + self.f * q * q
        else:
            aa = self.c * p * p - self.b * p * q + self.a * q * q
            bb = -self.b * p * r + 2.0 * self.a * q * r + self.e * p * p - self.d * p * q
            cc = self.a * r * r - self.d * p * r + self.f * p * p
        scale = max(abs(aa), abs(bb), abs(cc), 1e-300)
        return abs(bb * bb - 4.0 * aa * cc) / scale**2

    def center(self) -> tuple[float, float]:
        mat = np.array([[2.0 * self.a, self.b], [self.b, 2.0 * self.c]])
        rhs = -np.array([self.d, self.e])
        cx, cy = np.linalg.solve(mat, rhs)
        return float(cx), float(cy)

    def boundary_points(self, n: int) -> np.ndarray:
        """n points at uniform angular parameterization (ellipses only)."""
        cx, cy = self.center()
        q = np.array([[self.a, self.b / 2.0], [self.b / 2.0, self.c]])
        const = -self.value(cx, cy)
        evals, evecs = np.linalg.eigh(q)
        if np.any(evals <= 0) or const <= 0:
            raise ValueError("conic is not a real ellipse")
        axes = np.sqrt(const / evals)
        phis = 2.0 * math.pi * np.arange(n) / n
        pts = (evecs * axes) @ np.vstack([np.cos(phis), np.sin(phis)])
        return np.column_stack([cx + pts[0], cy + pts[1]])


def hexagon_arctic(lam: float, theta: float) -> ConicCurve:
    """Inscribed arctic ellipse of the 1 x lam x theta hexagon."""
    if lam <= 0 or theta <= 0:
        raise ValueError("lam, theta must be positive")
    al, th = 1.0 + lam, 1.0 + theta
    s = 1.0 + lam + theta
    lt = lam * theta
    # ((al x + th y - al th)^2)/s + ((al x - th y)^2)/lt - al th = 0
    a = al * al / s + al * al / lt
    b = 2.0 * al * th / s - 2.0 * al * th / lt
    c = th * th / s + th * th / lt
    d = -2.0 * al * al * th / s
    e = -2.0 * al * th * th / s
    f = al * al * th * th / s - al * th
    return ConicCurve(a, b, c, d, e, f)


def hexagon_edge_lines(lam: float, theta: float) -> list[tuple[float, float, float]]:
    return [
        (1.0, 0.0, 0.0),                     # x = 0
        (1.0, 0.0, -(1.0 + theta)),          # x = 1 + theta
        (0.0, 1.0, 0.0),                     # y = 0
        (0.0, 1.0, -(1.0 + lam)),            # y = 1 + lam
        (1.0, -1.0, lam),                    # y = x + lam
        (1.0, -1.0, -theta),                 # y = x - theta
    ]


def cuthex_arctic(lam: float) -> ConicCurve:
    """Arctic conic of the cut hexagon with aspect ratio lam."""
    if lam <= 0:
        raise ValueError("lam must be positive")
    c1 = 1.0 + 2.0 * lam
    l2 = lam * lam
    # c1 (x-y)^2 + l2 (x+y-lam-1)^2 - l2 c1 = 0
    s = lam + 1.0
    return ConicCurve(
        c1 + l2,
        -2.0 * c1 + 2.0 * l2,
        c1 + l2,
        -2.0 * l2 * s,
        -2.0 * l2 * s,
        l2 * s * s - l2 * c1,
    )


def cuthex_edge_lines(lam: float) -> list[tuple[float, float, float]]:
    s = lam + 1.0
    return [
        (0.0, 1.0, 0.0),
        (0.0, 1.0, -s),
        (1.0, 0.0, 0.0),
        (1.0, 0.0, -s),
        (1.0, -1.0, lam),
        (1.0, -1.0, -lam),
    ]


@dataclass(frozen=True)
class SlopePoint:
    x: float
    y: float
    z: complex
    w: complex
    hx: float
    hy: float


class FrozenPointError(ValueError):
    """Raised when the requested point lies outside the liquid region."""


def _slope_from_quadratic(a2: float, a1: float, a0: float, x: float, y: float) -> SlopePoint:
    disc = a1 * a1 - 4.0 * a2 * a0
    if disc >= 0.0 or a2 == 0.0:
        raise FrozenPointError(f"point ({x}, {y}) is outside the liquid region")
    z = (-a1 + 1j * math.sqrt(-disc)) / (2.0 * a2)
    if z.imag < 0:
        z = z.conjugate()
    w = -1.0 - z
    hx = cmath.phase(-w) / math.pi
    hy = cmath.phase(-1.0 / z) / math.pi
    return SlopePoint(x, y, z, w, hx, hy)


def slope_field(x: float, y: float, lam: float, theta: float) -> SlopePoint:
    """Tile-fraction gradient inside the liquid region of the full hexagon."""
    d = x - y
    a2 = lam * theta - d * d - (lam - theta) * d
    a1 = lam * theta + 2.0 * y * d + (lam - theta) * y - (1.0 + lam) * d
    a0 = (1.0 + lam) * y - y * y
    return _slope_from_quadratic(a2, a1, a0, x, y)


def cuthex_slope_field(x: float, y: float, lam: float) -> SlopePoint:
    d = x - y
    a2 = lam * lam - d * d
    a1 = lam * lam - (1.0 + lam - 2.0 * y) * d
    a0 = y * (1.0 + lam - y)
    return _slope_from_quadratic(a2, a1, a0, x, y)


def slope_sum_closed_form(x: float, t: float, lam: float, theta: float) -> float:
    """hx + hy along the line y = x + t via the arctangent addition form."""
    band = hexagon_band(lam, theta, lam - t)
    a, b = band.lo, band.hi
    num = (lam + theta) * math.sqrt(max((b - x) * (x - a), 0.0))
    den = lam * theta - t * (1.0 + theta) + 2.0 * x * (x + t - 1.0 - (lam + theta) / 2.0)
    return math.atan2(num, den) / math.pi


def slope_density_consistency(lam: float, theta: float, t: float, grid: int = 50) -> float:
    """max |slice density - (hx + hy)| over interior points of the liquid
    chord of the line y = x + t."""
    if not -theta < t < lam:
        raise ValueError("line misses the liquid region")
    x_slice = lam - t
    sol = hexagon_solution(lam, theta, x_slice)
    a, b = sol.band.lo, sol.band.hi
    xs = a + (b - a) * (np.arange(grid) + 0.5) / grid
    worst = 0.0
    for xv in xs:
        sp = slope_field(float(xv), float(xv) + t, lam, theta)
        rho = float(sol.profile.rho(float(xv)))
        worst = max(worst, abs(rho - (sp.hx + sp.hy)))
    return worst


def cuthex_diagonal_consistency(lam: float, grid: int = 50) -> float:
    """max |uniform density - (hx + hy)| along the cut-hexagon diagonal."""
    from .density import uniform_band

    band = uniform_band(lam)
    xs = band.lo + band.width * (np.arange(grid) + 0.5) / grid
    worst = 0.0
    for xv in xs:
        sp = cuthex_slope_field(float(xv), float(xv), lam)
        worst = max(worst, abs(float(uniform_rho(xv, lam)) - (sp.hx + sp.hy)))
    return worst


def touch_point_slice_positions(lam: float, theta: float) -> list[float]:
    """Slice positions lam - (y - x) of the six tangency points of the
    arctic ellipse, sorted; they reproduce the window boundaries of the
    slice-density cases."""
    curve = hexagon_arctic(lam, theta)
    out = []
    for p, q, r in hexagon_edge_lines(lam, theta):
        # tangency point of the conic with the line
        if abs(q) >= abs(p):
            aa = curve.a * q * q - curve.b * p * q + curve.c * p * p
            bb = -curve.b * q * r + 2.0 * curve.c * p * r + curve.d * q * q - curve.e * p * q
            xv = -bb / (2.0 * aa)
            yv = -(p * xv + r) / q
        else:
            aa = curve.c * p * p - curve.b * p * q + curve.a * q * q
            bb = -curve.b * p * r + 2.0 * curve.a * q * r + curve.e * p * p - curve.d * p * q
            yv = -bb / (2.0 * aa)
            xv = -(q * yv + r) / p
        out.append(lam - (yv - xv))
    return sorted(out)
