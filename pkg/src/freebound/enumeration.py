"""Exact partition functions for boundary endpoint configurations.

A configuration of k non-intersecting lattice paths in a cut hexagon is
recorded by the strictly increasing vector m of endpoint sites on the free
boundary.  Two independent exact formulas are implemented for the weighted
count Z(m):

* ``z_det``     - the path-count determinant (entries are q-binomials for the
                  cut hexagon, reflected binomial differences for the
                  half-cut hexagon),
* ``z_product`` - the closed multiplicative form.

Both are exact rationals and must agree; ``brute_force_z`` enumerates path
families directly and serves as the ground-truth oracle at small sizes.

The q -> 1/q reflection symmetry is exposed through ``reflect_config`` and
``q_symmetry_residual``.  The pure power of q relating Z(m | 1/q) and
Z(m-bar | q) is calibrated numerically per (k, n) (see
``calibrate_symmetry_exponent``) because the printed closed form for the
exponent does not survive the exact check beyond k = 1; the calibration
report records both.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Iterator, Sequence

from .exactq import binomial, q_binomial, q_factorial, q_pow

CUT_HEXAGON = "cut"
HALF_CUT_HEXAGON = "halfcut"

_BRUTE_FORCE_K = 3
_BRUTE_FORCE_N = 5
_DISTRIBUTION_CAP = 10**6


@dataclass(frozen=True)
class RegionSpec:
    """Discrete region: cut hexagon n x k x n (weight q per box) or half-cut
    hexagon k x 2n x (2n+k) (uniform), with optional forbidden / fully packed
    integer site intervals on the free boundary.

    Intervals are inclusive [lo, hi] site ranges, pairwise disjoint.  Sites
    run over 0..n+k-1 for the cut hexagon and 1..n+k for the half-cut one.
    """

    kind: str
    k: int
    n: int
    q: Fraction = Fraction(1)
    forbidden: tuple[tuple[int, int], ...] = ()
    packed: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        if self.kind not in (CUT_HEXAGON, HALF_CUT_HEXAGON):
            raise ValueError(f"unknown region kind {self.kind!r}")
        if self.k < 0 or self.n < 1:
            raise ValueError("need k >= 0 and n >= 1")
        object.__setattr__(self, "q", Fraction(self.q))
        if self.q <= 0:
            raise ValueError("q must be a positive rational")
        if self.kind == HALF_CUT_HEXAGON:
            if self.q != 1 or self.forbidden or self.packed:
                raise ValueError("half-cut hexagon supports q = 1 and no intervals")
        ivals = sorted(self.forbidden) + sorted(self.packed)
        for lo, hi in ivals:
            if lo > hi or lo < self.site_min or hi > self.site_max:
                raise ValueError(f"interval [{lo},{hi}] outside site range")
        ivals.sort()
        for (a, b), (c, d) in zip(ivals, ivals[1:]):
            if c <= b:
                raise ValueError("intervals must be disjoint")
        object.__setattr__(self, "forbidden", tuple(sorted(self.forbidden)))
        object.__setattr__(self, "packed", tuple(sorted(self.packed)))

    @property
    def site_min(self) -> int:
        return 0 if self.kind == CUT_HEXAGON else 1

    @property
    def site_max(self) -> int:
        return self.n + self.k - 1 if self.kind == CUT_HEXAGON else self.n + self.k

    @property
    def num_sites(self) -> int:
        return self.site_max - self.site_min + 1

    def site_forbidden(self, m: int) -> bool:
        return any(lo <= m <= hi for lo, hi in self.forbidden)

    def site_packed(self, m: int) -> bool:
        return any(lo <= m <= hi for lo, hi in self.packed)

    def allowed_sites(self) -> list[int]:
        return [
            m
            for m in range(self.site_min, self.site_max + 1)
            if not self.site_forbidden(m)
        ]

    def packed_sites(self) -> list[int]:
        return [m for m in range(self.site_min, self.site_max + 1) if self.site_packed(m)]

    def config_count(self) -> int:
        """Number of valid endpoint configurations (packed sites pinned)."""
        free = len(self.allowed_sites()) - len(self.packed_sites())
        choose = self.k - len(self.packed_sites())
        if choose < 0:
            return 0
        return comb(free, choose)

    def all_configs(self) -> Iterator["EndpointConfig"]:
        pinned = self.packed_sites()
        if len(pinned) > self.k:
            return
        movable = [m for m in self.allowed_sites() if not self.site_packed(m)]
        for extra in itertools.combinations(movable, self.k - len(pinned)):
            yield EndpointConfig(tuple(sorted(pinned + list(extra))))


@dataclass(frozen=True)
class EndpointConfig:
    """Strictly increasing endpoint site vector m_1 < ... < m_k."""

    m: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "m", tuple(int(v) for v in self.m))
        if any(a >= b for a, b in zip(self.m, self.m[1:])):
            raise ValueError("endpoints must be strictly increasing")

    @property
    def k(self) -> int:
        return len(self.m)

    def valid_for(self, region: RegionSpec) -> bool:
        if self.k != region.k:
            return False
        if self.m and (self.m[0] < region.site_min or self.m[-1] > region.site_max):
            return False
        if any(region.site_forbidden(v) for v in self.m):
            return False
        occupied = set(self.m)
        return all(s in occupied for s in region.packed_sites())


def _as_config(m) -> EndpointConfig:
    return m if isinstance(m, EndpointConfig) else EndpointConfig(tuple(m))


# ---------------------------------------------------------------------------
# determinants
# ---------------------------------------------------------------------------


def bareiss_det(rows: Sequence[Sequence[int]]) -> int:
    """Fraction-free Bareiss determinant of an integer matrix."""
    a = [list(map(int, r)) for r in rows]
    n = len(a)
    if any(len(r) != n for r in a):
        raise ValueError("matrix must be square")
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for j in range(n - 1):
        if a[j][j] == 0:
            for i in range(j + 1, n):
                if a[i][j] != 0:
                    a[i], a[j] = a[j], a[i]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(j + 1, n):
            for col in range(j + 1, n):
                a[i][col] = (a[i][col] * a[j][j] - a[i][j] * a[j][col]) // prev
            a[i][j] = 0
        prev = a[j][j]
    return sign * a[n - 1][n - 1]


def det_fraction(rows: Sequence[Sequence[Fraction]]) -> Fraction:
    """Exact determinant of a rational matrix (denominators cleared, then
    Bareiss on integers)."""
    n = len(rows)
    if n == 0:
        return Fraction(1)
    scale = Fraction(1)
    int_rows = []
    for r in rows:
        lcm = 1
        for v in r:
            v = Fraction(v)
            g = lcm // _gcd(lcm, v.denominator)
            lcm = g * v.denominator
        scale *= lcm
        int_rows.append([int(Fraction(v) * lcm) for v in r])
    return Fraction(bareiss_det(int_rows)) / scale


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


# ---------------------------------------------------------------------------
# partition functions
# ---------------------------------------------------------------------------


def z_det(region: RegionSpec, m) -> Fraction:
    """Exact weighted path count as a k x k determinant.

    Cut hexagon entry:  q^{b(b-1)/2} C(n, b)_q with b = m_j - i + 1.
    Half-cut entry:     C(2n, n+m_j-i) - C(2n, n+m_j+i-1)  (reflection
                        principle for walks with a floor).
    """
    cfg = _as_config(m)
    if cfg.k != region.k:
        raise ValueError(f"config has k={cfg.k}, region expects k={region.k}")
    if region.k == 0:
        return Fraction(1)
    if region.kind == CUT_HEXAGON:
        q = region.q
        n = region.n
        rows = []
        for i in range(1, region.k + 1):
            row = []
            for mj in cfg.m:
                b = mj - i + 1
                c = q_binomial(n, b, q)
                row.append(q_pow(q, b * (b - 1) // 2) * c if c else Fraction(0))
            rows.append(row)
        return det_fraction(rows)
    n = region.n
    rows = [
        [
            Fraction(binomial(2 * n, n + mj - i) - binomial(2 * n, n + mj + i - 1))
            for mj in cfg.m
        ]
        for i in range(1, region.k + 1)
    ]
    return det_fraction(rows)


def z_product(region: RegionSpec, m) -> Fraction:
    """Closed multiplicative form of ``z_det``.

    The Vandermonde-type factor is taken over ordered pairs i < j (the
    printed all-pairs product would vanish); with that reading the sign comes
    out positive against the determinant for every valid m, which the test
    suite checks exhaustively at small sizes.
    """
    cfg = _as_config(m)
    if cfg.k != region.k:
        raise ValueError(f"config has k={cfg.k}, region expects k={region.k}")
    k = region.k
    if k == 0:
        return Fraction(1)
    n = region.n
    if region.kind == HALF_CUT_HEXAGON:
        out = Fraction(1)
        for i, mi in enumerate(cfg.m, start=1):
            num = _factorial(2 * n + 2 * i - 2)
            den = _factorial(n + mi + k - 1) * _factorial(n - mi + k)
            out *= Fraction(num, den)
        for i in range(k):
            for j in range(i, k):
                out *= cfg.m[i] + cfg.m[j] - 1
                if j > i:
                    out *= cfg.m[j] - cfg.m[i]
        return out
    q = region.q
    if q == 1:
        out = Fraction(1)
        for i, mi in enumerate(cfg.m, start=1):
            out *= Fraction(
                _factorial(n + k - i), _factorial(mi) * _factorial(n + k - mi - 1)
            )
        for i in range(k):
            for j in range(i + 1, k):
                out *= cfg.m[j] - cfg.m[i]
        return out
    expo = comb(k + 1, 3)
    twice = sum(mi * (mi - 2 * k + 1) for mi in cfg.m)
    if twice % 2:
        raise ArithmeticError("exponent 2*e must be even")  # m(m+1) - 2km is even
    expo += twice // 2
    out = q_pow(q, expo)
    qm = [q_pow(q, mi) for mi in cfg.m]
    for i in range(k):
        for j in range(i + 1, k):
            out *= qm[i] - qm[j]
    for i, mi in enumerate(cfg.m, start=1):
        out *= q_factorial(n + k - i, q)
        out /= q_factorial(mi, q) * q_factorial(n + k - mi - 1, q)
    return out


_FACTORIALS: list[int] = [1]


def _factorial(n: int) -> int:
    while len(_FACTORIALS) <= n:
        _FACTORIALS.append(_FACTORIALS[-1] * len(_FACTORIALS))
    return _FACTORIALS[n]


# ---------------------------------------------------------------------------
# q -> 1/q reflection symmetry
# ---------------------------------------------------------------------------


def reflect_config(region: RegionSpec, m) -> EndpointConfig:
    """m_i -> n+k-1-m_i, re-sorted.  Involutive."""
    if region.kind != CUT_HEXAGON or region.forbidden or region.packed:
        raise ValueError("reflection requires a cut hexagon without intervals")
    cfg = _as_config(m)
    top = region.n + region.k - 1
    return EndpointConfig(tuple(sorted(top - v for v in cfg.m)))


def calibrate_symmetry_exponent(k: int, n: int, q: Fraction = Fraction(2)) -> int:
    """Exponent s with Z_{k,n}(m | 1/q) = q^s Z_{k,n}(m-bar | q).

    Extracted exactly from one reference configuration; ``q_symmetry_residual``
    then verifies that the same s works for every m, which is the actual
    content of the reflection symmetry.
    """
    q = Fraction(q)
    if q == 1 or q <= 0:
        raise ValueError("calibration needs a positive q != 1")
    region_q = RegionSpec(CUT_HEXAGON, k, n, q)
    region_inv = RegionSpec(CUT_HEXAGON, k, n, 1 / q)
    cfg = EndpointConfig(tuple(range(k)))
    ratio = z_det(region_inv, cfg) / z_det(region_q, reflect_config(region_q, cfg))
    s = _exact_power_exponent(ratio, q)
    if s is None:
        raise ArithmeticError(f"Z(m|1/q)/Z(m-bar|q) is not a pure power of q at k={k}, n={n}")
    return s


def _exact_power_exponent(value: Fraction, q: Fraction) -> int | None:
    """Integer s with value == q**s, or None."""
    if value <= 0:
        return None
    if value == 1:
        return 0
    import math

    guess = round(math.log(float(value)) / math.log(float(q)))
    for s in (guess - 1, guess, guess + 1):
        if q_pow(q, s) == value:
            return s
    return None


def symmetry_exponent_printed(k: int, n: int) -> int:
    """The closed-form exponent as printed in the source formula."""
    num = -(k**3 - k) - n * k * (n + k)
    assert num % 2 == 0
    return num // 2 + k * (n + k - 1)


def symmetry_exponent_fitted(k: int, n: int) -> int:
    """Closed form matching the calibrated exponents: -k n (n-1) / 2."""
    return -(k * n * (n - 1)) // 2


def q_symmetry_residual(region: RegionSpec, m, exponent: int | None = None) -> Fraction:
    """Z(m | 1/q) - q^s Z(m-bar | q) with the calibrated s; contract: 0.

    Taken at the same q on both sides the printed identity has no
    m-independent exponent at all (already false for k=1, n=2), so the
    reflection is checked in its q -> 1/q form, which is exact.
    """
    cfg = _as_config(m)
    q = region.q
    if q == 1:
        return z_det(region, cfg) - z_det(region, reflect_config(region, cfg))
    if exponent is None:
        exponent = calibrate_symmetry_exponent(region.k, region.n, q if q != 1 else Fraction(2))
    region_inv = RegionSpec(region.kind, region.k, region.n, 1 / q)
    lhs = z_det(region_inv, cfg)
    rhs = q_pow(q, exponent) * z_det(region, reflect_config(region, cfg))
    return lhs - rhs


@dataclass
class SymmetryCalibration:
    """Fitted reflection exponents on a (k, n) grid plus formula comparison."""

    k_max: int
    n_max: int
    fitted: dict[tuple[int, int], int] = field(default_factory=dict)
    printed_matches: bool = True
    fitted_formula_matches: bool = True

    @classmethod
    def run(cls, k_max: int = 4, n_max: int = 4) -> "SymmetryCalibration":
        cal = cls(k_max, n_max)
        for k in range(1, k_max + 1):
            for n in range(1, n_max + 1):
                s = calibrate_symmetry_exponent(k, n)
                cal.fitted[(k, n)] = s
                if s != symmetry_exponent_printed(k, n):
                    cal.printed_matches = False
                if s != symmetry_exponent_fitted(k, n):
                    cal.fitted_formula_matches = False
        return cal

    def report(self) -> str:
        lines = [
            "q->1/q reflection exponent calibration (Z(m|1/q) = q^s Z(m-bar|q)):",
            f"  printed closed form matches fitted values: {self.printed_matches}",
            f"  fitted closed form -k*n*(n-1)/2 matches:   {self.fitted_formula_matches}",
        ]
        for (k, n), s in sorted(self.fitted.items()):
            lines.append(
                f"  k={k} n={n}: fitted {s:>4}  printed {symmetry_exponent_printed(k, n):>4}"
            )
        return "\n".join(lines)


# ---------------------------------------------------------------------------
# brute-force oracle
# ---------------------------------------------------------------------------


def _paths(dx: int, dy: int) -> Iterator[tuple[tuple[int, int], ...]]:
    """All monotone (right/up) step sequences as visited-point tuples from
    (0,0) to (dx,dy)."""
    if dx < 0 or dy < 0:
        return
    for rights in itertools.combinations(range(dx + dy), dx):
        pos = [0, 0]
        pts = [(0, 0)]
        rset = set(rights)
        for step in range(dx + dy):
            if step in rset:
                pos[0] += 1
            else:
                pos[1] += 1
            pts.append((pos[0], pos[1]))
        yield tuple(pts)


def _path_area(pts: Sequence[tuple[int, int]]) -> int:
    """Boxes between the path, its left edge and its top edge: sum of local x
    over up-steps."""
    area = 0
    for (x0, y0), (x1, y1) in zip(pts, pts[1:]):
        if y1 > y0:
            area += x0
    return area


def brute_force_z(region: RegionSpec, m) -> Fraction:
    """Direct enumeration of vertex-disjoint path families with the per-box
    q-weight.  Exponentially slow; limited to k <= 3, n <= 5."""
    cfg = _as_config(m)
    if region.k > _BRUTE_FORCE_K or region.n > _BRUTE_FORCE_N:
        raise ValueError("brute force limited to k <= 3, n <= 5")
    if cfg.k != region.k:
        raise ValueError("dimension mismatch")
    if region.k == 0:
        return Fraction(1)
    if region.kind == CUT_HEXAGON:
        return _brute_force_cut(region, cfg)
    return _brute_force_halfcut(region, cfg)


def _brute_force_cut(region: RegionSpec, cfg: EndpointConfig) -> Fraction:
    n, q = region.n, region.q
    per_path: list[list[tuple[frozenset, int]]] = []
    for i, mi in enumerate(cfg.m, start=1):
        b = mi - i + 1
        sx, sy = i - 1, 1 - i
        options = []
        for pts in _paths(b, n - b):
            shifted = frozenset((x + sx, y + sy) for x, y in pts)
            options.append((shifted, _path_area(pts) + comb(b, 2)))
        per_path.append(options)
    total = Fraction(0)
    for combo in itertools.product(*per_path):
        union = set()
        count = 0
        for pts, _ in combo:
            union |= pts
            count += len(pts)
        if len(union) != count:
            continue
        total += q_pow(q, sum(w for _, w in combo))
    return total


def _brute_force_halfcut(region: RegionSpec, cfg: EndpointConfig) -> Fraction:
    n = region.n
    per_path: list[list[frozenset]] = []
    for i, mi in enumerate(cfg.m, start=1):
        y0 = 2 * i - 2
        y1 = 2 * mi - 2
        options = []
        for ups in itertools.combinations(range(2 * n), (2 * n + y1 - y0) // 2):
            uset = set(ups)
            y = y0
            pts = [(0, y0)]
            ok = True
            for step in range(2 * n):
                y += 1 if step in uset else -1
                if y < 0:
                    ok = False
                    break
                pts.append((step + 1, y))
            if ok and y == y1:
                options.append(frozenset(pts))
        per_path.append(options)
    total = 0
    for combo in itertools.product(*per_path):
        union = set()
        count = 0
        for pts in combo:
            union |= pts
            count += len(pts)
        if len(union) == count:
            total += 1
    return Fraction(total)


# ---------------------------------------------------------------------------
# full distribution
# ---------------------------------------------------------------------------


@dataclass
class ExactDistribution:
    """All valid configurations with exact weights Prob(m) = Z(m)/sum Z."""

    configs: list[EndpointConfig]
    weights: list[Fraction]
    total: Fraction

    def probability(self, m) -> Fraction:
        cfg = _as_config(m)
        try:
            idx = self.configs.index(cfg)
        except ValueError:
            return Fraction(0)
        return self.weights[idx] / self.total

    def as_dict(self) -> dict[tuple[int, ...], Fraction]:
        return {c.m: w / self.total for c, w in zip(self.configs, self.weights)}


def exact_distribution(region: RegionSpec) -> ExactDistribution:
    """Enumerate Prob(m) proportional to Z(m); refuses above 10^6 configs."""
    bound = comb(region.n + region.k, region.k)
    if bound > _DISTRIBUTION_CAP:
        raise ValueError(f"C(n+k, k) = {bound} exceeds enumeration cap {_DISTRIBUTION_CAP}")
    configs = []
    weights = []
    total = Fraction(0)
    for cfg in region.all_configs():
        w = z_product(region, cfg)
        if w <= 0:
            raise ArithmeticError(f"non-positive weight {w} at {cfg.m}")
        configs.append(cfg)
        weights.append(w)
        total += w
    if not configs:
        raise ValueError("region admits no valid configuration")
    return ExactDistribution(configs, weights, total)
