import math

import numpy as np
import pytest

from freebound import density as D


def grid_inside(lo, hi, n=200):
    return lo + (hi - lo) * (np.arange(n) + 0.5) / n


# ---------------------------------------------------------------------------
# uniform
# ---------------------------------------------------------------------------


def test_uniform_band_lam1():
    b = D.uniform_band(1.0)
    assert b.lo == pytest.approx(1.0 - math.sqrt(3.0) / 2.0, abs=1e-15)
    assert b.hi == pytest.approx(1.0 + math.sqrt(3.0) / 2.0, abs=1e-15)


def test_uniform_rho_value_and_edges():
    assert D.uniform_rho(1.0, 1.0) == pytest.approx(2.0 / 3.0, abs=1e-15)
    b = D.uniform_band(1.0)
    # evaluating exactly at the edge leaves a ~sqrt(eps) rounding residue
    assert abs(D.uniform_rho(b.lo, 1.0)) < 1e-7
    assert D.uniform_rho(b.hi + 0.1, 1.0) == 0.0
    assert D.uniform_rho(b.lo - 0.1, 1.0) == 0.0


@pytest.mark.parametrize("lam", [0.4, 1.0, 2.7, 5.0])
def test_uniform_mass(lam):
    assert D.uniform_profile(lam).total_mass() == pytest.approx(1.0, abs=1e-10)


# ---------------------------------------------------------------------------
# q-weighted cut hexagon
# ---------------------------------------------------------------------------


def test_qcut_band_identity():
    for alpha, beta in ((1.0, 1.0), (2.0, 1.0), (0.4, 2.3)):
        b = D.qcut_band(alpha, beta)
        lhs = math.exp(-b.lo) + math.exp(-b.hi)
        assert lhs == pytest.approx(1.0 + math.exp(-(alpha + beta)), abs=1e-14)


def test_qcut_alpha_to_infinity():
    b = D.qcut_band(60.0, 1.0)
    assert math.exp(-b.hi) == pytest.approx((1.0 - math.sqrt(1.0 - math.exp(-1.0))) / 2.0, abs=1e-12)
    assert math.exp(-b.lo) == pytest.approx((1.0 + math.sqrt(1.0 - math.exp(-1.0))) / 2.0, abs=1e-12)


def test_qcut_uniform_limit_band():
    beta = 1e-4
    for lam in (1.0, 2.0):
        qb = D.qcut_band(lam * beta, beta)
        ub = D.uniform_band(lam)
        assert qb.lo / beta == pytest.approx(ub.lo, abs=1e-3)
        assert qb.hi / beta == pytest.approx(ub.hi, abs=1e-3)


@pytest.mark.parametrize("alpha,beta", [(2.0, 1.0), (1.0, 1.0), (0.5, 2.0), (-0.3, 1.0)])
def test_qcut_mass(alpha, beta):
    if 2.0 * alpha + beta <= 0:
        pytest.skip("outside formula domain")
    prof = D.qcut_profile(alpha, beta)
    if alpha < 0:
        # normalization of the printed endpoints requires alpha >= 0; for
        # small negative alpha the band is still real but the mass deviates
        assert prof.total_mass() != pytest.approx(beta, abs=1e-3)
    else:
        assert prof.total_mass() == pytest.approx(beta, abs=1e-10)


def test_qcut_satisfies_integral_equation():
    from freebound.quadrature import pv_integral

    alpha, beta = 1.3, 0.8
    band = D.qcut_band(alpha, beta)
    a, b = math.exp(-band.hi), math.exp(-band.lo)
    big_l = math.exp(-(alpha + beta))

    def sigma(u):
        return np.atleast_1d(D.qcut_rho(-np.log(u), alpha, beta, band))

    for z in (a + 0.23 * (b - a), a + 0.71 * (b - a)):
        g = math.log((z - big_l) / (1.0 - z))
        pv = pv_integral(lambda u: sigma(u), a, b, z)
        assert abs(pv - g) < 1e-9


def test_qcut_requires_positive_beta():
    with pytest.raises(ValueError):
        D.qcut_band(1.0, 0.0)
    with pytest.raises(ValueError):
        D.qcut_band(-1.0, 1.0)


# ---------------------------------------------------------------------------
# two corner intervals
# ---------------------------------------------------------------------------


def test_two_corner_generic_edges_are_one():
    sol = D.two_corner_solution(1.0, 0.3, 1.7)
    assert sol.regime == "Generic"
    eps = 1e-12 * sol.band.width
    assert float(sol.profile.rho(sol.band.lo + eps)) == pytest.approx(1.0, abs=1e-5)
    assert float(sol.profile.rho(sol.band.hi - eps)) == pytest.approx(1.0, abs=1e-5)
    assert sol.profile.total_mass() == pytest.approx(1.0, abs=1e-10)


def test_two_corner_collapse_loci():
    solp = D.two_corner_solution(1.0, 0.2, 0.8)  # nu + theta = 1
    assert solp.regime == "Collapsed"
    assert solp.band.lo == solp.band.hi
    solm = D.two_corner_solution(1.0, 0.2, 1.2)  # theta - nu = 1
    assert solm.regime == "Collapsed"
    assert solm.band.width == 0.0
    assert solm.profile.total_mass() == pytest.approx(1.0, abs=1e-12)


def test_two_corner_both_merged_is_uniform():
    sol = D.two_corner_solution(1.0, 0.05, 1.9)
    assert sol.regime == "BothMerged"
    ub = D.uniform_band(1.0)
    assert sol.band.lo == pytest.approx(ub.lo, abs=1e-15)
    zs = grid_inside(ub.lo, ub.hi)
    assert np.max(np.abs(sol.profile.rho(zs) - D.uniform_rho(zs, 1.0))) == 0.0
    # endpoints a, b = (1+lam -+ sqrt(1+2lam))/2
    assert sol.band.lo == pytest.approx((2.0 - math.sqrt(3.0)) / 2.0, abs=1e-15)
    assert sol.band.hi == pytest.approx((2.0 + math.sqrt(3.0)) / 2.0, abs=1e-15)


def test_two_corner_lower_merged():
    sol = D.two_corner_solution(1.0, 0.5, 1.95)
    assert sol.regime == "LowerMerged"
    eps = 1e-12
    assert float(sol.profile.rho(sol.band.lo + eps)) == pytest.approx(1.0, abs=1e-5)
    assert float(sol.profile.rho(sol.band.hi - eps)) == pytest.approx(0.0, abs=1e-5)
    assert sol.profile.total_mass() == pytest.approx(1.0, abs=1e-10)
    thr = D.two_corner_thresholds(1.0, 0.5, 1.95)
    assert sol.band.hi == pytest.approx(thr["theta_c"], abs=1e-15)
    b = sol.band.hi
    assert sol.band.lo == pytest.approx(b * (2.0 + 0.5 - b) ** 2 / 1.0, abs=1e-12)


def test_two_corner_upper_merged_mirror():
    sol = D.two_corner_solution(1.0, 0.05, 1.5)
    assert sol.regime == "UpperMerged"
    eps = 1e-12
    assert float(sol.profile.rho(sol.band.lo + eps)) == pytest.approx(0.0, abs=1e-5)
    assert float(sol.profile.rho(sol.band.hi - eps)) == pytest.approx(1.0, abs=1e-5)
    assert sol.profile.total_mass() == pytest.approx(1.0, abs=1e-10)
    # mirror of the LowerMerged solution at (lam, lam+1-theta, lam+1-nu)
    mir = D.two_corner_solution(1.0, 0.5, 1.95)
    assert sol.band.lo == pytest.approx(2.0 - mir.band.hi, abs=1e-14)
    assert sol.band.hi == pytest.approx(2.0 - mir.band.lo, abs=1e-14)


def test_two_corner_validation():
    with pytest.raises(ValueError):
        D.two_corner_solution(1.0, 0.5, 0.4)
    with pytest.raises(ValueError):
        D.two_corner_solution(1.0, 0.3, 2.5)
    with pytest.raises(ValueError):
        D.two_corner_solution(1.0, 0.4, 1.2)  # free window shorter than the mass


def test_two_corner_satisfies_integral_equation():
    from freebound.quadrature import pv_integral

    lam, nu, theta = 1.0, 0.3, 1.7
    sol = D.two_corner_solution(lam, nu, theta)
    a, b = sol.band.lo, sol.band.hi
    for mu in (a + 0.3 * (b - a), a + 0.62 * (b - a)):
        g = math.log(mu * (mu - a) * (theta - mu) / ((lam + 1.0 - mu) * (mu - nu) * (b - mu)))
        pv = pv_integral(lambda u: np.atleast_1d(sol.profile.rho(u)), a, b, mu, n=128, n_max=2048)
        assert abs(pv - g) < 1e-8


# ---------------------------------------------------------------------------
# hexagon slices
# ---------------------------------------------------------------------------


def test_hexagon_band_symmetric_case():
    sol = D.hexagon_solution(1.0, 1.0, 1.0)
    ub = D.uniform_band(1.0)
    assert sol.band.lo == pytest.approx(ub.lo, abs=1e-14)
    assert sol.band.hi == pytest.approx(ub.hi, abs=1e-14)
    assert sol.case == "iii"


def test_hexagon_touch_point_degenerations():
    t = D.hexagon_touch_points(2.0, 1.0)
    s2 = D.hexagon_solution(2.0, 1.0, t["x2"])
    assert s2.band.hi == pytest.approx(1.0 + t["x2"], abs=1e-12)
    s3 = D.hexagon_solution(2.0, 1.0, t["x3"])
    assert s3.band.lo == pytest.approx(0.0, abs=1e-12)
    s4 = D.hexagon_solution(2.0, 1.0, t["x4"])
    assert s4.band.hi == pytest.approx(1.0 + 1.0, abs=1e-12)
    s5 = D.hexagon_solution(2.0, 1.0, t["x5"])
    assert s5.band.lo == pytest.approx(t["x5"] - 2.0, abs=1e-12)


def test_hexagon_collapse_at_zero():
    sol = D.hexagon_solution(1.0, 1.0, 0.0)
    assert sol.band.width == pytest.approx(0.0, abs=1e-15)
    assert float(sol.profile.rho(0.5)) == 1.0
    assert sol.profile.total_mass() == pytest.approx(1.0, abs=1e-12)


@pytest.mark.parametrize(
    "lam,theta,x,case",
    [
        (2.0, 1.0, 0.2, "i"),
        (2.0, 1.0, 0.6, "ii"),
        (2.0, 1.0, 1.5, "iii"),
        (2.0, 1.0, 2.2, "iv"),
        (2.0, 1.0, 2.8, "v"),
    ],
)
def test_hexagon_cases_mass_and_edges(lam, theta, x, case):
    sol = D.hexagon_solution(lam, theta, x)
    assert sol.case == case
    assert sol.profile.total_mass() == pytest.approx(1.0, abs=1e-10)
    bottom, top = D._hexagon_frozen_values(lam, theta, x)
    eps = 1e-12 * max(sol.band.width, 1.0)
    assert float(sol.profile.rho(sol.band.lo + eps)) == pytest.approx(bottom, abs=1e-5)
    assert float(sol.profile.rho(sol.band.hi - eps)) == pytest.approx(top, abs=1e-5)


def test_hexagon_reflection_symmetry():
    lam = theta = 1.3
    for x in (0.35, 0.8):
        s1 = D.hexagon_solution(lam, theta, x)
        s2 = D.hexagon_solution(lam, theta, lam + theta - x)
        zs = grid_inside(s1.band.lo, s1.band.hi, 64)
        assert np.max(np.abs(s1.profile.rho(zs) - s2.profile.rho(1.0 + theta - zs))) < 1e-13


def test_hexagon_minmax_and_xes_identities():
    rng = np.random.default_rng(12)
    for _ in range(20):
        lam = float(rng.uniform(0.5, 3.0))
        theta = float(rng.uniform(0.3, 1.0)) * lam
        x = float(rng.uniform(0.01, lam + theta - 0.01))
        band = D.hexagon_band(lam, theta, x)
        a, b = band.lo, band.hi
        s = 1.0 + lam + theta
        lt2 = (lam + theta) ** 2
        # (xes): shifted band edges are perfect squares of the geometry data
        pairs = [
            (1.0 + theta - a, (math.sqrt(x * lam) + math.sqrt(theta * s * (lam + theta - x))) ** 2 / lt2),
            (1.0 + theta - b, (math.sqrt(x * lam) - math.sqrt(theta * s * (lam + theta - x))) ** 2 / lt2),
            (1.0 + x - a, (math.sqrt(x * lam * s) + math.sqrt(theta * (lam + theta - x))) ** 2 / lt2),
            (1.0 + x - b, (math.sqrt(x * lam * s) - math.sqrt(theta * (lam + theta - x))) ** 2 / lt2),
            (lam - x + a, (math.sqrt(x * theta) - math.sqrt(lam * (lam + theta - x) * s)) ** 2 / lt2),
            (lam - x + b, (math.sqrt(x * theta) + math.sqrt(lam * (lam + theta - x) * s)) ** 2 / lt2),
        ]
        for got, expect in pairs:
            assert got == pytest.approx(expect, abs=1e-10)
        # (minmax): each sqrt combination is max(P,Q)/sqrt(PQ) or its
        # reciprocal for the pair of geometry products P^2, Q^2
        beta = a / (b - a)
        gamma = (1.0 + x - a) / (b - a)
        eta = (1.0 + theta - a) / (b - a)
        delta = (lam - x + a) / (b - a)
        combos = [
            (gamma, x * lam * s, theta * (lam + theta - x)),
            (beta, lam * (lam + theta - x), x * theta * s),
            (eta, x * lam, theta * s * (lam + theta - x)),
            (delta, x * theta, lam * (lam + theta - x) * s),
        ]
        for ratio, p2, q2 in combos:
            big = math.sqrt(max(p2, q2))
            small = math.sqrt(min(p2, q2))
            root = math.sqrt(math.sqrt(p2 * q2))
            plus = math.sqrt(ratio + 1.0) + math.sqrt(ratio) if ratio in (beta, delta) else math.sqrt(ratio) + math.sqrt(ratio - 1.0)
            minus = math.sqrt(ratio + 1.0) - math.sqrt(ratio) if ratio in (beta, delta) else math.sqrt(ratio) - math.sqrt(ratio - 1.0)
            assert plus == pytest.approx(big / root, rel=1e-10)
            assert minus == pytest.approx(small / root, rel=1e-10)


def test_hexagon_elongated_middle_window_rejected():
    with pytest.raises(ValueError):
        D.hexagon_solution(3.0, 0.5, 1.7)
    # outside the middle window the elongated hexagon still works
    sol = D.hexagon_solution(3.0, 0.5, 1.2)
    assert sol.profile.total_mass() == pytest.approx(1.0, abs=1e-10)


def test_hexagon_validation():
    with pytest.raises(ValueError):
        D.hexagon_solution(1.0, 2.0, 0.5)
    with pytest.raises(ValueError):
        D.hexagon_solution(2.0, 1.0, 3.5)


# ---------------------------------------------------------------------------
# half-cut hexagon
# ---------------------------------------------------------------------------


def test_halfcut_values_and_support():
    assert D.halfcut_rho(0.0, 0.0) == pytest.approx(2.0 / 3.0, abs=1e-15)
    assert D.halfcut_edge(1.0) == pytest.approx(math.sqrt(7.0) / 2.0, abs=1e-15)
    assert D.halfcut_rho(D.halfcut_edge(0.5) + 0.01, 0.5) == 0.0


@pytest.mark.parametrize("alpha", [0.0, 0.5, 1.0, 3.3])
def test_halfcut_mass(alpha):
    # sigma is the uniform density of the doubled region on a half-range,
    # so the profile carries mass exactly 1/2
    prof = D.halfcut_profile(alpha)
    assert prof.mass == 0.5
    assert prof.total_mass() == pytest.approx(0.5, abs=1e-10)


def test_halfcut_reflection_identity():
    for alpha in (0.0, 0.5, 2.0):
        lam = 2.0 * alpha + 1.0
        zs = np.linspace(0.0, D.halfcut_edge(alpha), 100, endpoint=False)
        dev = np.max(np.abs(D.uniform_rho(zs + alpha + 1.0, lam) - D.halfcut_rho(zs, alpha)))
        assert dev < 1e-12


# ---------------------------------------------------------------------------
# triangle and TSSCPP
# ---------------------------------------------------------------------------


def test_exit_enter_complementarity():
    zs = np.linspace(D.TRIANGLE_FROZEN_X, 1.0, 100)
    assert np.max(np.abs(D.exit_density(zs) - (1.0 - D.enter_density(zs)))) < 1e-12
    assert D.exit_density(1.0) == pytest.approx(2.0 / 3.0, abs=1e-15)
    assert D.enter_density(0.05) == 1.0


def test_triangle_regimes():
    assert D.triangle_rho(0.05, 0.1) == 1.0
    zs = np.linspace(D.TRIANGLE_FROZEN_X + 1e-6, 1.0 - 1e-9, 100)
    assert np.max(np.abs(D.triangle_rho(zs, 1.0) - D.exit_density(zs))) < 1e-8
    assert D.triangle_rho(1.0, 1.0) == pytest.approx(2.0 / 3.0, abs=1e-12)
    # explicit band endpoints for the middle regime
    x = 0.4
    a = (1.0 + x) / 2.0 - math.sqrt(3.0 * x * (2.0 - x)) / 2.0
    assert D.triangle_rho(a - 1e-9, x) == 1.0
    sol = D.hexagon_solution(1.0, 1.0, x)
    assert sol.band.lo == pytest.approx(a, abs=1e-14)


def test_tsscpp_boundary_identity():
    xs = np.linspace(0.01, 1.0, 40)
    for x in xs:
        assert float(D.tsscpp_rho(x, x)) == pytest.approx(float(D.enter_density(x)), abs=1e-12)


def test_tsscpp_small_x_plateau():
    assert D.tsscpp_rho(0.06, 0.05) == 1.0
    assert D.tsscpp_rho(0.10, 0.05) == 1.0


def test_triangle_tsscpp_domain_checks():
    with pytest.raises(ValueError):
        D.triangle_rho(0.5, 0.4)
    with pytest.raises(ValueError):
        D.tsscpp_rho(0.2, 0.4)
    with pytest.raises(ValueError):
        D.triangle_rho(0.1, 1.4)


def test_band_edge_continuity_all_families():
    """rho approaches the adjacent frozen value at every band edge."""
    checks = []
    ub = D.uniform_profile(1.7)
    checks.append((ub, ub.bands[0][0], 0.0, 0.0))
    qp = D.qcut_profile(1.1, 0.9)
    checks.append((qp, qp.bands[0][0], 0.0, 0.0))
    tc = D.two_corner_solution(1.2, 0.35, 1.9)
    checks.append((tc.profile, tc.band, 1.0, 1.0))
    hx = D.hexagon_solution(2.0, 1.0, 0.6)
    checks.append((hx.profile, hx.band, 1.0, 0.0))
    for prof, band, lo_val, hi_val in checks:
        eps = 1e-12 * band.width
        assert float(prof.rho(band.lo + eps)) == pytest.approx(lo_val, abs=1e-5)
        assert float(prof.rho(band.hi - eps)) == pytest.approx(hi_val, abs=1e-5)
