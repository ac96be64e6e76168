import math

import numpy as np
import pytest

from freebound import density as D
from freebound.quadrature import pv_integral
from freebound.resolvent import (
    FORBIDDEN,
    PACKED,
    ResolventProblem,
    kernel_identities_check,
    solve,
)


def equation_residual(sol, points):
    """Plug the solved density back into the singular integral equation."""
    eng = sol._engine
    worst = 0.0
    for m in points:
        i = eng._band_of(m)
        if i is None:
            continue
        wt = (m - eng.edges[2 * i]) / (eng.edges[2 * i + 1] - eng.edges[2 * i])
        g = eng._band_g_scalar(i, wt)
        pv = sum(
            pv_integral(lambda u: np.atleast_1d(sol.rho(u)), b.lo, b.hi, m, n=96, n_max=512, tol=1e-11)
            for b in sol.bands
        )
        worst = max(worst, abs(pv - g))
    return worst


def large_z_coefficients(sol, radius=1e3, modes=16):
    """Laurent coefficients of F on |z| = radius by Fourier extraction."""
    phis = 2.0 * math.pi * np.arange(modes) / modes
    vals = np.array([sol.resolvent_at(radius * complex(math.cos(p), math.sin(p))) for p in phis])
    coeffs = np.fft.fft(vals) / modes
    # F(R e^{i phi}) = sum_j c_j R^j e^{i j phi} -> c_j = coeffs[j] / R^j
    c1 = coeffs[1] / radius
    c0 = coeffs[0]
    cm1 = coeffs[-1] * radius
    return complex(c1), complex(c0), complex(cm1)


def test_kernel_identities():
    rep = kernel_identities_check()
    assert rep.ok
    assert rep.max_residual < 1e-9


def test_uniform_solve_matches_closed_form():
    sol = solve(ResolventProblem(lam=1.0))
    ub = D.uniform_band(1.0)
    assert sol.bands[0].lo == pytest.approx(ub.lo, abs=1e-10)
    assert sol.bands[0].hi == pytest.approx(ub.hi, abs=1e-10)
    zs = ub.lo + ub.width * (np.arange(9) + 0.5) / 9
    assert np.max(np.abs(sol.rho(zs) - D.uniform_rho(zs, 1.0))) < 1e-10
    assert sol.mass() == pytest.approx(1.0, abs=1e-8)


def test_two_corner_solve_matches_closed_form():
    lam, nu, theta = 1.0, 0.3, 1.7
    tc = D.two_corner_solution(lam, nu, theta)
    sol = solve(
        ResolventProblem(lam=lam, intervals=((FORBIDDEN, 0.0, nu), (FORBIDDEN, theta, lam + 1.0)))
    )
    assert sol.bands[0].lo == pytest.approx(tc.band.lo, abs=1e-6)
    assert sol.bands[0].hi == pytest.approx(tc.band.hi, abs=1e-6)
    zs = tc.band.lo + tc.band.width * (np.arange(11) + 0.5) / 11
    assert np.max(np.abs(sol.rho(zs) - tc.profile.rho(zs))) < 1e-4
    assert sol.plateaus == [(pytest.approx(0.3), pytest.approx(tc.band.lo)),
                            (pytest.approx(tc.band.hi), pytest.approx(1.7))]


def test_merged_regime_structure_flip():
    lam, nu, theta = 1.0, 0.5, 1.95
    tc = D.two_corner_solution(lam, nu, theta)
    assert tc.regime == "LowerMerged"
    sol = solve(
        ResolventProblem(lam=lam, intervals=((FORBIDDEN, 0.0, nu), (FORBIDDEN, theta, lam + 1.0)))
    )
    assert sol.structure == [(True, False)]
    assert sol.bands[0].lo == pytest.approx(tc.band.lo, abs=1e-6)
    assert sol.bands[0].hi == pytest.approx(tc.band.hi, abs=1e-6)
    zs = tc.band.lo + tc.band.width * (np.arange(9) + 0.5) / 9
    assert np.max(np.abs(sol.rho(zs) - tc.profile.rho(zs))) < 1e-4


def test_packed_interval():
    sol = solve(ResolventProblem(lam=1.0, intervals=((PACKED, 0.9, 1.1),)))
    assert len(sol.bands) == 2
    # symmetric layout -> mirrored bands
    b0, b1 = sol.bands
    assert b0.lo == pytest.approx(2.0 - b1.hi, abs=1e-10)
    assert b0.hi == pytest.approx(2.0 - b1.lo, abs=1e-10)
    assert sol.mass() == pytest.approx(1.0, abs=1e-8)
    # all four edges adjoin density-0 regions
    eps = 1e-9
    for b in sol.bands:
        assert float(sol.rho(np.array([b.lo + eps]))[0]) < 1e-3
        assert float(sol.rho(np.array([b.hi - eps]))[0]) < 1e-3
    assert equation_residual(sol, (0.4, 0.6, 1.5)) < 1e-7
    # density 1 inside the packed interval, 0 in the gaps
    assert float(sol.rho(1.0)) == 1.0
    assert float(sol.rho(np.array([(b0.hi + 0.9) / 2.0]))[0]) == 0.0


def test_interior_forbidden_interval():
    sol = solve(ResolventProblem(lam=1.0, intervals=((FORBIDDEN, 0.8, 1.2),)))
    assert len(sol.bands) == 2
    assert sol.structure == [(False, True), (True, False)]
    # plateaus at density 1 between the bands and the obstacle
    assert len(sol.plateaus) == 2
    assert sol.mass() == pytest.approx(1.0, abs=1e-7)
    assert equation_residual(sol, (0.35, 1.62)) < 1e-7
    b0, b1 = sol.bands
    # edge limits, sqrt-extrapolated from safe interior distances: rho = 1 at
    # the plateau-adjacent inner edges, 0 at the outer ends
    for band, where, expected in ((b0, "lo", 0.0), (b0, "hi", 1.0), (b1, "lo", 1.0), (b1, "hi", 0.0)):
        d = 1e-5 * band.width
        if where == "lo":
            r1 = float(sol.rho(np.array([band.lo + d]))[0])
            r4 = float(sol.rho(np.array([band.lo + 4 * d]))[0])
        else:
            r1 = float(sol.rho(np.array([band.hi - d]))[0])
            r4 = float(sol.rho(np.array([band.hi - 4 * d]))[0])
        assert 2.0 * r1 - r4 == pytest.approx(expected, abs=1e-3)
    # symmetric layout
    assert b0.lo == pytest.approx(2.0 - b1.hi, abs=1e-7)


def test_large_z_asymptotics():
    sol = solve(ResolventProblem(lam=1.4, intervals=((FORBIDDEN, 0.6, 1.0),)))
    mass_t = 1.0 - sum(hi - lo for lo, hi in sol.plateaus)
    c1, c0, cm1 = large_z_coefficients(sol)
    assert abs(c1) < 1e-8
    assert abs(c0) < 1e-8
    assert abs(cm1 - mass_t) < 1e-8


def test_solver_residual_reporting():
    sol = solve(ResolventProblem(lam=1.0))
    assert sol.residuals["max_moment"] < 1e-10
    assert abs(sol.residuals["mass"]) < 1e-10
    assert sol.residuals["node_doubling_drift"] < 1e-10
    assert not sol.merged


def test_problem_validation():
    with pytest.raises(ValueError):
        ResolventProblem(lam=-1.0)
    with pytest.raises(ValueError):
        ResolventProblem(lam=1.0, intervals=(("bogus", 0.1, 0.2),))
    with pytest.raises(ValueError):
        ResolventProblem(lam=1.0, intervals=((FORBIDDEN, 0.5, 0.2),))
    with pytest.raises(ValueError):
        ResolventProblem(lam=1.0, intervals=((FORBIDDEN, 0.1, 0.5), (PACKED, 0.4, 0.6)))
    with pytest.raises(ValueError):
        ResolventProblem(lam=1.0, target_mass=0.0)


def test_pv_integral_spec_examples():
    assert pv_integral(lambda u: np.ones_like(u), -1.0, 1.0, 0.0) == pytest.approx(0.0, abs=1e-12)
    w, beta = 0.3, 1.0
    val = pv_integral(lambda u: 1.0 / ((beta + u) * np.sqrt(u * (1.0 - u))), 0.0, 1.0, w)
    assert val == pytest.approx(math.pi / ((beta + w) * math.sqrt(beta * (beta + 1.0))), abs=1e-10)
    # first log integral pinned at beta -> 0:  -2 pi log 2
    from freebound.quadrature import tanh_sinh

    val = tanh_sinh(lambda v, omv: np.log(v) / np.sqrt(v * omv))
    assert val == pytest.approx(-2.0 * math.pi * math.log(2.0), abs=1e-10)


def test_upper_and_both_merged_oracle_equivalence():
    for nu, theta in ((0.05, 1.5), (0.03, 1.95)):
        tc = D.two_corner_solution(1.0, nu, theta)
        sol = solve(
            ResolventProblem(lam=1.0, intervals=((FORBIDDEN, 0.0, nu), (FORBIDDEN, theta, 2.0)))
        )
        assert abs(sol.bands[0].lo - tc.band.lo) < 1e-6
        assert abs(sol.bands[0].hi - tc.band.hi) < 1e-6
        zs = tc.band.lo + tc.band.width * (np.arange(9) + 0.5) / 9
        assert np.max(np.abs(sol.rho(zs) - tc.profile.rho(zs))) < 1e-4


def test_mixed_forbidden_and_packed_layout():
    sol = solve(
        ResolventProblem(lam=1.2, intervals=((FORBIDDEN, 0.0, 0.25), (PACKED, 1.0, 1.15)))
    )
    assert sol.structure == [(True, False), (False, False)]
    assert sol.mass() == pytest.approx(1.0, abs=1e-7)
    assert equation_residual(sol, (0.5, 0.9, 1.5, 2.0)) < 1e-7


def test_three_band_layout():
    sol = solve(
        ResolventProblem(lam=2.0, intervals=((FORBIDDEN, 0.7, 0.9), (FORBIDDEN, 1.8, 2.1)))
    )
    assert len(sol.bands) == 3
    assert sol.mass() == pytest.approx(1.0, abs=1e-7)
    assert equation_residual(sol, (0.4, 1.3, 2.5)) < 1e-7
