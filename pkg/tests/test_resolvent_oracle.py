"""Independent variational oracle for a layout with no closed form.

The equilibrium problem (minimize the rate energy over densities 0 <= rho <=
1 with unit mass, rho pinned to 0 on the forbidden interval) is solved by
projected gradient descent on a grid, with no shared machinery with the
resolvent solver; band edges and plateau values must agree.
"""

import math

import numpy as np

from freebound.resolvent import FORBIDDEN, ResolventProblem, solve


def variational_density(lam, forbidden, n=1200, iters=3000, lr=0.5):
    top = lam + 1.0
    h = top / n
    mu = (np.arange(n) + 0.5) * h
    v = mu * np.log(mu) - mu + (top - mu) * np.log(top - mu) - (top - mu)
    kmat = np.log(np.abs(mu[:, None] - mu[None, :]) + np.eye(n))
    np.fill_diagonal(kmat, math.log(h) - 1.5)
    blocked = np.zeros(n, dtype=bool)
    for lo, hi in forbidden:
        blocked |= (mu > lo) & (mu < hi)
    rho = np.full(n, 1.0 / top)
    rho[blocked] = 0.0
    target = 1.0 / h

    def project(r):
        lo_t, hi_t = -4.0, 4.0
        for _ in range(60):
            tau = 0.5 * (lo_t + hi_t)
            s = np.clip(r - tau, 0.0, 1.0)
            s[blocked] = 0.0
            if s.sum() > target:
                lo_t = tau
            else:
                hi_t = tau
        s = np.clip(r - 0.5 * (lo_t + hi_t), 0.0, 1.0)
        s[blocked] = 0.0
        return s

    for _ in range(iters):
        grad = v - h * (kmat @ rho)
        rho = project(rho - lr * grad)
    return mu, rho, h


def liquid_runs(mu, rho, blocked_mask, eps=5e-3):
    liquid = (~blocked_mask) & (rho > eps) & (rho < 1.0 - eps)
    idx = np.where(liquid)[0]
    runs = np.split(idx, np.where(np.diff(idx) > 1)[0] + 1)
    return [(mu[r[0]], mu[r[-1]]) for r in runs if len(r) > 3]


def test_interior_forbidden_against_variational_oracle():
    lam = 1.0
    forb = [(0.8, 1.2)]
    mu, rho, h = variational_density(lam, forb)
    blocked = (mu > 0.8) & (mu < 1.2)
    runs = liquid_runs(mu, rho, blocked)
    assert len(runs) == 2
    sol = solve(ResolventProblem(lam=lam, intervals=((FORBIDDEN, 0.8, 1.2),)))
    for band, (lo, hi) in zip(sol.bands, runs):
        assert abs(band.lo - lo) < 3.0 * h
        assert abs(band.hi - hi) < 3.0 * h
    # plateau between band and obstacle saturates at 1 in the oracle too
    sel = (mu > sol.bands[0].hi + 2 * h) & (mu < 0.8 - 2 * h)
    assert np.all(rho[sel] > 0.995)
    # pointwise density agreement in the band interiors
    for band in sol.bands:
        sel = (mu > band.lo + 5 * h) & (mu < band.hi - 5 * h)
        dev = np.max(np.abs(np.asarray(sol.rho(mu[sel])) - rho[sel]))
        assert dev < 0.02
