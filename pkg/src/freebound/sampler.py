"""Monte-Carlo sampling of endpoint configurations, Prob(m) ~ Z(m).

Single-site Metropolis: propose m_i -> m_i +- 1 uniformly over (site,
direction); moves that break monotonicity, land in a forbidden interval or
vacate a fully packed site are rejected; the acceptance ratio uses the
multiplicative weight formula, so one proposal costs O(k) floating point.

The inner loop lives in the compiled extension ``freebound._mcmc`` when it
was built; ``freebound._mcmc_py`` is a drop-in pure-Python fallback (same
generator, same stream).  Set FREEBOUND_PURE=1 to force the fallback;
``KERNEL_COMPILED`` records what is active.  benchmarks/bench_mcmc.py
compares the two.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator

import numpy as np

from .enumeration import (
    CUT_HEXAGON,
    HALF_CUT_HEXAGON,
    EndpointConfig,
    RegionSpec,
    exact_distribution,
)
from .rng import Xoshiro256StarStar

if os.environ.get("FREEBOUND_PURE"):
    from . import _mcmc_py as _kernel
else:
    try:
        from . import _mcmc as _kernel  # type: ignore[attr-defined]
    except ImportError:
        from . import _mcmc_py as _kernel

KERNEL_COMPILED: bool = bool(_kernel.COMPILED)

_FAMILY = {CUT_HEXAGON: 0, HALF_CUT_HEXAGON: 2}


@dataclass
class ChainState:
    """Snapshot of a running chain."""

    config: EndpointConfig
    log_weight: float
    seed: int
    step_count: int


def _masks(region: RegionSpec) -> tuple[np.ndarray, np.ndarray]:
    n_sites = region.num_sites
    forbidden = np.zeros(n_sites, dtype=np.uint8)
    packed = np.zeros(n_sites, dtype=np.uint8)
    for s in range(n_sites):
        m = s + region.site_min
        forbidden[s] = 1 if region.site_forbidden(m) else 0
        packed[s] = 1 if region.site_packed(m) else 0
    return forbidden, packed


def initial_config(region: RegionSpec) -> EndpointConfig:
    """Valid starting configuration: packed sites plus evenly spread
    endpoints over the remaining allowed sites."""
    pinned = region.packed_sites()
    movable = [m for m in region.allowed_sites() if not region.site_packed(m)]
    need = region.k - len(pinned)
    if need < 0 or need > len(movable):
        raise ValueError("region admits no valid configuration")
    if need:
        idx = np.linspace(0, len(movable) - 1, need)
        chosen = []
        for v in idx:
            j = int(round(float(v)))
            while movable[j] in chosen:
                j += 1
            chosen.append(movable[j])
    else:
        chosen = []
    return EndpointConfig(tuple(sorted(pinned + chosen)))


def _family_params(region: RegionSpec) -> tuple[int, float]:
    family = _FAMILY[region.kind]
    if region.kind == CUT_HEXAGON and region.q != 1:
        family = 1
        lnq = math.log(float(region.q))
    else:
        lnq = 0.0
    return family, lnq


def log_weight(region: RegionSpec, m) -> float:
    """Floating-point log of the multiplicative weight, matching the ratio
    arithmetic of the kernels (additive constants fixed per region)."""
    cfg = m if isinstance(m, EndpointConfig) else EndpointConfig(tuple(m))
    k = region.k
    n = region.n
    ms = cfg.m
    if region.kind == HALF_CUT_HEXAGON:
        out = 0.0
        for i in range(k):
            out -= math.lgamma(n + ms[i] + k) + math.lgamma(n - ms[i] + k + 1)
            for j in range(i, k):
                out += math.log(ms[i] + ms[j] - 1)
                if j > i:
                    out += math.log(ms[j] - ms[i])
        return out
    big_n = n + k
    if region.q == 1:
        out = 0.0
        for i in range(k):
            out -= math.lgamma(ms[i] + 1) + math.lgamma(big_n - ms[i])
            for j in range(i + 1, k):
                out += math.log(ms[j] - ms[i])
        return out
    lnq = math.log(float(region.q))
    expo = sum(v * (v - 2 * k + 1) for v in ms) / 2.0
    out = expo * lnq
    for i in range(k):
        for j in range(i + 1, k):
            out += ms[i] * lnq + math.log(abs(math.expm1((ms[j] - ms[i]) * lnq)))
        for a in (ms[i], big_n - ms[i] - 1):
            for s in range(1, a + 1):
                out -= math.log(abs(math.expm1(s * lnq)))
    return out


def run_kernel(
    region: RegionSpec,
    steps: int,
    burnin: int,
    seed: int,
    start: EndpointConfig | None = None,
    record_counts: bool = True,
    sample_every: int = 0,
    max_samples: int = 0,
):
    """Low-level single call into the Metropolis kernel.

    Returns (final_config, site_counts, samples, info) where info carries
    acceptance and incremental-log-weight bookkeeping.
    """
    if not steps > burnin >= 0:
        raise ValueError("need steps > burnin >= 0")
    family, lnq = _family_params(region)
    cfg = start or initial_config(region)
    if not cfg.valid_for(region):
        raise ValueError("invalid starting configuration")
    forbidden, packed = _masks(region)
    m = np.array([v - region.site_min for v in cfg.m], dtype=np.int64)
    site_counts = np.zeros(region.num_sites, dtype=np.int64)
    samples = np.zeros((max_samples, region.k), dtype=np.int32)
    lw0 = log_weight(region, cfg)
    accepts, recorded, n_samples, lw_delta = _kernel.run_chain(
        family,
        region.n,
        region.k,
        lnq,
        m,
        forbidden,
        packed,
        steps,
        burnin,
        seed,
        site_counts,
        record_counts,
        sample_every,
        samples,
    )
    final = EndpointConfig(tuple(int(v) + region.site_min for v in m))
    info = {
        "accepts": int(accepts),
        "recorded": int(recorded),
        "log_weight_start": lw0,
        "log_weight_incremental": lw0 + lw_delta,
        "log_weight_final": log_weight(region, final),
        "state": ChainState(final, lw0 + lw_delta, seed, steps),
    }
    return final, site_counts, samples[: int(n_samples)], info


def mcmc_run(
    region: RegionSpec, steps: int, burnin: int = 0, seed: int = 0,
    chunk: int = 1 << 15,
) -> Iterator[EndpointConfig]:
    """Stream every post-burn-in configuration of the Metropolis chain.

    Deterministic in (seed, parameters); chunked through the kernel so the
    whole trajectory is never materialized.
    """
    if not steps > burnin >= 0:
        raise ValueError("need steps > burnin >= 0")
    family, lnq = _family_params(region)
    cfg = initial_config(region)
    forbidden, packed = _masks(region)
    m = np.array([v - region.site_min for v in cfg.m], dtype=np.int64)
    site_counts = np.zeros(region.num_sites, dtype=np.int64)
    done = 0
    # one kernel invocation per chunk, with the RNG threaded through by
    # re-seeding from its own output to stay a single deterministic stream
    rng = Xoshiro256StarStar(seed)
    while done < steps:
        todo = min(chunk, steps - done)
        sub_burn = max(0, min(burnin - done, todo))
        samples = np.zeros((todo - sub_burn, region.k), dtype=np.int32)
        sub_seed = rng.next_u64()
        _, _, got, _ = _kernel.run_chain(
            family,
            region.n,
            region.k,
            lnq,
            m,
            forbidden,
            packed,
            todo,
            sub_burn,
            sub_seed,
            site_counts,
            False,
            1,
            samples,
        )
        for row in samples[: int(got)]:
            yield EndpointConfig(tuple(int(v) + region.site_min for v in row))
        done += todo


# ---------------------------------------------------------------------------
# histograms of scaled endpoint positions
# ---------------------------------------------------------------------------


@dataclass
class Histogram:
    """Endpoint histogram in scaled units mu = m/k (uniform) or mu = m*eps
    (q-weighted), normalized so that a fully packed stretch has height 1."""

    bin_edges: np.ndarray
    counts: np.ndarray
    samples: int
    spacing: float

    @property
    def normalization(self) -> float:
        """Total mass the heights integrate to (k endpoints x spacing)."""
        if self.samples == 0:
            return 0.0
        return float(self.counts.sum()) * self.spacing / self.samples

    @property
    def centers(self) -> np.ndarray:
        return 0.5 * (self.bin_edges[:-1] + self.bin_edges[1:])

    @property
    def widths(self) -> np.ndarray:
        return np.diff(self.bin_edges)

    def heights(self) -> np.ndarray:
        if self.samples == 0:
            raise ValueError("empty histogram")
        return self.counts * self.spacing / (self.samples * self.widths)

    def l1_distance(self, rho, refine: int = 8) -> float:
        """integral |empirical - rho| over the histogram range, with the
        reference averaged over each bin."""
        h = self.heights()
        total = 0.0
        for i, (lo, hi) in enumerate(zip(self.bin_edges[:-1], self.bin_edges[1:])):
            xs = np.linspace(lo, hi, refine + 1)
            xs = 0.5 * (xs[:-1] + xs[1:])
            ref = float(np.mean(rho(xs)))
            total += abs(h[i] - ref) * (hi - lo)
        return total


def scaled_spacing(region: RegionSpec) -> float:
    if region.kind == CUT_HEXAGON and region.q != 1:
        q = float(region.q)
        if q >= 1:
            raise ValueError("scaled histograms require q < 1 (reflect for q > 1)")
        return -math.log(q)
    return 1.0 / region.k


def default_bins(samples: int) -> int:
    return max(10, min(400, int(round(math.sqrt(max(samples, 1))))))


def histogram_from_counts(region: RegionSpec, site_counts: np.ndarray, samples: int,
                          bins: int) -> Histogram:
    spacing = scaled_spacing(region)
    top = (region.site_max + 1) * spacing
    edges = np.linspace(0.0, top, bins + 1)
    counts = np.zeros(bins, dtype=np.int64)
    for s, c in enumerate(site_counts):
        if c:
            mu = (s + region.site_min) * spacing
            b = min(int(mu / top * bins), bins - 1)
            counts[b] += int(c)
    return Histogram(edges, counts, samples, spacing)


def empirical_density(samples: Iterable[EndpointConfig], bins: int,
                      region: RegionSpec) -> Histogram:
    """Histogram a stream of configurations (same result as the fused
    site-count path for identical bins)."""
    if bins < 1:
        raise ValueError("bins >= 1")
    spacing = scaled_spacing(region)
    top = (region.site_max + 1) * spacing
    edges = np.linspace(0.0, top, bins + 1)
    counts = np.zeros(bins, dtype=np.int64)
    n = 0
    for cfg in samples:
        n += 1
        for m in cfg.m:
            b = min(int(m * spacing / top * bins), bins - 1)
            counts[b] += 1
    if n == 0:
        raise ValueError("empty sample stream")
    return Histogram(edges, counts, n, spacing)


def endpoint_histogram(region: RegionSpec, steps: int, burnin: int, seed: int,
                       bins: int | None = None) -> tuple[Histogram, dict]:
    """Run the chain and histogram every post-burn-in step (fused path)."""
    final, site_counts, _, info = run_kernel(
        region, steps, burnin, seed, record_counts=True
    )
    if bins is None:
        bins = default_bins(info["recorded"])
    return histogram_from_counts(region, site_counts, info["recorded"], bins), info


# ---------------------------------------------------------------------------
# exact sampling at enumerable sizes
# ---------------------------------------------------------------------------


def exact_sampler(region: RegionSpec, count: int, seed: int = 0) -> list[EndpointConfig]:
    """i.i.d. draws by inverse CDF over the exact distribution."""
    dist = exact_distribution(region)
    cum = []
    acc = Fraction(0)
    for w in dist.weights:
        acc += w
        cum.append(acc)
    total = dist.total
    rng = Xoshiro256StarStar(seed)
    out = []
    for _ in range(count):
        u = Fraction(rng.next_u64(), 1 << 64) * total
        lo, hi = 0, len(cum) - 1
        while lo < hi:
            mid = (lo + hi) // 2
            if cum[mid] > u:
                hi = mid
            else:
                lo = mid + 1
        out.append(dist.configs[lo])
    return out
