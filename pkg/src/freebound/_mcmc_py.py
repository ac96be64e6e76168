"""Pure-Python Metropolis kernel (fallback for the compiled extension).

Same algorithm, proposal stream and arithmetic as the Cython kernel: one
random site, one random direction, one acceptance uniform per valid
proposal, weight ratios in O(k) floating point.
"""

from __future__ import annotations

import math

import numpy as np

from .rng import Xoshiro256StarStar

COMPILED = False

FAMILY_CUT_UNIFORM = 0
FAMILY_CUT_Q = 1
FAMILY_HALFCUT = 2


def run_chain(
    family: int,
    n_param: int,
    k: int,
    lnq: float,
    m: np.ndarray,
    forbidden: np.ndarray,
    packed: np.ndarray,
    steps: int,
    burnin: int,
    seed: int,
    site_counts: np.ndarray,
    record_counts: bool,
    sample_every: int,
    samples: np.ndarray,
):
    """Advance the chain; returns (accepts, recorded, n_samples, log_weight_delta).

    m holds site indices (0-based); 'forbidden'/'packed' are per-site masks.
    site_counts accumulates endpoint visits for every post-burn-in step when
    record_counts is set; samples receives a config snapshot every
    sample_every post-burn-in steps until full.
    """
    rng = Xoshiro256StarStar(seed)
    n_sites = forbidden.shape[0]
    mm = [int(v) for v in m]
    accepts = 0
    recorded = 0
    n_samples = 0
    max_samples = samples.shape[0]
    lw = 0.0
    n = n_param
    for step in range(steps):
        i = rng.below(k)
        up = rng.next_u64() & 1
        a = mm[i]
        t = a + 1 if up else a - 1
        ok = 0 <= t < n_sites and not forbidden[t] and not packed[a]
        if ok and ((up and i + 1 < k and mm[i + 1] == t) or (not up and i > 0 and mm[i - 1] == t)):
            ok = False
        if ok:
            if family == FAMILY_CUT_UNIFORM:
                big_n = n + k
                ratio = (big_n - 1 - a) / (a + 1) if up else a / (big_n - a)
                for j in range(k):
                    if j != i:
                        ratio *= (t - mm[j]) / (a - mm[j])
            elif family == FAMILY_HALFCUT:
                am = a + 1  # site index -> endpoint value
                tm = t + 1
                if up:
                    ratio = (n - am + k) / (n + am + k)
                else:
                    ratio = (n + am + k - 1) / (n - am + k + 1)
                ratio *= (2 * tm - 1) / (2 * am - 1)
                for j in range(k):
                    if j != i:
                        mj = mm[j] + 1
                        ratio *= (tm - mj) / (am - mj) * (tm + mj - 1) / (am + mj - 1)
            else:
                big_n = n + k
                if up:
                    ratio = math.exp(lnq * (a + 1 - k))
                    ratio *= math.expm1((big_n - 1 - a) * lnq) / math.expm1((a + 1) * lnq)
                else:
                    ratio = math.exp(lnq * (k - a))
                    ratio *= math.expm1(a * lnq) / math.expm1((big_n - a) * lnq)
                for j in range(k):
                    if j != i:
                        ratio *= math.expm1((t - mm[j]) * lnq) / math.expm1((a - mm[j]) * lnq)
            ratio = abs(ratio)
            u = rng.uniform()
            if u < ratio:
                mm[i] = t
                accepts += 1
                lw += math.log(ratio)
        if step >= burnin:
            if record_counts:
                for j in range(k):
                    site_counts[mm[j]] += 1
                recorded += 1
            if sample_every > 0 and (step - burnin) % sample_every == 0 and n_samples < max_samples:
                for j in range(k):
                    samples[n_samples, j] = mm[j]
                n_samples += 1
    for j in range(k):
        m[j] = mm[j]
    return accepts, recorded, n_samples, lw
