"""Throughput benchmark: compiled Metropolis kernel vs pure-Python fallback.

Run from the repository root:

    PYTHONPATH=src python3 benchmarks/bench_mcmc.py [--steps N]

The two kernels follow the identical proposal stream, so the final states
must agree exactly whenever both are available.
"""

import argparse
import math
import sys
import time

import numpy as np

sys.path.insert(0, "src")

from freebound import _mcmc_py  # noqa: E402
from freebound.enumeration import CUT_HEXAGON, RegionSpec  # noqa: E402
from freebound.sampler import _masks, initial_config  # noqa: E402

try:
    from freebound import _mcmc

    HAVE_COMPILED = True
except ImportError:
    HAVE_COMPILED = False


def run(kernel, region, steps, seed=7):
    cfg = initial_config(region)
    forbidden, packed = _masks(region)
    m = np.array([v - region.site_min for v in cfg.m], dtype=np.int64)
    counts = np.zeros(region.num_sites, dtype=np.int64)
    samples = np.zeros((0, region.k), dtype=np.int32)
    lnq = math.log(float(region.q)) if region.q != 1 else 0.0
    family = 1 if (region.kind == CUT_HEXAGON and region.q != 1) else 0
    t0 = time.perf_counter()
    kernel.run_chain(family, region.n, region.k, lnq, m, forbidden, packed,
                     steps, 0, seed, counts, True, 0, samples)
    return time.perf_counter() - t0, m


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--steps", type=int, default=2 * 10**5)
    args = parser.parse_args()
    cases = [
        ("k=n=20 uniform", RegionSpec(CUT_HEXAGON, 20, 20)),
        ("k=n=60 uniform", RegionSpec(CUT_HEXAGON, 60, 60)),
        ("k=n=30 q=9/10", RegionSpec(CUT_HEXAGON, 30, 30, q="9/10")),
    ]
    print(f"{'case':18s} {'pure (steps/s)':>16s} {'compiled (steps/s)':>20s} {'speedup':>9s}")
    for name, region in cases:
        t_pure, m_pure = run(_mcmc_py, region, args.steps)
        line = f"{name:18s} {args.steps / t_pure:16.3e}"
        if HAVE_COMPILED:
            t_c, m_c = run(_mcmc, region, args.steps)
            assert np.array_equal(m_pure, m_c), "kernels diverged"
            line += f" {args.steps / t_c:20.3e} {t_pure / t_c:9.1f}x"
        else:
            line += f" {'(not built)':>20s}"
        print(line)


if __name__ == "__main__":
    main()
