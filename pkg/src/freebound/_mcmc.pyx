# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled Metropolis kernel; mirrors _mcmc_py.run_chain exactly (same
proposal stream from the same xoshiro256** generator, same arithmetic)."""

from libc.math cimport exp, expm1, log, fabs

COMPILED = True

cdef extern from *:
    """
    #include <stdint.h>
    typedef struct { uint64_t s0, s1, s2, s3; } xo_state;

    static inline uint64_t _rotl(uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }
    static uint64_t _splitmix(uint64_t *st) {
        uint64_t z = (*st += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }
    static void xo_seed(xo_state *s, uint64_t seed) {
        uint64_t st = seed;
        s->s0 = _splitmix(&st);
        s->s1 = _splitmix(&st);
        s->s2 = _splitmix(&st);
        s->s3 = _splitmix(&st);
    }
    static inline uint64_t xo_next(xo_state *s) {
        uint64_t result = _rotl(s->s1 * 5, 7) * 9;
        uint64_t t = s->s1 << 17;
        s->s2 ^= s->s0;
        s->s3 ^= s->s1;
        s->s1 ^= s->s2;
        s->s0 ^= s->s3;
        s->s2 ^= t;
        s->s3 = _rotl(s->s3, 45);
        return result;
    }
    static inline uint64_t xo_below(xo_state *s, uint64_t bound) {
        return (uint64_t)(((__uint128_t)xo_next(s) * bound) >> 64);
    }
    static inline double xo_uniform(xo_state *s) {
        return (xo_next(s) >> 11) * (1.0 / 9007199254740992.0);
    }
    """
    ctypedef struct xo_state:
        unsigned long long s0, s1, s2, s3
    void xo_seed(xo_state *s, unsigned long long seed)
    unsigned long long xo_next(xo_state *s)
    unsigned long long xo_below(xo_state *s, unsigned long long bound)
    double xo_uniform(xo_state *s)


def run_chain(int family, long long n_param, long long k, double lnq,
              long long[::1] m, unsigned char[::1] forbidden,
              unsigned char[::1] packed, long long steps, long long burnin,
              unsigned long long seed, long long[::1] site_counts,
              bint record_counts, long long sample_every,
              int[:, ::1] samples):
    cdef xo_state rng
    cdef long long step, i, j, a, t, accepts = 0, recorded = 0, n_samples = 0
    cdef long long n_sites = forbidden.shape[0]
    cdef long long max_samples = samples.shape[0]
    cdef long long big_n = n_param + k
    cdef long long am, tm, mj
    cdef double ratio, u, lw = 0.0
    cdef bint ok, up
    xo_seed(&rng, seed)
    for step in range(steps):
        i = <long long>xo_below(&rng, <unsigned long long>k)
        up = xo_next(&rng) & 1
        a = m[i]
        t = a + 1 if up else a - 1
        ok = 0 <= t < n_sites and forbidden[t] == 0 and packed[a] == 0
        if ok:
            if up:
                if i + 1 < k and m[i + 1] == t:
                    ok = False
            else:
                if i > 0 and m[i - 1] == t:
                    ok = False
        if ok:
            if family == 0:
                if up:
                    ratio = (<double>(big_n - 1 - a)) / (<double>(a + 1))
                else:
                    ratio = (<double>a) / (<double>(big_n - a))
                for j in range(k):
                    if j != i:
                        ratio *= (<double>(t - m[j])) / (<double>(a - m[j]))
            elif family == 2:
                am = a + 1
                tm = t + 1
                if up:
                    ratio = (<double>(n_param - am + k)) / (<double>(n_param + am + k))
                else:
                    ratio = (<double>(n_param + am + k - 1)) / (<double>(n_param - am + k + 1))
                ratio *= (<double>(2 * tm - 1)) / (<double>(2 * am - 1))
                for j in range(k):
                    if j != i:
                        mj = m[j] + 1
                        ratio *= (<double>(tm - mj)) / (<double>(am - mj)) \
                            * (<double>(tm + mj - 1)) / (<double>(am + mj - 1))
            else:
                if up:
                    ratio = exp(lnq * (a + 1 - k))
                    ratio *= expm1((big_n - 1 - a) * lnq) / expm1((a + 1) * lnq)
                else:
                    ratio = exp(lnq * (k - a))
                    ratio *= expm1(a * lnq) / expm1((big_n - a) * lnq)
                for j in range(k):
                    if j != i:
                        ratio *= expm1((t - m[j]) * lnq) / expm1((a - m[j]) * lnq)
            ratio = fabs(ratio)
            u = xo_uniform(&rng)
            if u < ratio:
                m[i] = t
                accepts += 1
                lw += log(ratio)
        if step >= burnin:
            if record_counts:
                for j in range(k):
                    site_counts[m[j]] += 1
                recorded += 1
            if sample_every > 0 and (step - burnin) % sample_every == 0 and n_samples < max_samples:
                for j in range(k):
                    samples[n_samples, j] = <int>m[j]
                n_samples += 1
    return accepts, recorded, n_samples, lw
