"""xoshiro256** with splitmix64 seeding.

Implemented identically in the compiled kernel; the pure-Python version here
is the reference (and powers the fallback sampler and the exact sampler).
"""

from __future__ import annotations

_MASK = (1 << 64) - 1


def _splitmix64(state: int):
    state = (state + 0x9E3779B97F4A7C15) & _MASK
    z = state
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
    return state, z ^ (z >> 31)


class Xoshiro256StarStar:
    __slots__ = ("s0", "s1", "s2", "s3")

    def __init__(self, seed: int):
        state = seed & _MASK
        state, self.s0 = _splitmix64(state)
        state, self.s1 = _splitmix64(state)
        state, self.s2 = _splitmix64(state)
        state, self.s3 = _splitmix64(state)

    def next_u64(self) -> int:
        s1 = self.s1
        x = (s1 * 5) & _MASK
        result = (((x << 7) | (x >> 57)) & _MASK) * 9 & _MASK
        t = (s1 << 17) & _MASK
        self.s2 ^= self.s0
        self.s3 ^= s1
        self.s1 = s1 ^ self.s2
        self.s0 ^= self.s3
        self.s2 ^= t
        s3 = self.s3
        self.s3 = ((s3 << 45) | (s3 >> 19)) & _MASK
        return result

    def uniform(self) -> float:
        return (self.next_u64() >> 11) * (1.0 / 9007199254740992.0)

    def below(self, bound: int) -> int:
        """Uniform integer in [0, bound) via 128-bit multiply-shift."""
        return (self.next_u64() * bound) >> 64
