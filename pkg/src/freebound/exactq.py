"""Exact q-combinatorics on arbitrary-precision rationals.

Conventions used throughout the enumeration layer:

* ``q_factorial(a, q)`` is the product  prod_{i=1..a} (1 - q^i)  (not divided
  by (1-q)^a), so it vanishes identically at q = 1 for a >= 1.
* ``q_binomial(a, b, q)`` is the Gaussian binomial.  It is a polynomial in q;
  for q = 1 it takes the ordinary binomial value (the continuous-limit
  convention), and q = -1 is evaluated through the parity rule rather than as
  a 0/0 ratio of q-factorials.
* Everything is a :class:`fractions.Fraction`; no floats enter here.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb


Rational = Fraction


def binomial(a: int, b: int) -> int:
    """Ordinary binomial coefficient C(a, b), 0 outside 0 <= b <= a."""
    if a < 0:
        raise ValueError("binomial: a must be non-negative")
    if b < 0 or b > a:
        return 0
    return comb(a, b)


def q_pow(q: Fraction, e: int) -> Fraction:
    """q**e for integer e of either sign (repeated squaring via Fraction)."""
    if e >= 0:
        return q**e
    if q == 0:
        raise ZeroDivisionError("0 cannot be raised to a negative power")
    return (1 / q) ** (-e)


def q_factorial(a: int, q: Fraction) -> Fraction:
    """prod_{i=1..a} (1 - q^i); the empty product (a = 0) is 1."""
    if a < 0:
        raise ValueError("q_factorial: a must be non-negative")
    q = Fraction(q)
    out = Fraction(1)
    p = Fraction(1)
    for _ in range(a):
        p *= q
        out *= 1 - p
        if out == 0:
            break
    return out


@dataclass(frozen=True)
class QFactorialValue:
    """A q-factorial together with the inputs that produced it."""

    value: Fraction
    a: int
    q: Fraction

    @classmethod
    def compute(cls, a: int, q: Fraction) -> "QFactorialValue":
        return cls(q_factorial(a, q), a, Fraction(q))


def q_binomial(a: int, b: int, q: Fraction) -> Fraction:
    """Gaussian binomial C(a, b)_q as an exact rational.

    Equals the generating polynomial sum_paths q^{area} for monotone lattice
    paths from (0,0) to (b, a-b); in particular it is finite at the roots of
    unity q = 1 (ordinary binomial) and q = -1 (parity rule), where the naive
    ratio of q-factorials degenerates to 0/0.
    """
    if a < 0:
        raise ValueError("q_binomial: a must be non-negative")
    if b < 0 or b > a:
        return Fraction(0)
    q = Fraction(q)
    if q == 1:
        return Fraction(comb(a, b))
    if q == -1:
        if a % 2 == 0 and b % 2 == 1:
            return Fraction(0)
        return Fraction(comb(a // 2, b // 2))
    # prod_{i=1..b} (1 - q^{a-b+i}) / (1 - q^i): no vanishing factors once
    # q is not a root of unity among the rationals (q != +-1).
    b = min(b, a - b)
    num = Fraction(1)
    den = Fraction(1)
    qa = q_pow(q, a - b)
    qi = Fraction(1)
    for _ in range(1, b + 1):
        qa *= q
        qi *= q
        num *= 1 - qa
        den *= 1 - qi
    return num / den
