"""Certified radicals and logarithms over exact rationals.

Irrational values (k-th roots, base-2 logarithms) never appear as floats;
each is returned as a rational enclosure [lo, hi] whose width is controlled
by an explicit bit count.  All internal work is integer arithmetic.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .errors import DomainError
from .exact import rational

__all__ = [
    "iroot",
    "iroot_ceil",
    "nth_root_enclosure",
    "pow_enclosure",
    "log2_enclosure",
    "sqrt_upper",
]


def iroot(n: int, k: int) -> int:
    """floor(n ** (1/k)) for n >= 0, k >= 1, by Newton iteration on ints."""
    if k <= 0:
        raise DomainError("root order must be positive")
    if n < 0:
        raise DomainError("integer root of a negative number")
    if n == 0:
        return 0
    if k == 1:
        return n
    if k == 2:
        return math.isqrt(n)
    # initial overestimate from the bit length, then monotone Newton descent
    x = 1 << -(-n.bit_length() // k)
    while True:
        y = ((k - 1) * x + n // x ** (k - 1)) // k
        if y >= x:
            break
        x = y
    while x ** k > n:  # guard (at most a step or two)
        x -= 1
    return x


def iroot_ceil(n: int, k: int) -> int:
    r = iroot(n, k)
    return r if r ** k == n else r + 1


def nth_root_enclosure(x, k: int, rel_bits: int = 64) -> tuple[Fraction, Fraction]:
    """Enclosure lo <= x**(1/k) <= hi with hi - lo <= 2**-rel_bits * lo (x > 0).

    x == 0 returns (0, 0).
    """
    x = rational(x)
    if x < 0:
        raise DomainError("root of a negative rational")
    if x == 0:
        return Fraction(0), Fraction(0)
    if k == 1:
        return x, x
    # log2(x)/k estimated from bit lengths to place the scaling
    mag = x.numerator.bit_length() - x.denominator.bit_length()
    m = rel_bits + 2 + max(0, -(mag // k) + 1)
    while True:
        s = 1 << m
        t = iroot(x.numerator * s**k // x.denominator, k)
        if t >> rel_bits:
            return Fraction(t, s), Fraction(t + 1, s)
        m += rel_bits - t.bit_length() + 2


def pow_enclosure(lo, hi, num: int, den: int, rel_bits: int = 64) -> tuple[Fraction, Fraction]:
    """Enclosure of t**(num/den) over t in [lo, hi]; needs lo >= 0, den >= 1.

    num may be negative (then lo must be > 0).
    """
    lo, hi = rational(lo), rational(hi)
    if den < 1:
        raise DomainError("denominator of the exponent must be >= 1")
    if lo < 0 or hi < lo:
        raise DomainError("invalid base interval")
    if num < 0:
        if lo == 0:
            raise DomainError("negative power of an interval touching 0")
        lo, hi = 1 / hi, 1 / lo
        num = -num
    if num == 0:
        return Fraction(1), Fraction(1)
    g = math.gcd(num, den)
    num, den = num // g, den // g
    a = nth_root_enclosure(lo**num, den, rel_bits)[0]
    b = nth_root_enclosure(hi**num, den, rel_bits)[1]
    return a, b


def log2_enclosure(x, frac_bits: int = 32) -> tuple[Fraction, Fraction]:
    """Enclosure of log2(x) for x > 0, width about 2**(1 - frac_bits).

    Digit-by-digit squaring with directed fixed-point rounding: the floor
    process yields a lower bound, the ceiling process an upper bound.
    """
    x = rational(x)
    if x <= 0:
        raise DomainError("log of a nonpositive value")
    e = x.numerator.bit_length() - x.denominator.bit_length()
    m = x / Fraction(2**e) if e >= 0 else x * Fraction(2**-e)
    if m < 1:
        m *= 2
        e -= 1
    # m in [1, 2)
    p = frac_bits + 8
    one, two = 1 << p, 2 << p
    a = m.numerator * one // m.denominator
    b = -((-m.numerator * one) // m.denominator)
    lo = Fraction(0)
    hi = Fraction(0)
    for i in range(1, frac_bits + 1):
        w = Fraction(1, 1 << i)
        a = (a * a) >> p
        if a >= two:
            a >>= 1
            lo += w
        b = -((-(b * b)) >> p)
        if b >= two:
            b = (b + 1) >> 1
            hi += w
    return e + lo, e + hi + Fraction(2, 1 << frac_bits)


def sqrt_upper(x) -> Fraction:
    """A rational upper bound for sqrt(x), tight to ~2**-32 relative."""
    return nth_root_enclosure(x, 2, 32)[1]
