"""Integer roots and certified enclosures for fractional powers."""

from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from shrinktarget.errors import DomainError
from shrinktarget.roots import (iroot, iroot_ceil, log2_enclosure,
                                nth_root_enclosure, pow_enclosure, sqrt_upper)


def test_iroot_small_cases():
    assert iroot(0, 3) == 0
    assert iroot(26, 3) == 2
    assert iroot(27, 3) == 3
    assert iroot(10**30, 2) == 10**15
    assert iroot_ceil(26, 3) == 3
    assert iroot_ceil(27, 3) == 3


@given(st.integers(min_value=0, max_value=10**40), st.integers(2, 7))
def test_iroot_is_floor_root(n, k):
    r = iroot(n, k)
    assert r ** k <= n < (r + 1) ** k


@given(st.integers(min_value=0, max_value=10**40), st.integers(2, 7))
def test_iroot_ceil_is_ceiling_root(n, k):
    r = iroot_ceil(n, k)
    assert (r - 1) ** k < n <= r ** k or (n == 0 and r == 0)


def test_iroot_rejects_negative():
    with pytest.raises(DomainError):
        iroot(-1, 2)


@given(st.fractions(min_value=Fraction(1, 10**12), max_value=Fraction(10**12)),
       st.integers(2, 5))
def test_nth_root_enclosure_brackets(x, k):
    lo, hi = nth_root_enclosure(x, k)
    assert 0 <= lo <= hi
    assert lo ** k <= x <= hi ** k
    # relative width respects the default tolerance (with slack for rounding)
    if lo > 0:
        assert (hi - lo) / lo <= Fraction(1, 2**60)


def test_nth_root_enclosure_exact_cube():
    lo, hi = nth_root_enclosure(Fraction(27), 3)
    assert lo <= 3 <= hi


@given(st.fractions(min_value=Fraction(1, 10**9), max_value=Fraction(10**9)))
def test_pow_enclosure_brackets_two_thirds_power(x):
    lo, hi = pow_enclosure(x, x, 2, 3)
    assert lo ** 3 <= x ** 2 <= hi ** 3


def test_pow_enclosure_monotone_in_interval():
    lo1, hi1 = pow_enclosure(Fraction(1, 4), Fraction(1, 2), 1, 2)
    assert lo1 ** 2 <= Fraction(1, 4) and hi1 ** 2 >= Fraction(1, 2)


def test_sqrt_upper_dominates():
    for x in (Fraction(2), Fraction(1, 3), Fraction(10**8), Fraction(0)):
        u = sqrt_upper(x)
        assert u * u >= x


def test_log2_enclosure_exact_powers():
    lo, hi = log2_enclosure(Fraction(8))
    assert lo <= 3 <= hi
    lo, hi = log2_enclosure(Fraction(1, 4))
    assert lo <= -2 <= hi


@given(st.fractions(min_value=Fraction(1, 10**15), max_value=Fraction(10**15)))
def test_log2_enclosure_brackets(x):
    if x <= 0:
        return
    lo, hi = log2_enclosure(x)
    assert lo <= hi
    # float log2 as an oracle, with slack far above float error but far
    # below any real enclosure defect
    import math
    ref = math.log2(x.numerator) - math.log2(x.denominator)
    assert float(lo) - 1e-6 <= ref <= float(hi) + 1e-6


def test_log2_enclosure_rejects_nonpositive():
    with pytest.raises(DomainError):
        log2_enclosure(Fraction(0))
