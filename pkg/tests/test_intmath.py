import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from ambigal.intmath import ceil_div, floor_div

nums = st.integers(min_value=-10**12, max_value=10**12)
dens = st.integers(min_value=1, max_value=10**6)


@given(nums, dens)
def test_ceil_div_matches_exact_ceiling(num, den):
    assert ceil_div(num, den) == math.ceil(Fraction(num, den))


@given(nums, dens)
def test_floor_div_matches_exact_floor(num, den):
    assert floor_div(num, den) == math.floor(Fraction(num, den))


@given(nums, dens)
def test_ceil_bracket(num, den):
    q = ceil_div(num, den)
    assert den * (q - 1) < num <= den * q


@given(nums, dens)
def test_floor_bracket(num, den):
    q = floor_div(num, den)
    assert den * q <= num < den * (q + 1)


@given(nums, dens)
def test_ceil_floor_relation(num, den):
    gap = 0 if num % den == 0 else 1
    assert ceil_div(num, den) == floor_div(num, den) + gap
    assert ceil_div(num, den) == -floor_div(-num, den)


@given(nums, dens, st.integers(min_value=-100, max_value=100))
def test_shift_by_multiples(num, den, k):
    assert ceil_div(num + k * den, den) == ceil_div(num, den) + k


def test_zero_and_negative_denominators_rejected():
    for den in (0, -1, -8):
        with pytest.raises(ValueError):
            ceil_div(5, den)
        with pytest.raises(ValueError):
            floor_div(5, den)


def test_exact_negative_division():
    assert ceil_div(-8, 8) == -1
    assert ceil_div(-7, 8) == 0
    assert ceil_div(-9, 8) == -1
    assert floor_div(-8, 8) == -1
    assert floor_div(-7, 8) == -1
    assert floor_div(-9, 8) == -2
