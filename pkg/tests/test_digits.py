import pytest
from hypothesis import given, strategies as st

from oracles import brute_multiplier, to_int
from revmul.digits import (
    ArithmeticCapacityError,
    DigitString,
    Solution,
    check_envelope,
    check_solution,
    digits_of,
    parse_digits,
    reverse,
    value_of,
)


@st.composite
def digit_strings(draw, max_base=40, max_len=7):
    n = draw(st.integers(2, max_base))
    digits = draw(st.lists(st.integers(0, n - 1), min_size=1, max_size=max_len))
    return DigitString(n, digits)


@pytest.mark.parametrize("digits, base, expected", [
    ((2, 1, 7, 8), 10, 2178),
    ((7,), 10, 7),
    ((1, 0), 2, 2),
])
def test_value_of(digits, base, expected):
    assert value_of(DigitString(base, digits)) == expected


@pytest.mark.parametrize("digits, base, expected", [
    ((2, 1, 7, 8), 10, (8, 7, 1, 2)),
    ((1, 0, 1), 10, (1, 0, 1)),
    ((2, 8, 3, 13, 16), 22, (16, 13, 3, 8, 2)),
])
def test_reverse(digits, base, expected):
    r = reverse(DigitString(base, digits))
    assert r.digits == expected and r.base == base


@pytest.mark.parametrize("digits, base, k", [
    ((2, 1, 7, 8), 10, 4),
    ((1, 0, 8, 9), 10, 9),
    ((2, 8, 13, 16), 22, None),
    ((1, 2), 10, None),
    ((1, 0, 1), 10, None),  # palindrome, k == 1
    ((0, 1, 2), 10, None),  # leading zero
])
def test_check_solution(digits, base, k):
    assert check_solution(DigitString(base, digits)) == k


@pytest.mark.parametrize("x, n, width, expected", [
    (2178, 10, 4, (2, 1, 7, 8)),
    (0, 10, 3, (0, 0, 0)),
    (555450, 22, 5, (2, 8, 3, 13, 16)),
])
def test_digits_of(x, n, width, expected):
    d = digits_of(x, n, width)
    assert d.digits == expected
    assert value_of(d) == x


def test_invalid_digit_strings():
    with pytest.raises(ValueError):
        DigitString(10, (1, 10))
    with pytest.raises(ValueError):
        DigitString(1, (0,))
    with pytest.raises(ValueError):
        DigitString(10, ())
    with pytest.raises(ValueError):
        digits_of(-1, 10)


def test_solution_rejects_wrong_k():
    Solution(DigitString(10, (2, 1, 7, 8)), 4)
    with pytest.raises(ValueError):
        Solution(DigitString(10, (2, 1, 7, 8)), 3)
    with pytest.raises(ValueError):
        Solution(DigitString(10, (0, 1, 0, 8, 9)), 9)


def test_overflow_is_loud():
    big = DigitString(2**16, [2**16 - 1] * 9)
    with pytest.raises(ArithmeticCapacityError):
        value_of(big)
    with pytest.raises(ArithmeticCapacityError):
        check_envelope(2**16, 9)
    check_envelope(2**16, 7)


def test_parse_digits():
    assert parse_digits("2, 8,3,13,16", 22).digits == (2, 8, 3, 13, 16)
    with pytest.raises(ValueError):
        parse_digits("2,1,7,x", 10)
    with pytest.raises(ValueError):
        parse_digits("2,10", 10)


@given(digit_strings())
def test_reverse_is_involution(d):
    assert reverse(reverse(d)) == d


@given(st.integers(0, 10**12), st.integers(2, 300), st.integers(1, 12))
def test_digits_of_round_trip(x, n, width):
    d = digits_of(x, n, width)
    assert value_of(d) == x
    assert len(d) >= width


@given(digit_strings())
def test_check_solution_contract(d):
    k = check_solution(d)
    assert k == brute_multiplier(d.digits, d.base)
    if k is not None:
        assert k * value_of(d) == value_of(reverse(d))
        assert 1 < k < d.base
        assert d[0] != 0 and d[-1] != 0
    assert check_solution(digits_of(value_of(d), d.base, len(d))) == k


@given(digit_strings())
def test_value_matches_oracle(d):
    assert value_of(d) == to_int(d.digits, d.base)
