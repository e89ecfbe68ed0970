import pytest
from hypothesis import given, settings, strategies as st

from oracles import brute_solutions
from revmul.digits import ArithmeticCapacityError, check_solution
from revmul.enumeration import (
    EngineDivergence,
    EnumerationRequest,
    enumerate_fast,
    enumerate_naive,
    enumerate_solutions,
    exists_solution,
    solve_for_k,
)


def pairs(sols):
    return [(s.k, s.digits.digits) for s in sols]


@pytest.mark.parametrize("engine", [enumerate_naive, enumerate_fast])
def test_base10_four_digits(engine):
    assert pairs(engine(EnumerationRequest(10, 4))) == [(4, (2, 1, 7, 8)), (9, (1, 0, 8, 9))]


@pytest.mark.parametrize("engine", [enumerate_naive, enumerate_fast])
def test_small_cases(engine):
    assert pairs(engine(EnumerationRequest(5, 2))) == [(2, (1, 3))]
    assert engine(EnumerationRequest(2, 5)) == []
    assert engine(EnumerationRequest(10, 1)) == []


@pytest.mark.parametrize("k, expected", [
    (4, [(2, 1, 7, 8)]),
    (9, [(1, 0, 8, 9)]),
    (5, []),
])
def test_solve_for_k(k, expected):
    assert [s.digits.digits for s in solve_for_k(10, 4, k)] == expected


def test_solve_for_k_rejects_bad_multiplier():
    with pytest.raises(ValueError):
        solve_for_k(10, 4, 10)
    with pytest.raises(ValueError):
        solve_for_k(10, 4, 1)


def test_counterexample_bases_contain_known_solutions():
    found22 = pairs(enumerate_fast(EnumerationRequest(22, 5)))
    assert (7, (2, 8, 3, 13, 16)) in found22
    assert (3, (2, 16, 11, 5, 8)) in found22
    found30 = pairs(enumerate_fast(EnumerationRequest(30, 5)))
    assert (3, (3, 22, 15, 7, 11)) in found30
    # The published (2,13,8,16,9) is a dropped digit; 8 * (2,13,8,16,19)_30 is the real pair.
    assert (8, (2, 13, 8, 16, 19)) in found30
    assert (8, (2, 13, 8, 16, 9)) not in found30


@pytest.mark.parametrize("n, length, expected", [
    (5, 2, True),
    (10, 2, False),
    (10, 4, True),
    (2, 3, False),
    (10, 1, False),
])
def test_exists_solution(n, length, expected):
    assert exists_solution(n, length) is expected


@pytest.mark.parametrize("n", range(2, 10))
@pytest.mark.parametrize("length", [2, 3, 4])
def test_fast_matches_brute_force(n, length):
    assert pairs(enumerate_fast(EnumerationRequest(n, length))) == brute_solutions(n, length)


def test_base10_six_digits_against_brute_force():
    assert pairs(enumerate_fast(EnumerationRequest(10, 6))) == brute_solutions(10, 6)


@pytest.mark.parametrize("n", range(2, 31))
def test_partition_by_k(n):
    req = EnumerationRequest(n, 5)
    everything = enumerate_fast(req)
    by_k = [s for k in range(2, n) for s in solve_for_k(n, 5, k)]
    assert by_k == everything
    assert len(set(everything)) == len(everything)
    for s in everything:
        assert check_solution(s.digits) == s.k
        assert enumerate_fast(EnumerationRequest(n, 5, k=s.k)) == solve_for_k(n, 5, s.k)


@settings(max_examples=40, deadline=None)
@given(st.integers(3, 40), st.integers(2, 6), st.integers(0, 10))
def test_limit_returns_prefix(n, length, m):
    full = enumerate_fast(EnumerationRequest(n, length))
    assert enumerate_fast(EnumerationRequest(n, length, limit=m)) == full[:m]


def test_limit_prefix_naive():
    full = enumerate_naive(EnumerationRequest(11, 4))
    assert enumerate_naive(EnumerationRequest(11, 4, limit=2)) == full[:2]


def test_envelope_error():
    with pytest.raises(ArithmeticCapacityError):
        EnumerationRequest(2**16, 9)


def test_both_engines_agree():
    assert pairs(enumerate_solutions(10, 4, "both")) == [(4, (2, 1, 7, 8)), (9, (1, 0, 8, 9))]
    with pytest.raises(ValueError):
        enumerate_solutions(10, 4, "quantum")


def test_divergence_is_reported(monkeypatch):
    import revmul.enumeration as en

    monkeypatch.setattr(en, "enumerate_fast", lambda req: [])
    with pytest.raises(EngineDivergence):
        en.enumerate_solutions(10, 4, "both")


@pytest.mark.parametrize("n", range(3, 61))
def test_two_and_three_digit_existence_agree(n):
    assert exists_solution(n, 2) == exists_solution(n, 3)
