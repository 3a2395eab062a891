from fractions import Fraction as F

import pytest

from avgdist.codes import average_distance, average_distance_by_columns
from avgdist.search import (
    BudgetExceeded,
    SearchConfig,
    SearchError,
    beta,
    brute_force_beta,
    construct_constant_weight,
    construct_subcube,
    construct_two_n,
    constructions_for,
    two_n_average_distance,
)
from oracles import beta_frozen, beta_naive


def test_examples():
    assert beta(3, 2) == F(1, 2)
    r = brute_force_beta(SearchConfig(3, 4))
    assert r.value == 1 and average_distance(r.codes[0]) == 1
    assert beta(4, 16) == 2


@pytest.mark.parametrize("n", [3, 4])
def test_full_tables(n):
    for M in range(1, 2**n + 1):
        assert beta(n, M) == beta_frozen(n, M)


def test_n5_head():
    for M in range(1, 8):
        assert beta(5, M) == beta_frozen(5, M)


def test_fix_zero_loses_nothing():
    for M in range(1, 9):
        assert beta(3, M, fix_zero=False) == beta(3, M)


def test_all_minimizers():
    r = brute_force_beta(SearchConfig(3, 2, all_minimizers=True))
    assert len(r.codes) == 3
    assert all(average_distance(c) == r.value for c in r.codes)
    r = brute_force_beta(SearchConfig(4, 8, all_minimizers=True))
    assert all(average_distance(c) == F(3, 2) for c in r.codes)
    assert len(r.codes) > 1


def test_threads_agree():
    for M in (5, 7, 9):
        assert brute_force_beta(SearchConfig(4, M, threads=3)).value == beta(4, M)


def test_budget():
    with pytest.raises(BudgetExceeded) as info:
        brute_force_beta(SearchConfig(4, 8, node_budget=20))
    best = info.value.best
    assert best is None or best.value >= F(3, 2)


def test_config_guards():
    with pytest.raises(SearchError):
        SearchConfig(6, 3)
    assert SearchConfig(6, 3, allow_large=True).n == 6
    with pytest.raises(SearchError):
        SearchConfig(3, 9)


def test_two_n_construction():
    c = construct_two_n(4)
    assert c.M == 8 and average_distance(c) == F(13, 8)
    c = construct_two_n(2)
    assert set(c.strings()) == {"00", "10", "01", "11"} and average_distance(c) == 1
    assert average_distance(construct_two_n(10)) == F(53, 25)
    for n in range(2, 30):
        c = construct_two_n(n)
        assert c.M == 2 * n
        assert average_distance_by_columns(c) == two_n_average_distance(n)
    with pytest.raises(SearchError):
        construct_two_n(1)


def test_constant_weight():
    assert average_distance(construct_constant_weight(4, 0)) == 0
    c = construct_constant_weight(4, 2)
    assert c.M == 6 and average_distance(c) >= beta_frozen(4, 6)
    c = construct_constant_weight(5, 2)
    assert c.M == 10
    with pytest.raises(SearchError):
        construct_constant_weight(4, 5)
    with pytest.raises(SearchError):
        construct_constant_weight(30, 15, max_words=1000)


def test_constructions_are_upper_bounds():
    for n in (3, 4):
        for M in range(1, 2**n + 1):
            for tag, v in constructions_for(n, M):
                assert v >= beta_naive(n, M), tag
    assert average_distance(construct_subcube(5, 3)) == F(3, 2)
