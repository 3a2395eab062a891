from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from avgdist.bounds import (
    BoundsError,
    Settings,
    best_lower,
    best_upper,
    bracket,
    closed_form_lower,
    complement_transfer,
    exact_small_M,
    lower_sweep,
    recursive_monotone,
    recursive_xf,
)
from avgdist.result import BoundResult, Direction
from oracles import beta_frozen


def tags(results):
    return {r.provenance[0]: r.value for r in results}


def test_exact_small_m():
    assert exact_small_M(5, 6) == F(25, 18)
    assert exact_small_M(7, 8) == F(3, 2)
    assert exact_small_M(3, 7) is None
    assert exact_small_M(2, 8) is None
    assert exact_small_M(9, 1) == 0


def test_closed_form_examples():
    t = tags(closed_form_lower(4, 8))
    assert t["althofer-sillke"] == F(3, 2)
    assert t["fu-wei-yeu-half"] == F(3, 2)
    t = tags(closed_form_lower(8, 16))
    assert t["alpha-half"] == F(19, 10)
    assert t["alpha-mod4"] == F(19, 10)


def test_guard_discipline():
    assert "xia-fu-odd" not in tags(closed_form_lower(5, 8))
    assert "fu-wei-yeu-odd" not in tags(closed_form_lower(5, 8))
    assert "fu-wei-yeu-mod4" not in tags(closed_form_lower(5, 8))
    assert "fu-wei-yeu-mod4" in tags(closed_form_lower(5, 10))
    assert "fu-wei-yeu-half" not in tags(closed_form_lower(4, 9))
    assert "fu-wei-yeu-odd" in tags(closed_form_lower(4, 7))
    assert "fu-wei-yeu-odd" not in tags(closed_form_lower(4, 9))
    assert "fu-wei-yeu-odd" in tags(closed_form_lower(4, 5))
    assert "lambda-top-two" not in tags(closed_form_lower(2, 3))
    assert "alpha-pn" not in tags(closed_form_lower(1, 2))
    assert "alpha-mod4" not in tags(closed_form_lower(3, 5))
    assert all(r.value >= 0 for r in closed_form_lower(6, 2))


@pytest.mark.parametrize("n", [3, 4])
def test_closed_forms_below_oracle(n):
    for M in range(1, 2**n + 1):
        for r in closed_form_lower(n, M):
            assert r.value <= beta_frozen(n, M), r.provenance


def test_complement_examples():
    one = BoundResult(3, 4, Direction.LOWER, F(1), ("x",))
    assert complement_transfer(3, 4, one).value == 1
    half = BoundResult(3, 2, Direction.LOWER, F(1, 2), ("x",))
    r = complement_transfer(3, 2, half)
    assert r.M == 6 and r.value == F(25, 18) == beta_frozen(3, 6)
    assert r.provenance == ("complement[x]",)
    with pytest.raises(BoundsError):
        complement_transfer(3, 8, BoundResult(3, 8, Direction.LOWER, F(3, 2)))


@given(st.integers(1, 8).flatmap(lambda n: st.tuples(st.just(n), st.integers(1, 2**n - 1), st.fractions(0, 1))))
def test_complement_involution(args):
    n, M, t = args
    b = t * F(n, 2)
    there = complement_transfer(n, M, BoundResult(n, M, Direction.LOWER, b))
    back = complement_transfer(n, 2**n - M, there)
    assert back.value == b and back.M == M


def test_recursion_examples():
    assert recursive_xf(5, 3, 0) == 0
    n, M = 6, 4
    top = recursive_xf(n, M, F(n, 2))
    assert top == F(n, 2) * F(M * M + 2 * M, (M + 1) ** 2)
    assert recursive_xf(4, 2, F(1, 2)) < F(2, 3) == recursive_monotone(4, 2, F(1, 2))
    assert recursive_monotone(7, 5, 0) == 0
    assert recursive_monotone(4, 3, F(8, 9)) == 1
    with pytest.raises(BoundsError):
        recursive_xf(4, 2, 3)
    with pytest.raises(BoundsError):
        recursive_monotone(4, 1, F(1, 2))


def test_xf_rounding_brackets():
    for b in (F(1, 3), F(7, 5), F(2)):
        lo = recursive_xf(5, 6, b, rounding="down")
        hi = recursive_xf(5, 6, b, rounding="up")
        assert lo <= hi and hi - lo < F(1, 10**30)


def test_monotone_recursion_on_oracle():
    for M in range(2, 16):
        assert beta_frozen(4, M + 1) >= recursive_monotone(4, M, beta_frozen(4, M))


def test_best_lower_examples():
    r = best_lower(3, 4)
    assert r.value == 1
    assert {"althofer-sillke", "lp-bside"} & set(r.provenance)
    assert best_lower(8, 16).value >= F(19, 10)
    assert best_lower(4, 16).value == 2


def test_provenance_priority():
    r = best_lower(4, 3)
    assert r.provenance[0] == "exact-small-M"
    order = ("exact", "lp-", "", "complement", "recursion", "trivial")

    def rank(t):
        for i, p in enumerate(order):
            if p and t.startswith(p):
                return i
        return 2

    ranks = [rank(t) for t in best_lower(4, 11).provenance]
    assert ranks == sorted(ranks)


@pytest.mark.parametrize("n", [3, 4])
def test_best_lower_matches_oracle(n):
    for M in range(1, 2**n + 1):
        lo, hi = bracket(n, M)
        beta = beta_frozen(n, M)
        assert lo.value <= beta
        if hi is not None:
            assert beta <= hi.value
        # at these sizes every value is determined by the available bounds
        assert lo.value == beta


def test_aggregation_is_monotone():
    rows = lower_sweep(6, 1, 64)
    for a, b in zip(rows[1:], rows[2:]):
        assert b.value >= F(a.M**2, a.M**2 - 1) * a.value


def test_window_and_lp_cap():
    wide = best_lower(7, 40)
    narrow = best_lower(7, 40, Settings(dp_window=3))
    assert narrow.value <= wide.value
    no_lp = best_lower(9, 18, Settings(lp_max_n=0))
    assert not any(t.startswith("lp-") for t in no_lp.provenance)
    assert no_lp.value <= best_lower(9, 18).value


def test_best_upper():
    u = best_upper(4, 8)
    assert u.value == F(3, 2)
    assert best_upper(10, 20).value == F(53, 25)
    assert best_upper(7, 100) is None or best_upper(7, 100).value >= best_lower(7, 100).value


def test_range_errors():
    with pytest.raises(BoundsError):
        best_lower(3, 9)
    with pytest.raises(BoundsError):
        closed_form_lower(0, 1)
