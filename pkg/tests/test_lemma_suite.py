from fractions import Fraction as F

import pytest

from avgdist.krawtchouk import kraw_value
from avgdist.lemma_suite import (
    LEMMAS,
    LemmaDomainError,
    check_estimation_even,
    check_estimation_odd,
    check_midpoint_values,
    check_mod4_alpha_values,
    check_monotone_even,
    check_monotone_odd,
    default_n_max,
)


def test_small_sweeps():
    assert check_monotone_even(10).checked == 0
    assert check_monotone_even(10).summary().endswith("checked 0 pairs: ok")
    assert check_estimation_even(40).ok
    assert check_estimation_odd(41).ok
    assert check_monotone_odd(41).ok


def test_estimation_example():
    assert kraw_value(8, 4, 5) == 0
    assert abs(kraw_value(8, 4, 5)) < 6


def test_monotone_odd_example():
    # (7-4) C(15,7) / C(15,3) = 297/7 > 195/8
    assert F(3 * 6435, 455) == F(297, 7) > F(195, 8)
    assert check_monotone_odd(15).checked == 1


def test_midpoint_values():
    for n in range(4, 60, 2):
        assert check_midpoint_values(n).ok
    with pytest.raises(LemmaDomainError):
        check_midpoint_values(7)
    with pytest.raises(LemmaDomainError):
        check_midpoint_values(2)


def test_mod4_values():
    r = check_mod4_alpha_values(9)
    assert r.ok and r.checked == 14
    for n in range(13, 102, 4):
        assert check_mod4_alpha_values(n).ok
    with pytest.raises(LemmaDomainError):
        check_mod4_alpha_values(5)
    with pytest.raises(LemmaDomainError):
        check_mod4_alpha_values(11)


def test_mod4_examples_against_family():
    from avgdist.certificates import build_family

    p = build_family("ALPHA_MOD4_1", 9).poly
    assert p(5) == F(-32, 5)
    assert p(9) == F(-192, 5)
    assert build_family("ALPHA_MOD4_1", 13).poly(4) == 0


def test_majorant_examples_against_family():
    from avgdist.certificates import build_family

    a8 = build_family("ALPHA_HALF_EVEN", 8).poly
    assert a8(5) <= -4
    a12 = build_family("ALPHA_HALF_EVEN", 12).poly
    assert a12(12 - 3) <= -12


def test_env_override(monkeypatch):
    monkeypatch.setenv("AVGDIST_NMAX", "30")
    assert default_n_max() == 30
    r = check_estimation_even()
    assert "30" in r.range_checked
    monkeypatch.delenv("AVGDIST_NMAX")
    assert default_n_max() == 200 and default_n_max(odd=True) == 201


def test_parallel_matches_serial():
    a = check_estimation_odd(61)
    b = check_estimation_odd(61, threads=2)
    assert (a.checked, a.counterexamples) == (b.checked, b.counterexamples)


def test_registry():
    assert set(LEMMAS) == {"estimation-even", "monotone-even", "estimation-odd", "monotone-odd", "midpoint", "mod4"}
    d = check_estimation_even(10).to_dict()
    assert d["ok"] and d["lemma"] == "estimation-even"
