from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from avgdist.codes import (
    Code,
    CodeParseError,
    average_distance,
    average_distance_by_columns,
    average_distance_from_b1,
    distance_distribution,
    format_code,
    parse_code,
)
from avgdist.krawtchouk import binom, kraw_table
from oracles import dbar_naive
from strategies import codes


def test_repetition_code():
    c = parse_code("000\n111\n")
    d = distance_distribution(c)
    assert d.A == (1, 0, 0, 1)
    assert d.B == (1, 0, 3, 0)
    assert average_distance(c) == F(3, 2)


def test_single_word():
    for n in (1, 5, 9):
        c = Code(n, (3 % 2**n,))
        d = distance_distribution(c)
        assert d.A == tuple(F(int(i == 0)) for i in range(n + 1))
        assert d.B == tuple(F(binom(n, k)) for k in range(n + 1))
        assert average_distance(c) == 0


def test_full_space():
    c = Code(3, tuple(range(8)))
    assert distance_distribution(c).B == (1, 0, 0, 0)
    assert average_distance(c) == F(3, 2)


def test_parse_ok_with_comments():
    c = parse_code("# a comment\n\n00\n  11\n")
    assert c == Code(2, (0, 3))
    assert c.strings() == ["00", "11"]


@pytest.mark.parametrize(
    "text, line, fragment",
    [
        ("0\n0\n", 2, "duplicate"),
        ("01\n011\n", 2, "length"),
        ("01\n0x\n", 2, "character"),
        ("# only comments\n", 0, "no codewords"),
    ],
)
def test_parse_errors(text, line, fragment):
    with pytest.raises(CodeParseError) as info:
        parse_code(text)
    assert info.value.lineno == line
    assert fragment in str(info.value)


def test_format_roundtrip():
    c = Code(4, (0, 5, 9, 15))
    assert parse_code(format_code(c, ["hello"])) == c


def test_code_validation():
    with pytest.raises(ValueError):
        Code(2, (0, 4))
    with pytest.raises(ValueError):
        Code(2, ())
    with pytest.raises(ValueError):
        Code(2, (1, 1))


@given(codes())
def test_distribution_invariants(c):
    n, M = c.n, c.M
    d = distance_distribution(c)
    assert d.A[0] == 1 and sum(d.A) == M and min(d.A) >= 0
    assert d.B[0] == 1 and sum(d.B) == F(2**n, M)
    assert d.delsarte_violations() == []
    t = kraw_table(n)
    for j in range(n + 1):
        assert sum(t[j][k] * d.B[k] for k in range(n + 1)) == F(2**n, M) * d.A[j]


@given(codes())
def test_average_distance_three_ways(c):
    d = distance_distribution(c)
    v = average_distance(c)
    assert v == average_distance_from_b1(c.n, d.B[1])
    assert v == average_distance_by_columns(c)
    assert v == dbar_naive(c.words, c.n)


@given(codes(), st.data())
def test_translation_invariance(c, data):
    t = data.draw(st.integers(0, 2**c.n - 1))
    assert average_distance(c.translate(t)) == average_distance(c)
