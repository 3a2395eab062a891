"""Exact binary Krawtchouk polynomials and expansions in the Krawtchouk basis.

Everything here is integer or :class:`fractions.Fraction` arithmetic.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Iterable, Sequence


class DomainError(ValueError):
    """Raised when an argument lies outside the domain of an operation."""


def _check_n(n: int) -> None:
    if not isinstance(n, int) or n < 1:
        raise DomainError(f"code length must be a positive integer, got {n!r}")


def _check_index(name: str, v: int, n: int) -> None:
    if not isinstance(v, int) or not 0 <= v <= n:
        raise DomainError(f"{name}={v!r} outside [0, {n}]")


@lru_cache(maxsize=512)
def binomial_row(n: int) -> tuple[int, ...]:
    """C(n, 0), ..., C(n, n)."""
    return tuple(comb(n, k) for k in range(n + 1))


def binom(n: int, k: int) -> int:
    if k < 0 or k > n:
        return 0
    return binomial_row(n)[k]


def kraw_column(n: int, x: int) -> list[int]:
    """Values P_0^n(x), ..., P_n^n(x) via the three-term recurrence in k."""
    _check_n(n)
    _check_index("x", x, n)
    col = [1, n - 2 * x]
    for k in range(1, n):
        num = (n - 2 * x) * col[k] - (n - k + 1) * col[k - 1]
        q, r = divmod(num, k + 1)
        assert r == 0
        col.append(q)
    return col[: n + 1]


@lru_cache(maxsize=64)
def kraw_table(n: int) -> tuple[tuple[int, ...], ...]:
    """table[k][x] = P_k^n(x) for 0 <= k, x <= n."""
    cols = [kraw_column(n, x) for x in range(n + 1)]
    return tuple(tuple(cols[x][k] for x in range(n + 1)) for k in range(n + 1))


def kraw_value(n: int, k: int, x: int) -> int:
    """P_k^n(x) for integers 0 <= k, x <= n."""
    _check_n(n)
    _check_index("k", k, n)
    _check_index("x", x, n)
    return kraw_table(n)[k][x]


def kraw_value_sum(n: int, k: int, x: int) -> int:
    """P_k^n(x) from the alternating binomial sum. Slow; kept as a reference."""
    _check_n(n)
    _check_index("k", k, n)
    _check_index("x", x, n)
    return sum((-1) ** j * comb(x, j) * comb(n - x, k - j) for j in range(k + 1))


def kraw_value_at_zero(n: int, k: int) -> int:
    _check_n(n)
    _check_index("k", k, n)
    return binom(n, k)


def _fraction(v) -> Fraction:
    if isinstance(v, str):
        return Fraction(v.strip())
    return Fraction(v)


@dataclass(frozen=True)
class KrawPoly:
    """A polynomial sum_j coeffs[j] * P_j^n(x) with exact coefficients.

    The length ``n`` is fixed; use :func:`reduce_length` to move to ``n - 1``.
    """

    n: int
    coeffs: tuple[Fraction, ...]

    def __post_init__(self):
        _check_n(self.n)
        cs = tuple(_fraction(c) for c in self.coeffs)
        if len(cs) != self.n + 1:
            raise DomainError(f"expected {self.n + 1} coefficients, got {len(cs)}")
        object.__setattr__(self, "coeffs", cs)

    @classmethod
    def from_terms(cls, n: int, terms: dict[int, object]) -> "KrawPoly":
        """Build from a sparse {degree: coefficient} map; repeated degrees are summed by the caller."""
        cs = [Fraction(0)] * (n + 1)
        for j, c in terms.items():
            _check_index("degree", j, n)
            cs[j] += _fraction(c)
        return cls(n, tuple(cs))

    @classmethod
    def basis(cls, n: int, j: int) -> "KrawPoly":
        return cls.from_terms(n, {j: 1})

    def __call__(self, x: int) -> Fraction:
        return kraw_eval(self, x)

    def values(self) -> list[Fraction]:
        return [kraw_eval(self, x) for x in range(self.n + 1)]

    def __add__(self, other: "KrawPoly") -> "KrawPoly":
        if not isinstance(other, KrawPoly):
            return NotImplemented
        if other.n != self.n:
            raise DomainError(f"basis mismatch: n={self.n} vs n={other.n}")
        return KrawPoly(self.n, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def scale(self, c) -> "KrawPoly":
        c = _fraction(c)
        return KrawPoly(self.n, tuple(c * a for a in self.coeffs))

    def to_json(self) -> str:
        return json.dumps(rational_strings(self.coeffs))

    @classmethod
    def from_json(cls, text: str) -> "KrawPoly":
        items = json.loads(text)
        return cls(len(items) - 1, tuple(Fraction(s) for s in items))


def rational_strings(values: Iterable[Fraction]) -> list[str]:
    """Render rationals as "p/q" strings (denominator always present)."""
    out = []
    for v in values:
        v = Fraction(v)
        out.append(f"{v.numerator}/{v.denominator}")
    return out


def kraw_eval(poly: KrawPoly, x: int) -> Fraction:
    _check_index("x", x, poly.n)
    table = kraw_table(poly.n)
    return sum((c * table[j][x] for j, c in enumerate(poly.coeffs) if c), Fraction(0))


def kraw_expand(n: int, values: Sequence) -> KrawPoly:
    """Coefficients f_i = 2^-n sum_j f(j) P_j^n(i) of the function with the given values on 0..n."""
    _check_n(n)
    if len(values) != n + 1:
        raise DomainError(f"expected {n + 1} values, got {len(values)}")
    vals = [_fraction(v) for v in values]
    table = kraw_table(n)
    scale = Fraction(1, 2**n)
    coeffs = []
    for i in range(n + 1):
        s = sum((vals[j] * table[j][i] for j in range(n + 1) if vals[j]), Fraction(0))
        coeffs.append(s * scale)
    return KrawPoly(n, tuple(coeffs))


def reduce_length(poly: KrawPoly) -> KrawPoly:
    """Rewrite over length n - 1 with mu_j = a_j + a_{j+1}; values agree on 0..n-1."""
    n = poly.n
    if n < 2:
        raise DomainError("reduce_length needs n >= 2")
    a = poly.coeffs
    return KrawPoly(n - 1, tuple(a[j] + a[j + 1] for j in range(n)))
