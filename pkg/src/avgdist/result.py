"""Bound records shared by the LP, bound and CLI layers."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from decimal import Decimal, localcontext
from fractions import Fraction


class Direction(str, enum.Enum):
    LOWER = "lower"
    UPPER = "upper"


@dataclass(frozen=True)
class BoundResult:
    n: int
    M: int
    direction: Direction
    value: Fraction
    provenance: tuple[str, ...] = field(default_factory=tuple)

    def __post_init__(self):
        object.__setattr__(self, "value", Fraction(self.value))
        object.__setattr__(self, "provenance", tuple(self.provenance))

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "M": self.M,
            "direction": self.direction.value,
            "exact": fmt_fraction(self.value),
            "decimal": fmt_decimal(self.value),
            "provenance": list(self.provenance),
        }


def fmt_fraction(v) -> str:
    v = Fraction(v)
    return f"{v.numerator}/{v.denominator}"


def fmt_decimal(v, digits: int = 12) -> str:
    """Correctly rounded decimal rendering with ``digits`` significant digits."""
    v = Fraction(v)
    if v == 0:
        return "0"
    with localcontext() as ctx:
        ctx.prec = digits
        d = Decimal(v.numerator) / Decimal(v.denominator)
    return str(d)


def parse_fraction(s: str) -> Fraction:
    return Fraction(s.strip())
