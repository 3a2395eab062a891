"""Closed-form bounds, the complement identity, recursions and the aggregator."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import isqrt

from . import lp as _lp
from .result import BoundResult, Direction

F = Fraction
ZERO = F(0)


class BoundsError(ValueError):
    pass


class InconsistentBounds(AssertionError):
    """A lower bound exceeded an upper bound for the same (n, M)."""


def _check_range(n: int, M: int) -> None:
    if not isinstance(n, int) or n < 1:
        raise BoundsError(f"n must be a positive integer, got {n!r}")
    if not isinstance(M, int) or not 1 <= M <= 2**n:
        raise BoundsError(f"M={M!r} outside [1, 2^{n}]")


def _lower(n, M, value, *tags) -> BoundResult:
    return BoundResult(n, M, Direction.LOWER, value, tags)


def exact_small_M(n: int, M: int) -> Fraction | None:
    """Known exact value of beta(n, M) for M <= n + 1, else None."""
    if M < 1:
        return None
    if M == 1:
        return ZERO
    if M > n + 1:
        return None
    if M == 4:
        return F(1)
    if M == 8:
        return F(3, 2)
    return 2 * F(M - 1, M) ** 2


def closed_form_lower(n: int, M: int) -> list[BoundResult]:
    """Every published closed-form lower bound whose hypotheses hold at (n, M)."""
    _check_range(n, M)
    out: list[tuple[str, Fraction]] = []
    half = 2 ** (n - 1)
    quarter = F(2**n, 4)
    out.append(("althofer-sillke", F(n + 1, 2) - F(half, M)))
    if M % 2 == 1:
        out.append(("xia-fu-odd", F(n + 1, 2) - F(half, M) + F(2**n - n - 1, 2 * M * M)))
    if M % 4 == 2:
        out.append(("fu-wei-yeu-mod4", F(n + 1, 2) - F(half, M) + F(2**n - 2 * n, M * M)))
    if M <= half:
        out.append(("fu-wei-yeu-half", F(n, 2) - quarter / M))
    if M % 2 == 1 and M <= half - 1:
        out.append(("fu-wei-yeu-odd", F(n, 2) - quarter / M + F(half - n, 2 * M * M)))
    if n > 2:
        d = n - 2 if n % 2 == 0 else n - 1
        out.append(("lambda-top-two", F(n, 2) - quarter / M + (quarter / M - 1) / d))
    out.append(("alpha-linear", 1 - F(1, M)))
    if n >= 2:
        out.append(("alpha-pn", F(3, 2) - F(2, M)))
    if n % 2 == 0:
        out.append(("alpha-half", F(3 * n, n + 2) - F(n, M)))
    elif n > 1:
        out.append(("alpha-half", F(3 * (n + 1), n + 3) - F(n + 1, M)))
    if n > 3:
        r = n % 4
        if r == 0:
            v = F(7 * n + 2, 2 * (n + 2)) - F(2 * n, M)
        elif r == 1:
            v = F(7 * n - 5, 2 * (n + 1)) - F(2 * (n - 1), M)
        elif r == 2:
            v = F(7 * n + 16, 2 * (n + 4)) - F(2 * (n + 2), M)
        else:
            v = F(7 * n + 9, 2 * (n + 3)) - F(2 * (n + 1), M)
        out.append(("alpha-mod4", v))
    return [_lower(n, M, max(v, ZERO), tag) for tag, v in out]


def _complement_value(n: int, M: int, b: Fraction) -> Fraction:
    Mc = 2**n - M
    return F(n, 2) - F(M * M, Mc * Mc) * (F(n, 2) - b)


def complement_transfer(n: int, M: int, known: BoundResult) -> BoundResult:
    """Carry a bound on beta(n, M) to beta(n, 2^n - M); the map is increasing."""
    if not 1 <= M <= 2**n - 1:
        raise BoundsError(f"complement transfer needs 1 <= M <= 2^n - 1, got M={M}")
    if known.value > F(n, 2):
        raise BoundsError(f"bound {known.value} exceeds n/2")
    tags = tuple(f"complement[{t}]" for t in known.provenance) or ("complement",)
    return BoundResult(n, 2**n - M, known.direction, _complement_value(n, M, known.value), tags)


def recursive_xf(n: int, M: int, b, rounding: str = "down") -> Fraction:
    """Square-root recursion from beta(n, M) >= b to a bound on beta(n, M + 1).

    The square root is bracketed rationally; ``rounding="down"`` returns a
    value no larger than the true right-hand side (a valid lower bound),
    ``"up"`` one no smaller. Either is within 1e-30 of the true value.
    """
    b = F(b)
    if b < 0 or b > F(n, 2):
        raise BoundsError(f"need 0 <= b <= n/2, got b={b}")
    if M < 1:
        raise BoundsError("M must be positive")
    if rounding not in ("down", "up"):
        raise BoundsError(f"rounding must be 'down' or 'up', got {rounding!r}")
    p, q = b.numerator, b.denominator
    # sqrt(1 - 2b/n) = sqrt(num / D) with D = nq; bracket sqrt(num * D) / D at scale 10^digits
    D = n * q
    num = D - 2 * p
    scale = 10 ** (35 + len(str(n)) + len(str(M)))
    s = isqrt(num * D * scale * scale)
    if rounding == "down" and s * s != num * D * scale * scale:
        s += 1
    den = D * scale
    # M^2/(M+1)^2 * b + M n/(M+1)^2 * (1 - s/den), over one common denominator
    top = M * M * p * den + M * n * q * (den - s)
    return F(top, q * den * (M + 1) ** 2)


def recursive_monotone(n: int, M: int, b) -> Fraction:
    """beta(n, M + 1) >= M^2 / (M^2 - 1) * beta(n, M)."""
    if M < 2:
        raise BoundsError("the monotone recursion needs M >= 2")
    return F(M * M, M * M - 1) * F(b)


# aggregator ----------------------------------------------------------------

_PRIORITY = ("exact", "lp", "theorem", "complement", "recursion", "trivial")


def _category(tag: str) -> str:
    if tag.startswith("exact"):
        return "exact"
    if tag.startswith("lp-"):
        return "lp"
    if tag.startswith("complement"):
        return "complement"
    if tag.startswith("recursion"):
        return "recursion"
    if tag == "trivial":
        return "trivial"
    return "theorem"


def _merge(n: int, M: int, cands: list[BoundResult]) -> BoundResult:
    best = max(c.value for c in cands)
    tags: list[str] = []
    for c in cands:
        if c.value == best:
            tags.extend(t for t in c.provenance if t not in tags)
    tags.sort(key=lambda t: _PRIORITY.index(_category(t)))
    return _lower(n, M, best, *tags)


@dataclass(frozen=True)
class Settings:
    lp_max_n: int = 64
    dp_window: int = 1024


DEFAULT_SETTINGS = Settings()


def lp_lower(n: int, M: int) -> list[BoundResult]:
    """The LP bounds applicable to M's residue class."""
    out = [_lp.lp_bound_bside(n, M), _lp.lp_bound_aside(n, M)]
    if M % 2 == 1:
        out.append(_lp.lp_bound_odd(n, M))
    elif M % 4 == 2:
        out.append(_lp.lp_bound_mod4(n, M))
    return out


@lru_cache(maxsize=65536)
def direct_lower(n: int, M: int, lp_max_n: int = 64) -> BoundResult:
    """Best bound at (n, M) from non-recursive sources alone."""
    _check_range(n, M)
    cands = [_lower(n, M, ZERO, "trivial")]
    ex = exact_small_M(n, M)
    if ex is not None:
        cands.append(_lower(n, M, ex, "exact-small-M"))
    cands += closed_form_lower(n, M)
    if n <= lp_max_n:
        cands += lp_lower(n, M)
    return _merge(n, M, cands)


def _step(n: int, M: int, prev: BoundResult | None, settings: Settings) -> BoundResult:
    direct = direct_lower(n, M, settings.lp_max_n)
    cands = [direct]
    Mc = 2**n - M
    if Mc >= 1:
        comp = direct_lower(n, Mc, settings.lp_max_n)
        if comp.value <= F(n, 2):
            cands.append(complement_transfer(n, Mc, comp))
    if prev is not None:
        src = f"M'={M - 1}"
        cands.append(_lower(n, M, recursive_xf(n, M - 1, prev.value), f"recursion-xf({src})"))
        if M - 1 >= 2:
            cands.append(_lower(n, M, recursive_monotone(n, M - 1, prev.value), f"recursion-monotone({src})"))
    return _merge(n, M, cands)


_CHAINS: dict[tuple[int, Settings], list[BoundResult]] = {}


def _chain_from_one(n: int, M_to: int, settings: Settings) -> list[BoundResult]:
    """Forward pass started at M = 1, grown on demand and kept between calls."""
    chain = _CHAINS.setdefault((n, settings), [])
    while len(chain) < M_to:
        chain.append(_step(n, len(chain) + 1, chain[-1] if chain else None, settings))
    return chain


def lower_sweep(n: int, M_from: int, M_to: int, settings: Settings = DEFAULT_SETTINGS) -> list[BoundResult]:
    """best_lower for M_from..M_to, sharing one forward pass of the recursions."""
    _check_range(n, M_from)
    _check_range(n, M_to)
    start = max(1, M_from - settings.dp_window)
    if start == 1:
        return _chain_from_one(n, M_to, settings)[M_from - 1 : M_to]
    out = []
    prev = None
    for M in range(start, M_to + 1):
        prev = _step(n, M, prev, settings)
        if M >= M_from:
            out.append(prev)
    return out


def best_lower(n: int, M: int, settings: Settings = DEFAULT_SETTINGS) -> BoundResult:
    """Largest certified lower bound on beta(n, M) with all tied provenance tags.

    Sources: exact small-M values, closed forms, the LP programs (for
    n <= settings.lp_max_n), the complement of the direct bound at 2^n - M,
    and both recursions propagated forward from M' = M - dp_window.
    """
    return lower_sweep(n, M, M, settings)[0]


def best_upper(n: int, M: int) -> BoundResult | None:
    """Smallest average distance among the available explicit constructions."""
    from .search import constructions_for

    _check_range(n, M)
    cands = []
    ex = exact_small_M(n, M)
    if ex is not None:
        cands.append(BoundResult(n, M, Direction.UPPER, ex, ("exact-small-M",)))
    for tag, value in constructions_for(n, M):
        cands.append(BoundResult(n, M, Direction.UPPER, value, (tag,)))
    if not cands:
        return None
    best = min(c.value for c in cands)
    tags = [t for c in cands if c.value == best for t in c.provenance]
    return BoundResult(n, M, Direction.UPPER, best, tags)


def bracket(n: int, M: int, settings: Settings = DEFAULT_SETTINGS) -> tuple[BoundResult, BoundResult | None]:
    lo = best_lower(n, M, settings)
    hi = best_upper(n, M)
    if hi is not None and lo.value > hi.value:
        raise InconsistentBounds(f"({n}, {M}): lower {lo.value} > upper {hi.value}")
    return lo, hi
