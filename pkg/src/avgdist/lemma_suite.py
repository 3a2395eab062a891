"""Exhaustive exact checks of the auxiliary Krawtchouk inequalities and values.

Each check evaluates Krawtchouk values with :mod:`avgdist.krawtchouk` and
binomials only; none of them reuse the certificate coefficient formulas.
"""

from __future__ import annotations

import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from .krawtchouk import binom, kraw_column, kraw_value

F = Fraction

DEFAULT_N_MAX_EVEN = 200
DEFAULT_N_MAX_ODD = 201


class LemmaDomainError(ValueError):
    pass


@dataclass
class SweepReport:
    lemma: str
    range_checked: str
    checked: int
    counterexamples: list[dict] = field(default_factory=list)
    elapsed: float = 0.0

    @property
    def ok(self) -> bool:
        return not self.counterexamples

    def summary(self) -> str:
        status = "ok" if self.ok else f"{len(self.counterexamples)} counterexample(s)"
        return f"{self.lemma}: {self.range_checked}: checked {self.checked} pairs: {status}"

    def to_dict(self) -> dict:
        return {
            "lemma": self.lemma,
            "range": self.range_checked,
            "checked": self.checked,
            "counterexamples": self.counterexamples,
            "elapsed": round(self.elapsed, 6),
            "ok": self.ok,
        }


def default_n_max(odd: bool = False) -> int:
    env = os.environ.get("AVGDIST_NMAX")
    if env:
        return int(env)
    return DEFAULT_N_MAX_ODD if odd else DEFAULT_N_MAX_EVEN


def _fr(v: Fraction) -> str:
    return f"{v.numerator}/{v.denominator}"


# per-n workers: return (pairs checked, counterexamples)


def _estimation_even_n(n: int):
    x = n // 2 + 1
    col = kraw_column(n, x)
    bad = []
    checked = 0
    for i in range(2, n // 2 + 1):
        checked += 1
        if not abs(col[i]) < binom(n, i // 2):
            bad.append({"n": n, "i": i, "value": col[i], "limit": binom(n, i // 2)})
    return checked, bad


def _estimation_odd_n(n: int):
    x = (n + 1) // 2
    col = kraw_column(n, x)
    bad = []
    checked = 0
    for i in range(2, (n - 1) // 2 + 1):
        checked += 1
        if not abs(col[i]) < binom(n, i // 2):
            bad.append({"n": n, "i": i, "value": col[i], "limit": binom(n, i // 2)})
    return checked, bad


def _monotone_even_n(n: int):
    bad = []
    checked = 0
    rhs = F(n * (n - 1), n + 2)
    for i in range(6, n // 2 + 1):
        checked += 1
        lhs = F((i - 3) * binom(n, i), binom(n, i // 2))
        if not lhs > rhs:
            bad.append({"n": n, "i": i, "lhs": _fr(lhs), "rhs": _fr(rhs)})
    return checked, bad


def _monotone_odd_n(n: int):
    bad = []
    checked = 0
    rhs = F(2 * n * (n - 2), n + 1)
    for i in range(7, (n - 1) // 2 + 1):
        checked += 1
        lhs = F((i - 4) * binom(n, i), binom(n, i // 2))
        if not lhs > rhs:
            bad.append({"n": n, "i": i, "lhs": _fr(lhs), "rhs": _fr(rhs)})
    return checked, bad


def _sweep(lemma: str, worker: Callable, ns: list[int], desc: str, threads: int = 1) -> SweepReport:
    t0 = time.perf_counter()
    if threads > 1 and len(ns) > 1:
        with ProcessPoolExecutor(max_workers=threads) as ex:
            parts = list(ex.map(worker, ns, chunksize=8))
    else:
        parts = [worker(n) for n in ns]
    checked = sum(p[0] for p in parts)
    bad = [c for p in parts for c in p[1]]
    return SweepReport(lemma, desc, checked, bad, time.perf_counter() - t0)


def check_estimation_even(n_max: int | None = None, threads: int = 1) -> SweepReport:
    """|P_i^n(n/2 + 1)| < C(n, floor(i/2)) for even n <= n_max, 2 <= i <= n/2."""
    n_max = default_n_max() if n_max is None else n_max
    ns = list(range(2, n_max + 1, 2))
    return _sweep("estimation-even", _estimation_even_n, ns, f"even n in [2, {n_max}]", threads)


def check_estimation_odd(n_max: int | None = None, threads: int = 1) -> SweepReport:
    """|P_i^n((n+1)/2)| < C(n, floor(i/2)) for odd n <= n_max, 2 <= i <= (n-1)/2."""
    n_max = default_n_max(odd=True) if n_max is None else n_max
    ns = list(range(1, n_max + 1, 2))
    return _sweep("estimation-odd", _estimation_odd_n, ns, f"odd n in [1, {n_max}]", threads)


def check_monotone_even(n_max: int | None = None, threads: int = 1) -> SweepReport:
    """(i-3) C(n,i) / C(n, floor(i/2)) > n(n-1)/(n+2) for even n, 6 <= i <= n/2."""
    n_max = default_n_max() if n_max is None else n_max
    ns = list(range(2, n_max + 1, 2))
    return _sweep("monotone-even", _monotone_even_n, ns, f"even n in [2, {n_max}]", threads)


def check_monotone_odd(n_max: int | None = None, threads: int = 1) -> SweepReport:
    """(i-4) C(n,i) / C(n, floor(i/2)) > 2n(n-2)/(n+1) for odd n, 7 <= i <= (n-1)/2."""
    n_max = default_n_max(odd=True) if n_max is None else n_max
    ns = list(range(1, n_max + 1, 2))
    return _sweep("monotone-odd", _monotone_odd_n, ns, f"odd n in [1, {n_max}]", threads)


# single-n value checks -----------------------------------------------------


def _half_even_majorant(n: int, i: int, mid: list[int]) -> Fraction:
    """n(4-n)/(n+2) + P_1(i) + 4 C(n,2) |P_i(n/2+1)| / ((n+2) C(n,i))."""
    return F(n * (4 - n), n + 2) + (n - 2 * i) + F(4 * binom(n, 2) * abs(mid[i]), (n + 2) * binom(n, i))


def _midpoint_items(n: int) -> list[tuple[str, Fraction, Fraction]]:
    mid = kraw_column(n, n // 2 + 1)
    closed = {
        1: F(-2),
        2: F(4 - n, 2),
        3: F(n - 2),
        4: F((n - 2) * (n - 8), 8),
        5: F((n - 2) * (4 - n), 4),
    }
    items = [(f"P_{i}(n/2+1)", F(mid[i]), closed[i]) for i in range(1, 6) if i <= n]
    at = lambda i: _half_even_majorant(n, i, mid)  # noqa: E731
    items += [
        ("majorant(n)", at(n), F(0)),
        ("majorant(n-1)", at(n - 1), F(2 * n * (4 - n), n + 2)),
        ("majorant(n-2)", at(n - 2), F(2 * n * (4 - n), n + 2)),
        ("majorant(n-3)", at(n - 3), F(2 * (6 - n))),
    ]
    if n >= 8:
        items += [
            ("majorant(4)", at(4), -2 - F(6, n - 3)),
            ("majorant(5)", at(5), -4 - F(12 * (n - 8), (n + 2) * (n - 3))),
        ]
    return items


def check_midpoint_values(n: int) -> SweepReport:
    """Closed forms for P_i^n(n/2 + 1), i <= 5, and the majorant's endpoint values."""
    if n % 2 or n < 4:
        raise LemmaDomainError(f"midpoint values need n even and n >= 4, got {n}")
    t0 = time.perf_counter()
    items = _midpoint_items(n)
    bad = [{"n": n, "item": k, "direct": _fr(d), "closed_form": _fr(c)} for k, d, c in items if d != c]
    return SweepReport("midpoint", f"n = {n}", len(items), bad, time.perf_counter() - t0)


def _mod4_alpha(n: int, x: int) -> Fraction:
    h = (n + 1) // 2
    c = F(4 * n * (n - 2), (n + 1) * binom(n, h))
    return F((1 - n) * (n - 5), n + 1) + kraw_value(n, 1, x) + c * kraw_value(n, h, x) + kraw_value(n, n, x)


def check_mod4_alpha_values(n: int) -> SweepReport:
    """Displayed values of the n ≡ 1 (mod 4) polynomial at 0..6 and n-6..n."""
    if n % 4 != 1 or n < 9:
        raise LemmaDomainError(f"need n ≡ 1 (mod 4) and n >= 9, got {n}")
    t0 = time.perf_counter()
    near = F(4 * (1 - n), n - 4)
    far1 = -2 * F((n - 5) * (n - 1), n + 1)
    far2 = -F(2 * (n - 9) * (n - 2) * (n - 1), (n + 1) * (n - 4))
    # a list, not a dict: for small n the two ends overlap and both must hold
    expected = [(0, F(4 * (n - 1)))] + [(x, F(0)) for x in range(1, 5)] + [(5, near), (6, near)]
    expected.append((n, -6 * F((n - 1) ** 2, n + 1)))
    expected += [(n - k, far1) for k in range(1, 5)]
    expected += [(n - 5, far2), (n - 6, far2)]
    bad = []
    for x, want in expected:
        got = _mod4_alpha(n, x)
        if got != want:
            bad.append({"n": n, "x": x, "direct": _fr(got), "closed_form": _fr(want)})
    return SweepReport("mod4", f"n = {n}", len(expected), bad, time.perf_counter() - t0)


def sweep_midpoint(n_max: int | None = None) -> SweepReport:
    n_max = default_n_max() if n_max is None else n_max
    t0 = time.perf_counter()
    checked, bad = 0, []
    for n in range(4, n_max + 1, 2):
        r = check_midpoint_values(n)
        checked += r.checked
        bad += r.counterexamples
    return SweepReport("midpoint", f"even n in [4, {n_max}]", checked, bad, time.perf_counter() - t0)


def sweep_mod4(n_max: int | None = None) -> SweepReport:
    n_max = default_n_max(odd=True) if n_max is None else n_max
    t0 = time.perf_counter()
    checked, bad = 0, []
    for n in range(9, n_max + 1, 4):
        r = check_mod4_alpha_values(n)
        checked += r.checked
        bad += r.counterexamples
    return SweepReport("mod4", f"n ≡ 1 mod 4 in [9, {n_max}]", checked, bad, time.perf_counter() - t0)


LEMMAS = {
    "estimation-even": check_estimation_even,
    "monotone-even": check_monotone_even,
    "estimation-odd": check_estimation_odd,
    "monotone-odd": check_monotone_odd,
    "midpoint": sweep_midpoint,
    "mod4": sweep_mod4,
}
