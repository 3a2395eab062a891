"""Binary codes, distance distributions and average distance."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .krawtchouk import kraw_table


class CodeParseError(ValueError):
    def __init__(self, lineno: int, msg: str):
        super().__init__(f"line {lineno}: {msg}")
        self.lineno = lineno


@dataclass(frozen=True)
class Code:
    """A set of distinct n-bit words, stored as Python ints.

    Bit ``n - 1 - p`` of a word is the character at position ``p`` of its
    string form, so ``int(s, 2)`` and :meth:`word_str` are inverse.
    """

    n: int
    words: tuple[int, ...]

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("code length must be positive")
        ws = tuple(sorted(self.words))
        if not ws:
            raise ValueError("a code must contain at least one word")
        if len(set(ws)) != len(ws):
            raise ValueError("duplicate codewords")
        if ws[0] < 0 or ws[-1] >> self.n:
            raise ValueError(f"word does not fit in {self.n} bits")
        object.__setattr__(self, "words", ws)

    @classmethod
    def from_strings(cls, strings: Iterable[str]) -> "Code":
        strings = list(strings)
        return cls(len(strings[0]), tuple(int(s, 2) for s in strings))

    @property
    def M(self) -> int:
        return len(self.words)

    def __len__(self) -> int:
        return len(self.words)

    def word_str(self, w: int) -> str:
        return format(w, f"0{self.n}b")

    def strings(self) -> list[str]:
        return [self.word_str(w) for w in self.words]

    def translate(self, t: int) -> "Code":
        return Code(self.n, tuple(w ^ t for w in self.words))


@dataclass(frozen=True)
class DistributionPair:
    n: int
    M: int
    A: tuple[Fraction, ...]
    B: tuple[Fraction, ...]

    def delsarte_violations(self) -> list[int]:
        """Indices k with B_k < 0 (never nonempty for a genuine code)."""
        return [k for k, b in enumerate(self.B) if b < 0]


def pair_distance_counts(code: Code) -> list[int]:
    """counts[i] = number of ordered pairs (c, c') with d(c, c') = i."""
    counts = [0] * (code.n + 1)
    ws = code.words
    counts[0] = len(ws)
    for a in range(len(ws)):
        wa = ws[a]
        for b in range(a + 1, len(ws)):
            counts[(wa ^ ws[b]).bit_count()] += 2
    return counts


def dual_distribution(n: int, M: int, A) -> tuple[Fraction, ...]:
    """B_k = (1/M) sum_i P_k^n(i) A_i."""
    table = kraw_table(n)
    return tuple(
        sum((table[k][i] * A[i] for i in range(n + 1) if A[i]), Fraction(0)) / M
        for k in range(n + 1)
    )


def distance_distribution(code: Code) -> DistributionPair:
    counts = pair_distance_counts(code)
    M = code.M
    A = tuple(Fraction(c, M) for c in counts)
    return DistributionPair(code.n, M, A, dual_distribution(code.n, M, A))


def average_distance(code: Code) -> Fraction:
    """Mean Hamming distance over all M^2 ordered pairs."""
    counts = pair_distance_counts(code)
    return Fraction(sum(i * c for i, c in enumerate(counts)), code.M**2)


def average_distance_from_b1(n: int, B1) -> Fraction:
    return (n - Fraction(B1)) / 2


def parse_code(text: str) -> Code:
    """Parse the one-word-per-line format ('#' comments and blank lines ignored)."""
    words: list[str] = []
    seen: dict[str, int] = {}
    n = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        bad = set(line) - {"0", "1"}
        if bad:
            raise CodeParseError(lineno, f"unexpected character(s) {''.join(sorted(bad))!r}")
        if n is None:
            n = len(line)
        elif len(line) != n:
            raise CodeParseError(lineno, f"word length {len(line)} differs from {n}")
        if line in seen:
            raise CodeParseError(lineno, f"duplicate word {line} (first on line {seen[line]})")
        seen[line] = lineno
        words.append(line)
    if not words:
        raise CodeParseError(0, "no codewords found")
    return Code.from_strings(words)


def format_code(code: Code, comments: Iterable[str] = ()) -> str:
    lines = [f"# {c}" for c in comments]
    lines.extend(code.strings())
    return "\n".join(lines) + "\n"


def average_distance_by_columns(code: Code) -> Fraction:
    """Same quantity via per-coordinate counts: (2/M^2) sum_p ones_p * zeros_p."""
    M = code.M
    total = 0
    for p in range(code.n):
        ones = sum((w >> p) & 1 for w in code.words)
        total += ones * (M - ones)
    return Fraction(2 * total, M * M)
