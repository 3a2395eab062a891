"""Exhaustive search for beta(n, M) at small n, and explicit constructions."""

from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb

from .codes import Code, average_distance_by_columns

ADVISORY_MAX_N = 5


class SearchError(ValueError):
    pass


@dataclass
class SearchResult:
    n: int
    M: int
    value: Fraction
    codes: list[Code]
    nodes: int
    complete: bool = True


class BudgetExceeded(RuntimeError):
    """The node budget ran out; ``best`` holds the incumbent found so far (may be None)."""

    def __init__(self, best: SearchResult | None, nodes: int):
        msg = f"node budget exhausted after {nodes} nodes"
        if best is not None:
            msg += f"; best so far {best.value}"
        super().__init__(msg)
        self.best = best
        self.nodes = nodes


@dataclass
class SearchConfig:
    n: int
    M: int
    fix_zero: bool = True
    lex_prune: bool = True
    node_budget: int | None = None
    all_minimizers: bool = False
    threads: int = 1
    allow_large: bool = False

    def __post_init__(self):
        if self.n < 1:
            raise SearchError("n must be positive")
        if not 1 <= self.M <= 2**self.n:
            raise SearchError(f"M={self.M} outside [1, 2^{self.n}]")
        if self.n > ADVISORY_MAX_N and not self.allow_large:
            raise SearchError(f"n={self.n} exceeds the advisory limit {ADVISORY_MAX_N}; set allow_large to override")


@dataclass
class _State:
    best: int | None = None
    found: list[tuple[int, ...]] = field(default_factory=list)
    nodes: int = 0


def _dfs(cfg: SearchConfig, dist, prefix: tuple[int, ...], prefix_sum: int, start: int, state: _State) -> None:
    """Enumerate increasing completions of ``prefix``; sums count each unordered pair once."""
    N = 2**cfg.n
    M = cfg.M
    budget = cfg.node_budget
    strict = cfg.all_minimizers
    chosen = list(prefix)

    def rec(start: int, S: int) -> None:
        state.nodes += 1
        if budget is not None and state.nodes > budget:
            raise _OutOfBudget
        k = len(chosen)
        r = M - k
        if r == 0:
            if state.best is None or S < state.best:
                state.best = S
                state.found = [tuple(chosen)]
            elif S == state.best and strict:
                state.found.append(tuple(chosen))
            return
        if cfg.lex_prune and state.best is not None:
            # every pair still to be formed has distance >= 1
            lb = S + r * k + r * (r - 1) // 2
            if lb > state.best or (lb == state.best and not strict):
                return
        for w in range(start, N - r + 1):
            row = dist[w]
            add = 0
            for c in chosen:
                add += row[c]
            chosen.append(w)
            rec(w + 1, S + add)
            chosen.pop()

    rec(start, prefix_sum)


class _OutOfBudget(Exception):
    pass


def _dist_table(n: int) -> list[list[int]]:
    N = 2**n
    return [[(a ^ b).bit_count() for b in range(N)] for a in range(N)]


def _run_branch(cfg: SearchConfig, prefix: tuple[int, ...]):
    dist = _dist_table(cfg.n)
    s = sum(dist[a][b] for a, b in itertools.combinations(prefix, 2))
    state = _State()
    try:
        _dfs(cfg, dist, prefix, s, prefix[-1] + 1, state)
    except _OutOfBudget:
        return state.best, state.found, state.nodes, False
    return state.best, state.found, state.nodes, True


def brute_force_beta(cfg: SearchConfig) -> SearchResult:
    """Exact beta(n, M) by branch and bound over increasing word sequences.

    With ``fix_zero`` the all-zero word is forced into the code, which is
    harmless because average distance is translation invariant. With
    ``all_minimizers`` ties are kept and pruning becomes strict, so every
    minimizer of the enumerated canonical form is returned.
    """
    n, M = cfg.n, cfg.M
    N = 2**n
    if M == 1:
        return SearchResult(n, M, Fraction(0), [Code(n, (0,))], 1)
    if cfg.fix_zero:
        prefixes = [(0, w) for w in range(1, N - M + 2)]
    else:
        prefixes = [(w,) for w in range(0, N - M + 1)]

    if cfg.threads > 1:
        with ProcessPoolExecutor(max_workers=cfg.threads) as ex:
            results = list(ex.map(_run_branch, [cfg] * len(prefixes), prefixes))
    else:
        # one shared incumbent keeps pruning tight across branches
        dist = _dist_table(n)
        state = _State()
        complete = True
        try:
            for p in prefixes:
                s = sum(dist[a][b] for a, b in itertools.combinations(p, 2))
                _dfs(cfg, dist, p, s, p[-1] + 1, state)
        except _OutOfBudget:
            complete = False
        results = [(state.best, state.found, state.nodes, complete)]

    best = None
    found: list[tuple[int, ...]] = []
    nodes = 0
    complete = True
    for b, f, k, ok in results:
        nodes += k
        complete &= ok
        if b is None:
            continue
        if best is None or b < best:
            best, found = b, list(f)
        elif b == best:
            found.extend(f)
    if not cfg.all_minimizers:
        found = found[:1]
    incumbent = None
    if best is not None:
        incumbent = SearchResult(n, M, Fraction(2 * best, M * M), [Code(n, w) for w in sorted(found)], nodes, complete)
    if not complete:
        raise BudgetExceeded(incumbent, nodes)
    return incumbent


def beta(n: int, M: int, **kw) -> Fraction:
    return brute_force_beta(SearchConfig(n, M, **kw)).value


# constructions ------------------------------------------------------------


def _unit(n: int, i: int) -> int:
    """Word with a single 1 in position i (1-based, leftmost first)."""
    return 1 << (n - i)


def construct_two_n(n: int) -> Code:
    """{0} + all weight-one words + words with ones in position 1 and one other position."""
    if n < 2:
        raise SearchError("the 2n construction needs n >= 2")
    e1 = _unit(n, 1)
    words = [0] + [_unit(n, i) for i in range(1, n + 1)] + [e1 | _unit(n, j) for j in range(2, n + 1)]
    return Code(n, tuple(words))


def two_n_average_distance(n: int) -> Fraction:
    return Fraction(5, 2) - Fraction(4 * n - 2, n * n)


def construct_constant_weight(n: int, w: int, max_words: int = 1 << 20) -> Code:
    if not 0 <= w <= n:
        raise SearchError(f"weight {w} outside [0, {n}]")
    if comb(n, w) > max_words:
        raise SearchError(f"C({n},{w}) = {comb(n, w)} words exceeds the budget {max_words}")
    words = [sum(1 << p for p in pos) for pos in itertools.combinations(range(n), w)]
    return Code(n, tuple(words))


def construct_subcube(n: int, k: int) -> Code:
    """All words supported on the last k positions (2^k words)."""
    if not 0 <= k <= n:
        raise SearchError(f"dimension {k} outside [0, {n}]")
    return Code(n, tuple(range(2**k)))


def _direct_constructions(n: int, M: int, max_words: int):
    if M & (M - 1) == 0 and M.bit_length() - 1 <= n:
        k = M.bit_length() - 1
        yield f"subcube(k={k})", Fraction(k, 2)
    if n >= 2 and M == 2 * n:
        yield "two-n", average_distance_by_columns(construct_two_n(n))
    if M <= max_words:
        for w in range(n + 1):
            if comb(n, w) == M:
                yield f"constant-weight(w={w})", average_distance_by_columns(construct_constant_weight(n, w))


def constructions_for(n: int, M: int, max_words: int = 1 << 14) -> list[tuple[str, Fraction]]:
    """Average distances of explicit (n, M) codes, including complements of smaller ones."""
    out = list(_direct_constructions(n, M, max_words))
    Mc = 2**n - M
    if 1 <= Mc < 2**n:
        half = Fraction(n, 2)
        for tag, v in _direct_constructions(n, Mc, max_words):
            # the complement identity holds code by code
            out.append((f"complement[{tag}]", half - Fraction(Mc * Mc, M * M) * (half - v)))
    return out
