"""Exact rational LP solving and the Delsarte-type programs for average distance.

The solver is a dense two-phase tableau simplex with Bland's rule, so it
terminates; rows are kept as gcd-reduced integer equations and every number
it returns is an exact :class:`Fraction`. Each solution carries a certificate
that :func:`check_solution` re-verifies: dual multipliers for an optimum,
Farkas multipliers for infeasibility, and a feasible point plus an improving
ray for unboundedness.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, lcm
from typing import Sequence

from .certificates import Certificate, Side, verify_certificate
from .krawtchouk import KrawPoly, binom, kraw_table
from .result import BoundResult, Direction

F = Fraction
ZERO = F(0)


class Relation(str, enum.Enum):
    LE = "<="
    GE = ">="
    EQ = "="


class Status(str, enum.Enum):
    OPTIMAL = "optimal"
    INFEASIBLE = "infeasible"
    UNBOUNDED = "unbounded"


@dataclass(frozen=True)
class Constraint:
    coeffs: tuple[Fraction, ...]
    relation: Relation
    rhs: Fraction

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(F(c) for c in self.coeffs))
        object.__setattr__(self, "relation", Relation(self.relation))
        object.__setattr__(self, "rhs", F(self.rhs))

    def lhs(self, x: Sequence[Fraction]) -> Fraction:
        return sum((a * v for a, v in zip(self.coeffs, x) if a and v), ZERO)


@dataclass
class LinearProgram:
    """maximize objective . x + offset subject to the constraints and x >= 0."""

    objective: tuple[Fraction, ...]
    constraints: list[Constraint] = field(default_factory=list)
    names: tuple[str, ...] | None = None
    offset: Fraction = ZERO

    def __post_init__(self):
        self.objective = tuple(F(c) for c in self.objective)
        self.offset = F(self.offset)
        for c in self.constraints:
            if len(c.coeffs) != len(self.objective):
                raise ValueError("constraint width does not match the objective")

    @property
    def num_vars(self) -> int:
        return len(self.objective)

    def add(self, coeffs, relation, rhs) -> None:
        c = Constraint(tuple(coeffs), relation, rhs)
        if len(c.coeffs) != self.num_vars:
            raise ValueError("constraint width does not match the objective")
        self.constraints.append(c)


@dataclass
class LpSolution:
    status: Status
    value: Fraction | None = None
    point: tuple[Fraction, ...] | None = None
    certificate: tuple[Fraction, ...] | None = None
    ray: tuple[Fraction, ...] | None = None


def _reduce(row: list[int]) -> list[int]:
    g = gcd(*row)
    if g > 1:
        return [v // g for v in row]
    return row


def _to_int_row(vals: Sequence[Fraction]) -> list[int]:
    """Positive rescaling of a rational row to integers."""
    den = 1
    for v in vals:
        den = lcm(den, v.denominator)
    return _reduce([int(v * den) for v in vals])


class _Tableau:
    """Fraction-free tableau: each row is an integer equation scaled by some positive factor.

    Row i reads ``sum_j rows[i][j] x_j = rows[i][-1]``; its basic variable has
    coefficient ``rows[i][basis[i]] > 0``. ``z`` holds a positive multiple of
    the current reduced costs, which is all Bland's rule needs.
    """

    def __init__(self, rows: list[list[int]], basis: list[int]):
        self.rows = rows
        self.basis = basis
        self.z: list[int] = []

    def value(self, i: int) -> Fraction:
        row = self.rows[i]
        return F(row[-1], row[self.basis[i]])

    def set_cost(self, cost: Sequence[Fraction]) -> None:
        z = [F(c) for c in cost] + [ZERO]
        for i, b in enumerate(self.basis):
            cb = z[b]
            if cb:
                row = self.rows[i]
                f = cb / row[b]
                z = [zv - f * rv if rv else zv for zv, rv in zip(z, row)]
        self.z = _to_int_row(z)

    def pivot(self, r: int, j: int) -> None:
        prow = self.rows[r]
        if prow[j] < 0:
            prow = [-v for v in prow]
            self.rows[r] = prow
        p = prow[j]
        nz = [k for k, v in enumerate(prow) if v]
        for i, row in enumerate(self.rows):
            if i == r:
                continue
            a = row[j]
            if a:
                new = [v * p for v in row]
                for k in nz:
                    new[k] -= a * prow[k]
                self.rows[i] = _reduce(new)
        a = self.z[j]
        if a:
            new = [v * p for v in self.z]
            for k in nz:
                new[k] -= a * prow[k]
            self.z = _reduce(new)
        self.basis[r] = j

    def run(self, allowed: Sequence[bool]):
        """Maximize with Bland's rule. Returns None at optimum, else an unbounded entering column."""
        rows, basis = self.rows, self.basis
        while True:
            entering = -1
            z = self.z
            for j in range(len(z) - 1):
                if allowed[j] and z[j] > 0:
                    entering = j
                    break
            if entering < 0:
                return None
            leave = -1
            for i, row in enumerate(rows):
                a = row[entering]
                if a > 0:
                    if leave < 0:
                        leave = i
                        continue
                    lrow = rows[leave]
                    # compare row[-1]/a with lrow[-1]/lrow[entering]
                    lhs = row[-1] * lrow[entering]
                    rhs = lrow[-1] * a
                    if lhs < rhs or (lhs == rhs and basis[i] < basis[leave]):
                        leave = i
            if leave < 0:
                return entering
            self.pivot(leave, entering)

    def multipliers(self, cost: Sequence[Fraction], init_cols: Sequence[int]) -> list[Fraction]:
        """c_B B^-1, read off the columns that formed the initial identity basis."""
        out = []
        for c in init_cols:
            s = ZERO
            for r, row in enumerate(self.rows):
                cb = cost[self.basis[r]]
                if cb and row[c]:
                    s += cb * F(row[c], row[self.basis[r]])
            out.append(s)
        return out


def solve(lp: LinearProgram) -> LpSolution:
    nv = lp.num_vars
    cons = lp.constraints
    m = len(cons)
    slack_of: list[int | None] = []
    ncols = nv
    for c in cons:
        if c.relation is Relation.EQ:
            slack_of.append(None)
        else:
            slack_of.append(ncols)
            ncols += 1
    nslack_end = ncols
    signs = []
    frows = []
    init_cols = []
    for i, c in enumerate(cons):
        s = -1 if c.rhs < 0 else 1
        signs.append(s)
        row = [s * a for a in c.coeffs] + [ZERO] * (nslack_end - nv)
        if slack_of[i] is not None:
            row[slack_of[i]] = F(s if c.relation is Relation.LE else -s)
        frows.append((row, s * c.rhs))
    for i in range(m):
        sc = slack_of[i]
        if sc is not None and frows[i][0][sc] == 1:
            init_cols.append(sc)
        else:
            init_cols.append(ncols)
            ncols += 1
    rows = []
    for i, (row, rhs) in enumerate(frows):
        full = row + [ZERO] * (ncols - nslack_end) + [rhs]
        full[init_cols[i]] = F(1)
        rows.append(_to_int_row(full))
    tab = _Tableau(rows, list(init_cols))
    is_art = [False] * nslack_end + [True] * (ncols - nslack_end)

    if ncols > nslack_end:
        cost1 = [ZERO] * nslack_end + [F(-1)] * (ncols - nslack_end)
        tab.set_cost(cost1)
        tab.run([True] * ncols)
        phase1 = sum((-tab.value(i) for i in range(m) if is_art[tab.basis[i]]), ZERO)
        if phase1 < 0:
            ybar = tab.multipliers(cost1, init_cols)
            return LpSolution(Status.INFEASIBLE, certificate=tuple(signs[i] * ybar[i] for i in range(m)))
        for i in range(m):
            if is_art[tab.basis[i]]:
                for j in range(nslack_end):
                    if tab.rows[i][j]:
                        tab.pivot(i, j)
                        break

    cost2 = list(lp.objective) + [ZERO] * (ncols - nv)
    tab.set_cost(cost2)
    unb = tab.run([not a for a in is_art])
    x = [ZERO] * ncols
    for i, b in enumerate(tab.basis):
        x[b] = tab.value(i)
    point = tuple(x[:nv])
    if unb is not None:
        d = [ZERO] * ncols
        d[unb] = F(1)
        for i, b in enumerate(tab.basis):
            row = tab.rows[i]
            d[b] = -F(row[unb], row[b])
        return LpSolution(Status.UNBOUNDED, point=point, ray=tuple(d[:nv]))
    ybar = tab.multipliers(cost2, init_cols)
    y = tuple(signs[i] * ybar[i] for i in range(m))
    value = sum((c * v for c, v in zip(lp.objective, point)), lp.offset)
    return LpSolution(Status.OPTIMAL, value, point, y)


def _relation_ok(rel: Relation, lhs, rhs) -> bool:
    if rel is Relation.LE:
        return lhs <= rhs
    if rel is Relation.GE:
        return lhs >= rhs
    return lhs == rhs


def _sign_ok(rel: Relation, y) -> bool:
    if rel is Relation.LE:
        return y >= 0
    if rel is Relation.GE:
        return y <= 0
    return True


def check_solution(lp: LinearProgram, sol: LpSolution) -> list[str]:
    """Re-verify a solution from its own data with exact arithmetic; [] means sound."""
    problems: list[str] = []
    cons = lp.constraints
    nv = lp.num_vars

    def aty(y):
        return [sum((c.coeffs[j] * y[i] for i, c in enumerate(cons) if y[i]), ZERO) for j in range(nv)]

    if sol.status is Status.INFEASIBLE:
        y = sol.certificate
        if y is None or len(y) != len(cons):
            return ["missing Farkas multipliers"]
        for i, c in enumerate(cons):
            if not _sign_ok(c.relation, y[i]):
                problems.append(f"Farkas multiplier {i} has the wrong sign")
        if any(v < 0 for v in aty(y)):
            problems.append("A^T y has a negative entry")
        if sum((c.rhs * y[i] for i, c in enumerate(cons)), ZERO) >= 0:
            problems.append("b . y is not negative")
        return problems

    x = sol.point
    if x is None or len(x) != nv:
        return ["missing primal point"]
    if any(v < 0 for v in x):
        problems.append("primal point has a negative entry")
    for i, c in enumerate(cons):
        if not _relation_ok(c.relation, c.lhs(x), c.rhs):
            problems.append(f"constraint {i} violated")

    if sol.status is Status.UNBOUNDED:
        d = sol.ray
        if d is None or any(v < 0 for v in d):
            return problems + ["ray missing or not nonnegative"]
        for i, c in enumerate(cons):
            if not _relation_ok(c.relation, c.lhs(d), ZERO):
                problems.append(f"ray leaves constraint {i}")
        if sum((a * v for a, v in zip(lp.objective, d)), ZERO) <= 0:
            problems.append("ray does not improve the objective")
        return problems

    y = sol.certificate
    if y is None or len(y) != len(cons):
        return problems + ["missing dual multipliers"]
    for i, c in enumerate(cons):
        if not _sign_ok(c.relation, y[i]):
            problems.append(f"dual multiplier {i} has the wrong sign")
    red = aty(y)
    for j in range(nv):
        if red[j] < lp.objective[j]:
            problems.append(f"dual constraint {j} violated")
        elif x[j] and red[j] != lp.objective[j]:
            problems.append(f"complementary slackness fails on variable {j}")
    for i, c in enumerate(cons):
        if y[i] and c.lhs(x) != c.rhs:
            problems.append(f"complementary slackness fails on constraint {i}")
    primal = sum((a * v for a, v in zip(lp.objective, x)), lp.offset)
    dual = sum((c.rhs * y[i] for i, c in enumerate(cons)), lp.offset)
    if primal != dual or primal != sol.value:
        problems.append(f"objective mismatch: primal {primal}, dual {dual}, reported {sol.value}")
    return problems


# --- Delsarte-type programs ------------------------------------------------


def _check_range(n: int, M: int) -> None:
    if not isinstance(n, int) or n < 1:
        raise ValueError(f"n must be a positive integer, got {n!r}")
    if not isinstance(M, int) or not 1 <= M <= 2**n:
        raise ValueError(f"M={M!r} outside [1, 2^{n}]")


def bside_program(n: int, M: int, lower: Sequence[Fraction] | None = None) -> LinearProgram:
    """Maximize B_1 over dual distributions B_1..B_n of a putative (n, M) code.

    With ``lower`` the variables are shifted, B_i = lower[i-1] + x_i with
    x_i >= 0, so the program keeps its size; ``offset`` carries lower[0].
    """
    _check_range(n, M)
    t = kraw_table(n)
    lo = [F(v) for v in lower] if lower is not None else [ZERO] * n
    names = tuple(f"B{i}'" if lower is not None else f"B{i}" for i in range(1, n + 1))
    lp = LinearProgram(tuple(F(int(i == 1)) for i in range(1, n + 1)), names=names, offset=lo[0])
    lp.add([1] * n, Relation.EQ, F(2**n, M) - 1 - sum(lo))
    for k in range(1, n + 1):
        row = [t[k][i] for i in range(1, n + 1)]
        lp.add(row, Relation.GE, -binom(n, k) - sum((a * v for a, v in zip(row, lo) if v), ZERO))
    return lp


def aside_program(n: int, M: int) -> LinearProgram:
    """Maximize sum_i P_1(i) A_i = M B_1 - n over distance distributions A_1..A_n."""
    _check_range(n, M)
    t = kraw_table(n)
    lp = LinearProgram(tuple(F(t[1][i]) for i in range(1, n + 1)),
                       names=tuple(f"A{i}" for i in range(1, n + 1)))
    lp.add([1] * n, Relation.EQ, M - 1)
    for k in range(1, n + 1):
        lp.add([t[k][i] for i in range(1, n + 1)], Relation.GE, -binom(n, k))
    return lp


def _clamp(v: Fraction) -> Fraction:
    return v if v > 0 else ZERO


def _beta_from_b1(n: int, b1: Fraction) -> Fraction:
    return _clamp((n - b1) / 2)


def _solve_checked(lp: LinearProgram) -> LpSolution:
    sol = solve(lp)
    problems = check_solution(lp, sol)
    if problems:
        raise AssertionError("LP certificate failed re-verification: " + "; ".join(problems))
    return sol


@dataclass
class LpRun:
    """An LP bound together with the program and solution that produced it."""

    bound: BoundResult
    program: LinearProgram
    solution: LpSolution
    ell: int | None = None
    shift: tuple[Fraction, ...] | None = None

    def dual_distribution(self) -> tuple[Fraction, ...] | None:
        """B_1..B_n at the optimum for the B-side programs, undoing any shift."""
        if self.bound.provenance[0] == "lp-aside":
            return None
        shift = self.shift or (ZERO,) * len(self.solution.point)
        return tuple(a + b for a, b in zip(shift, self.solution.point))


def run_bside(n: int, M: int) -> LpRun:
    lp = bside_program(n, M)
    sol = _solve_checked(lp)
    if sol.status is not Status.OPTIMAL:
        raise AssertionError(f"B-side LP for ({n}, {M}) is {sol.status.value}")
    return LpRun(BoundResult(n, M, Direction.LOWER, _beta_from_b1(n, sol.value), ("lp-bside",)), lp, sol)


def run_aside(n: int, M: int) -> LpRun:
    lp = aside_program(n, M)
    sol = _solve_checked(lp)
    if sol.status is not Status.OPTIMAL:
        raise AssertionError(f"A-side LP for ({n}, {M}) is {sol.status.value}")
    b1 = (sol.value + n) / M
    return LpRun(BoundResult(n, M, Direction.LOWER, _beta_from_b1(n, b1), ("lp-aside",)), lp, sol)


def run_odd(n: int, M: int) -> LpRun:
    _check_range(n, M)
    if M % 2 == 0:
        raise ValueError(f"the odd-size program needs M odd, got M={M}")
    lower = [F(binom(n, i), M * M) for i in range(1, n + 1)]
    lp = bside_program(n, M, lower)
    sol = _solve_checked(lp)
    if sol.status is not Status.OPTIMAL:
        raise AssertionError(f"odd LP for ({n}, {M}) is {sol.status.value}")
    return LpRun(BoundResult(n, M, Direction.LOWER, _beta_from_b1(n, sol.value), ("lp-odd",)), lp, sol, shift=tuple(lower))


def run_mod4(n: int, M: int) -> LpRun:
    """Minimum over ell of the program with B_i >= 2 (C(n,i) + P_i(ell)) / M^2.

    Some ell is guaranteed to be admissible for every code, so the bound is
    the worst case over ell. An infeasible ell admits no code and is skipped.
    """
    _check_range(n, M)
    if M % 4 != 2:
        raise ValueError(f"the mod-4 program needs M ≡ 2 (mod 4), got M={M}")
    t = kraw_table(n)
    worst: LpRun | None = None
    for ell in range(n + 1):
        lower = [F(2 * (binom(n, i) + t[i][ell]), M * M) for i in range(1, n + 1)]
        lp = bside_program(n, M, lower)
        sol = _solve_checked(lp)
        if sol.status is Status.INFEASIBLE:
            continue
        if sol.status is not Status.OPTIMAL:
            raise AssertionError(f"mod-4 LP for ({n}, {M}, ell={ell}) is {sol.status.value}")
        value = _beta_from_b1(n, sol.value)
        if worst is None or value < worst.bound.value:
            worst = LpRun(BoundResult(n, M, Direction.LOWER, value, (f"lp-mod4(ell={ell})",)), lp, sol, ell, tuple(lower))
    if worst is None:
        raise AssertionError(f"every ell is infeasible for ({n}, {M})")
    return worst


def lp_bound_bside(n: int, M: int) -> BoundResult:
    return run_bside(n, M).bound


def lp_bound_aside(n: int, M: int) -> BoundResult:
    return run_aside(n, M).bound


def lp_bound_odd(n: int, M: int) -> BoundResult:
    return run_odd(n, M).bound


def lp_bound_mod4(n: int, M: int) -> BoundResult:
    return run_mod4(n, M).bound


VARIANTS = {
    "bside": run_bside,
    "aside": run_aside,
    "odd": run_odd,
    "mod4": run_mod4,
}


def certificate_from_dual(run: LpRun) -> Certificate:
    """Turn the optimal dual of the plain B-side or A-side program into a certificate.

    For the B-side program the multipliers (y_0, y_1..y_n) give
    lam = -(y_0 + sum_k y_k P_k); for the A-side program they give
    alpha = P_1 - (y_0 + sum_k y_k P_k). Sign conditions hold by dual
    feasibility; the normalisation lam(1) = -1 (resp. alpha_1 = 1) holds by
    complementary slackness whenever B_1 > 0 at the optimum, and
    :func:`verify_certificate` confirms it.
    """
    prog, sol = run.program, run.solution
    n = prog.num_vars
    if len(prog.constraints) != n + 1:
        raise ValueError("only the plain B-side and A-side programs are supported")
    y = sol.certificate
    tag = run.bound.provenance[0]
    if tag == "lp-bside":
        poly = KrawPoly(n, tuple(-v for v in y))
        return Certificate(Side.LAMBDA, poly, f"lp-dual-bside(M={run.bound.M})")
    if tag == "lp-aside":
        cs = [-v for v in y]
        cs[1] += 1
        return Certificate(Side.ALPHA, KrawPoly(n, tuple(cs)), f"lp-dual-aside(M={run.bound.M})")
    raise ValueError(f"unsupported program {tag}")


def dual_certificate_is_valid(run: LpRun) -> bool:
    return verify_certificate(certificate_from_dual(run)).valid
