"""Certificate polynomials for lower bounds on the minimum average distance.

Two kinds of certificate exist. A *lambda-side* polynomial bounds the dual
distribution entry B_1 from above through

    beta(n, M) >= (n - lam(0) + 2^n lam_0 / M) / 2,

valid when lam(1) = -1, lam(i) <= 0 for 2 <= i <= n and lam_j >= 0 for j >= 1.
An *alpha-side* polynomial gives

    beta(n, M) >= (n + alpha_0 - alpha(0) / M) / 2,

valid when alpha_1 = 1, alpha_j >= 0 for j >= 2 and alpha(i) <= 0 for i >= 1.
The families below are fixed closed-form polynomials; their sign conditions
are re-checked exhaustively by :func:`verify_certificate`.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from .codes import Code, average_distance, distance_distribution
from .krawtchouk import KrawPoly, binom


class Side(str, enum.Enum):
    LAMBDA = "lambda"
    ALPHA = "alpha"


class Family(str, enum.Enum):
    LAMBDA_CONST = "LAMBDA_CONST"
    LAMBDA_HALF_PN = "LAMBDA_HALF_PN"
    LAMBDA_EVEN = "LAMBDA_EVEN"
    LAMBDA_ODD = "LAMBDA_ODD"
    ALPHA_LINEAR = "ALPHA_LINEAR"
    ALPHA_PN = "ALPHA_PN"
    ALPHA_HALF_EVEN = "ALPHA_HALF_EVEN"
    ALPHA_HALF_ODD = "ALPHA_HALF_ODD"
    ALPHA_MOD4_1 = "ALPHA_MOD4_1"
    ALPHA_MOD4_0 = "ALPHA_MOD4_0"
    ALPHA_MOD4_3 = "ALPHA_MOD4_3"
    ALPHA_MOD4_2 = "ALPHA_MOD4_2"


class ApplicabilityError(ValueError):
    """A family was requested outside the lengths it is defined for."""


class CertificateError(ValueError):
    """A certificate fails its sign conditions, or an equality check disagrees."""


@dataclass(frozen=True)
class Guard:
    text: str
    test: Callable[[int], bool] = field(compare=False)

    def __call__(self, n: int) -> bool:
        return self.test(n)


@dataclass(frozen=True)
class Certificate:
    side: Side
    poly: KrawPoly
    family: str
    guard: Guard | None = None

    @property
    def n(self) -> int:
        return self.poly.n


@dataclass
class VerificationReport:
    family: str
    side: Side
    n: int
    violations: list[str]

    @property
    def valid(self) -> bool:
        return not self.violations

    def to_dict(self) -> dict:
        return {
            "family": self.family,
            "side": self.side.value,
            "n": self.n,
            "valid": self.valid,
            "violations": list(self.violations),
        }


F = Fraction


def _lambda_const(n):
    return [(0, -1)]


def _lambda_half_pn(n):
    return [(0, F(-1, 2)), (n, F(1, 2))]


def _lambda_even(n):
    s = F(1, 2 * (n - 2))
    return [(0, s * (3 - n)), (n - 1, s), (n, s)]


def _lambda_odd(n):
    s = F(1, 2 * (n - 1))
    return [(0, s * (2 - n)), (n - 1, s), (n, 2 * s)]


def _alpha_linear(n):
    return [(0, 2 - n), (1, 1)]


def _alpha_pn(n):
    return [(0, 3 - n), (1, 1), (n, 1)]


def _alpha_half_even(n):
    h = n // 2 + 1
    c = F(4 * binom(n, 2), (n + 2) * binom(n, h))
    return [(0, F(n * (4 - n), n + 2)), (1, 1), (h, c)]


def _alpha_half_odd(n):
    c = F(4 * binom(n + 1, 2), (n + 3) * binom(n + 1, (n + 3) // 2))
    return [(0, F(6 + 3 * n - n * n, n + 3)), (1, 1), ((n + 1) // 2, c), ((n + 3) // 2, c)]


def _alpha_mod4_1(n):
    c = F(4 * n * (n - 2), (n + 1) * binom(n, (n + 1) // 2))
    return [(0, F((1 - n) * (n - 5), n + 1)), (1, 1), ((n + 1) // 2, c), (n, 1)]


def _alpha_mod4_0(n):
    c = F(4 * (n * n - 1), (n + 2) * binom(n + 1, (n + 2) // 2))
    return [(0, F(2 + 5 * n - n * n, n + 2)), (1, 1), (n // 2, c), ((n + 2) // 2, c), (n, 1)]


def _alpha_mod4_3(n):
    c = F(4 * n * (n + 2), (n + 3) * binom(n + 2, (n + 3) // 2))
    return [
        (0, F(9 + 4 * n - n * n, n + 3)),
        (1, 1),
        ((n - 1) // 2, c),
        ((n + 1) // 2, 2 * c),
        ((n + 3) // 2, c),
        (n, 1),
    ]


def _alpha_mod4_2(n):
    c = F(4 * (n + 1) * (n + 3), (n + 4) * binom(n + 3, (n + 4) // 2))
    return [
        (0, F(16 + 3 * n - n * n, n + 4)),
        (1, 1),
        ((n - 2) // 2, c),
        (n // 2, 3 * c),
        ((n + 2) // 2, 3 * c),
        ((n + 4) // 2, c),
        (n, 1),
    ]


# family -> (side, guard, builder of (degree, coefficient) terms; repeated degrees add)
_FAMILIES: dict[Family, tuple[Side, Guard, Callable[[int], list]]] = {
    Family.LAMBDA_CONST: (Side.LAMBDA, Guard("n >= 1", lambda n: n >= 1), _lambda_const),
    Family.LAMBDA_HALF_PN: (Side.LAMBDA, Guard("n >= 1", lambda n: n >= 1), _lambda_half_pn),
    Family.LAMBDA_EVEN: (Side.LAMBDA, Guard("n even, n > 2", lambda n: n % 2 == 0 and n > 2), _lambda_even),
    Family.LAMBDA_ODD: (Side.LAMBDA, Guard("n odd, n > 1", lambda n: n % 2 == 1 and n > 1), _lambda_odd),
    Family.ALPHA_LINEAR: (Side.ALPHA, Guard("n >= 1", lambda n: n >= 1), _alpha_linear),
    Family.ALPHA_PN: (Side.ALPHA, Guard("n >= 2", lambda n: n >= 2), _alpha_pn),
    Family.ALPHA_HALF_EVEN: (Side.ALPHA, Guard("n even", lambda n: n % 2 == 0 and n >= 2), _alpha_half_even),
    Family.ALPHA_HALF_ODD: (Side.ALPHA, Guard("n odd, n > 1", lambda n: n % 2 == 1 and n > 1), _alpha_half_odd),
    Family.ALPHA_MOD4_1: (Side.ALPHA, Guard("n ≡ 1 mod 4, n ≠ 1", lambda n: n % 4 == 1 and n != 1), _alpha_mod4_1),
    Family.ALPHA_MOD4_0: (Side.ALPHA, Guard("n ≡ 0 mod 4, n ≥ 4", lambda n: n % 4 == 0 and n >= 4), _alpha_mod4_0),
    Family.ALPHA_MOD4_3: (Side.ALPHA, Guard("n ≡ 3 mod 4, n ≠ 3", lambda n: n % 4 == 3 and n != 3), _alpha_mod4_3),
    Family.ALPHA_MOD4_2: (Side.ALPHA, Guard("n ≡ 2 mod 4, n ≠ 2", lambda n: n % 4 == 2 and n != 2), _alpha_mod4_2),
}


def family_guard(family: Family | str) -> Guard:
    return _FAMILIES[Family(family)][1]


def family_side(family: Family | str) -> Side:
    return _FAMILIES[Family(family)][0]


def families_for(n: int) -> list[Family]:
    """All families whose guard admits length n, in declaration order."""
    return [f for f, (_, g, _) in _FAMILIES.items() if g(n)]


def build_family(family: Family | str, n: int) -> Certificate:
    family = Family(family)
    side, guard, make = _FAMILIES[family]
    if not isinstance(n, int) or not guard(n):
        raise ApplicabilityError(f"{family.value} requires {guard.text}; got n={n}")
    terms = make(n)
    coeffs = [F(0)] * (n + 1)
    for j, c in terms:
        coeffs[j] += F(c)
    return Certificate(side, KrawPoly(n, tuple(coeffs)), family.value, guard)


def verify_certificate(cert: Certificate) -> VerificationReport:
    """Check every sign condition of the certificate's side at all points 0..n."""
    poly = cert.poly
    n = poly.n
    vals = poly.values()
    cs = poly.coeffs
    bad: list[str] = []
    if cert.side is Side.LAMBDA:
        if vals[1] != -1:
            bad.append(f"λ(1) ≠ -1 (λ(1) = {vals[1]})")
        bad += [f"λ({i}) > 0 (= {vals[i]})" for i in range(2, n + 1) if vals[i] > 0]
        bad += [f"λ_{j} < 0 (= {cs[j]})" for j in range(1, n + 1) if cs[j] < 0]
    else:
        if cs[1] != 1:
            bad.append(f"α_1 ≠ 1 (α_1 = {cs[1]})")
        bad += [f"α_{j} < 0 (= {cs[j]})" for j in range(2, n + 1) if cs[j] < 0]
        bad += [f"α({i}) > 0 (= {vals[i]})" for i in range(1, n + 1) if vals[i] > 0]
    return VerificationReport(cert.family, cert.side, n, bad)


def _raw_bound(cert: Certificate, M: int) -> Fraction:
    poly = cert.poly
    n = poly.n
    if cert.side is Side.LAMBDA:
        return (n - poly(0) + F(2**n, M) * poly.coeffs[0]) / 2
    return (n + poly.coeffs[0] - poly(0) / M) / 2


def certificate_bound(cert: Certificate, M: int) -> Fraction:
    """Lower bound on beta(n, M) implied by a valid certificate (not clamped)."""
    if not isinstance(M, int) or M < 1:
        raise ValueError(f"M must be a positive integer, got {M!r}")
    report = verify_certificate(cert)
    if not report.valid:
        raise CertificateError(f"{cert.family} (n={cert.n}) is not a valid certificate: "
                               + "; ".join(report.violations))
    return _raw_bound(cert, M)


def dualize(cert: Certificate) -> Certificate:
    """Map lambda <-> alpha with alpha_i = lambda(i), equivalently alpha(j) = 2^n lambda_j."""
    poly = cert.poly
    n = poly.n
    if cert.side is Side.LAMBDA:
        new = KrawPoly(n, tuple(poly.values()))
        side = Side.ALPHA
    else:
        scale = F(1, 2**n)
        new = KrawPoly(n, tuple(v * scale for v in poly.values()))
        side = Side.LAMBDA
    return Certificate(side, new, f"dual({cert.family})")


@dataclass
class EqualityReport:
    family: str
    side: Side
    I: list[int]
    J: list[int]
    hypotheses_hold: bool
    equality_holds: bool
    bound: Fraction
    average_distance: Fraction

    def to_dict(self) -> dict:
        return {
            "family": self.family,
            "side": self.side.value,
            "I": self.I,
            "J": self.J,
            "hypotheses_hold": self.hypotheses_hold,
            "equality_holds": self.equality_holds,
            "bound": f"{self.bound.numerator}/{self.bound.denominator}",
            "average_distance": f"{self.average_distance.numerator}/{self.average_distance.denominator}",
        }


def equality_diagnosis(cert: Certificate, code: Code) -> EqualityReport:
    """Evaluate the code-dependent support conditions and the equality criterion.

    For the lambda side I = {i >= 2 : B_i != 0} and J = {j >= 1 : A_j != 0};
    for the alpha side I = {i >= 1 : A_i != 0} and J = {j >= 2 : B_j != 0}.
    Equality of the bound and the code's average distance holds exactly when
    the polynomial vanishes on I and its coefficients vanish on J.
    """
    n = cert.n
    if code.n != n:
        raise ValueError(f"code length {code.n} does not match certificate length {n}")
    dist = distance_distribution(code)
    vals = cert.poly.values()
    cs = cert.poly.coeffs
    if cert.side is Side.LAMBDA:
        I = [i for i in range(2, n + 1) if dist.B[i] != 0]
        J = [j for j in range(1, n + 1) if dist.A[j] != 0]
        hyp = vals[1] == -1 and all(vals[i] <= 0 for i in I) and all(cs[j] >= 0 for j in J)
        eq = all(vals[i] == 0 for i in I) and all(cs[j] == 0 for j in J)
    else:
        I = [i for i in range(1, n + 1) if dist.A[i] != 0]
        J = [j for j in range(2, n + 1) if dist.B[j] != 0]
        hyp = cs[1] == 1 and all(cs[j] >= 0 for j in J) and all(vals[i] <= 0 for i in I)
        eq = all(vals[i] == 0 for i in I) and all(cs[j] == 0 for j in J)
    bound = _raw_bound(cert, code.M)
    dbar = average_distance(code)
    if hyp:
        if bound > dbar:
            raise CertificateError(f"bound {bound} exceeds average distance {dbar}")
        if eq and bound != dbar:
            raise CertificateError(f"equality conditions hold but bound {bound} != {dbar}")
    return EqualityReport(cert.family, cert.side, I, J, hyp, hyp and eq, bound, dbar)
