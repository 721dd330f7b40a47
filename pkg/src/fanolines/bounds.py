"""Exact integer evaluation of the existence guarantees and count windows.

Everything here is pure big-integer (or Fraction) arithmetic.  All threshold
decisions go through squared integer comparisons, never floating point, so
values sitting exactly on a boundary are classified correctly.  Floats appear
only in display helpers.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Tuple, Union

from .errors import BoundNotApplicableError

Rational = Union[int, Fraction]


def binomial(a: int, b: int) -> int:
    """C(a, b), exact; 0 when b > a."""
    if a < 0 or b < 0:
        raise ValueError("binomial arguments must be nonnegative")
    return math.comb(a, b)


def prop2_holds(n: int, d: int, r: int) -> bool:
    """Dimension condition guaranteeing the plane-lifting construction: n >= r + C(d+r, r+1)."""
    return n >= r + binomial(d + r, r + 1)


def main_thm_conditions(n: int, d: int, r: int) -> Tuple[bool, bool]:
    """(line_case, plane_case) dimension tests for the asymptotic existence statement.

    line_case:  n >= 2d-1 and n >= 4   (r = 1)
    plane_case: n >= 2*C(d+r-1, r) + r
    """
    line_case = n >= 2 * d - 1 and n >= 4
    plane_case = n >= 2 * binomial(d + r - 1, r) + r
    return line_case, plane_case


def fano_expected_dim(n: int, d: int, r: int) -> int:
    """Expected dimension (r+1)(n-r) - C(d+r, r) of the scheme of r-planes; may be negative."""
    return (r + 1) * (n - r) - binomial(d + r, r)


def hockey_stick_lhs(d: int, r: int) -> int:
    """sum_{0 <= j < d} C(j+r-1, r-1) * (d-j); equals binomial(d+r, r+1)."""
    return sum(binomial(j + r - 1, r - 1) * (d - j) for j in range(d))


def cplus_bound(m: int, delta: int, big_n: int) -> int:
    """Explicit constant 9 * 2^m * (m*delta + 3)^(N+1) from the effective count window."""
    return 9 * (2 ** m) * (m * delta + 3) ** (big_n + 1)


def _guarantee_constants(n: int, d: int) -> Tuple[int, int]:
    # A = (d-1)(d-2), B = 18(d+3)^(n+1) - 1; q must beat
    # sqrt(q) > (A + sqrt(A^2 + 4B)) / 2, i.e. q - B > A*sqrt(q) with q > B.
    a = (d - 1) * (d - 2)
    b = cplus_bound(1, d, n) - 1
    return a, b


def effective_guarantee(q: int, n: int, d: int, r: int) -> bool:
    """Exact test of the explicit existence hypothesis for an r-plane.

    Equivalent to the real inequality sqrt(q) > (A + sqrt(A^2 + 4B))/2 with
    A = (d-1)(d-2) and B = 18(d+3)^(n+1) - 1, combined with prop2_holds.
    Implemented by isolating the square root and squaring, so the decision is
    pure integer arithmetic.
    """
    if not prop2_holds(n, d, r):
        return False
    a, b = _guarantee_constants(n, d)
    return q > b and (q - b) ** 2 > a * a * q


def min_admissible_q(n: int, d: int, r: int) -> int:
    """Least integer q with effective_guarantee(q, n, d, r) true.

    Returns an integer threshold, not necessarily a prime power; round up with
    next_prime_power when an actual field size is needed.  The predicate is
    monotone in q (the set where it holds is a ray), so binary search applies.
    """
    if d < 2 or not prop2_holds(n, d, r):
        raise BoundNotApplicableError(
            f"no admissible q for n={n}, d={d}, r={r}: the dimension condition fails"
        )
    lo = 2
    hi = 2
    while not effective_guarantee(hi, n, d, r):
        hi *= 2
    while lo < hi:
        mid = (lo + hi) // 2
        if effective_guarantee(mid, n, d, r):
            hi = mid
        else:
            lo = mid + 1
    return lo


def _is_probable_prime(m: int) -> bool:
    if m < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if m % p == 0:
            return m == p
    d = m - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    # deterministic for m < 3.3e24 with this base set
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, m)
        if x in (1, m - 1):
            continue
        for _ in range(s - 1):
            x = x * x % m
            if x == m - 1:
                break
        else:
            return False
    return True


def _iroot(m: int, k: int) -> int:
    """Floor k-th root by Newton iteration on integers."""
    if m < 0 or k < 1:
        raise ValueError("bad root arguments")
    if m == 0:
        return 0
    x = 1 << (m.bit_length() // k + 1)
    while True:
        y = ((k - 1) * x + m // x ** (k - 1)) // k
        if y >= x:
            return x
        x = y


def is_prime_power(m: int) -> bool:
    if m < 2:
        return False
    for k in range(1, m.bit_length()):
        root = _iroot(m, k)
        if root ** k == m and _is_probable_prime(root):
            return True
    return False


def next_prime_power(m: int) -> int:
    """Least prime power >= m (prime gaps keep this a short scan)."""
    c = max(2, m)
    while not is_prime_power(c):
        c += 1
    return c


@dataclass(frozen=True)
class SqrtBound:
    """Exact number of the form rat + irr*sqrt(q), ordered without floats.

    Comparisons against integers, Fractions and other SqrtBound values over
    the same q are decided by sign analysis plus one squaring, which is exact.
    """

    rat: Fraction
    irr: Fraction
    q: int

    @staticmethod
    def of(rat: Rational, irr: Rational, q: int) -> "SqrtBound":
        return SqrtBound(Fraction(rat), Fraction(irr), q)

    def _sign(self) -> int:
        a, b = self.rat, self.irr
        if b == 0:
            return (a > 0) - (a < 0)
        if a == 0:
            return 1 if b > 0 else -1
        if a > 0 and b > 0:
            return 1
        if a < 0 and b < 0:
            return -1
        # opposite signs: compare a^2 with b^2*q, transferring a's sign
        lhs = a * a
        rhs = b * b * self.q
        if lhs == rhs:
            return 0
        if a > 0:
            return 1 if lhs > rhs else -1
        return -1 if lhs > rhs else 1

    def _diff(self, other: Union["SqrtBound", Rational]) -> "SqrtBound":
        if isinstance(other, SqrtBound):
            if other.q != self.q:
                raise ValueError("cannot compare bounds over different q")
            return SqrtBound(self.rat - other.rat, self.irr - other.irr, self.q)
        return SqrtBound(self.rat - Fraction(other), self.irr, self.q)

    def __le__(self, other: Union["SqrtBound", Rational]) -> bool:
        return self._diff(other)._sign() <= 0

    def __lt__(self, other: Union["SqrtBound", Rational]) -> bool:
        return self._diff(other)._sign() < 0

    def __ge__(self, other: Union["SqrtBound", Rational]) -> bool:
        return self._diff(other)._sign() >= 0

    def __gt__(self, other: Union["SqrtBound", Rational]) -> bool:
        return self._diff(other)._sign() > 0

    def __float__(self) -> float:
        return float(self.rat) + float(self.irr) * math.sqrt(self.q)

    def __str__(self) -> str:
        if self.irr == 0:
            return str(self.rat)
        return f"{self.rat} + {self.irr}*sqrt({self.q})"


def gl_interval(q: int, n: int, d: int) -> Tuple[SqrtBound, SqrtBound]:
    """Window that must contain the point count of a degree-d hypersurface in P^n.

    Center is |P^(n-1)(F_q)| and half-width E = (d-1)(d-2) q^(n-3/2)
    + 18(d+3)^(n+1) q^(n-2).  Both endpoints are exact rat + irr*sqrt(q)
    values; membership tests through their comparison operators stay in
    integer arithmetic.
    """
    if q < 2 or n < 1:
        raise ValueError("need q >= 2 and n >= 1")
    center = Fraction(q ** n - 1, q - 1)
    irr = Fraction((d - 1) * (d - 2)) * Fraction(q) ** (n - 2)
    rat = Fraction(cplus_bound(1, d, n)) * Fraction(q) ** (n - 2)
    lower = SqrtBound(center - rat, -irr, q)
    upper = SqrtBound(center + rat, irr, q)
    return lower, upper


def gl_contains(q: int, n: int, d: int, count: int) -> bool:
    lower, upper = gl_interval(q, n, d)
    return lower <= count and upper >= count


def expected_line_count(q: int) -> Fraction:
    """Heuristic mean number of lines on a random degree-3 hypersurface in P^4:
    q^2 + q + 2 + 2/q + 2/q^2 + 1/q^3 + 1/q^4, exact."""
    if q < 2:
        raise ValueError("need q >= 2")
    qf = Fraction(q)
    return qf ** 2 + qf + 2 + 2 / qf + 2 / qf ** 2 + 1 / qf ** 3 + 1 / qf ** 4


@dataclass(frozen=True)
class BoundReport:
    """Everything the pure arithmetic can say about the triple (n, d, r).

    q_threshold is None when the dimension condition fails or d < 2 (the
    guarantee then never applies).  integrality_assumed records that the
    window statements take geometric integrality of the hypersurface as an
    input assertion; nothing here verifies it.
    """

    n: int
    d: int
    r: int
    prop2_ok: bool
    main_thm_ok: bool
    br_plane_ok: bool
    fano_dim: int
    q_threshold: Optional[int]
    cplus: int
    integrality_assumed: bool = True

    def to_json(self) -> str:
        return json.dumps(
            {
                "n": self.n,
                "d": self.d,
                "r": self.r,
                "prop2_ok": self.prop2_ok,
                "main_thm_ok": self.main_thm_ok,
                "br_plane_ok": self.br_plane_ok,
                "fano_dim": self.fano_dim,
                "q_threshold": self.q_threshold,
                "cplus": self.cplus,
                "integrality_assumed": self.integrality_assumed,
            },
            sort_keys=True,
        )


def bound_report(n: int, d: int, r: int) -> BoundReport:
    line_case, plane_case = main_thm_conditions(n, d, r)
    p2 = prop2_holds(n, d, r)
    threshold: Optional[int] = None
    if p2 and d >= 2:
        threshold = min_admissible_q(n, d, r)
    return BoundReport(
        n=n,
        d=d,
        r=r,
        prop2_ok=p2,
        main_thm_ok=line_case,
        br_plane_ok=plane_case,
        fano_dim=fano_expected_dim(n, d, r),
        q_threshold=threshold,
        cplus=cplus_bound(1, d, n),
    )
