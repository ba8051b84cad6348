"""Number-theoretic helpers: p-adic valuations, Newton polygons, Kummer carries,
polynomial valuation probes and Fermat-style period candidates."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

import sympy

from .seqlab import FiniteSeq, PeriodReport, detect_period

INFINITY = math.inf


@lru_cache(maxsize=1024)
def _is_prime(p: int) -> bool:
    return bool(sympy.isprime(p))


def require_prime(p: int) -> None:
    if not isinstance(p, int) or not _is_prime(p):
        raise ValueError(f"{p!r} is not a prime")


def int_valuation(x: int, p: int) -> int | float:
    """Exponent of ``p`` in ``x``; INFINITY for 0."""
    require_prime(p)
    if x == 0:
        return INFINITY
    x = abs(x)
    v = 0
    # strip large powers first so huge valuations stay cheap
    pk, k = p, 1
    while x % pk == 0:
        x //= pk
        v += k
        pk, k = pk * pk, 2 * k
    while x % p == 0:
        x //= p
        v += 1
    return v


def rat_valuation(x: Fraction | int, p: int) -> int | float:
    x = Fraction(x)
    if x == 0:
        require_prime(p)
        return INFINITY
    return int_valuation(x.numerator, p) - int_valuation(x.denominator, p)


def prime_factors(n: int) -> list[int]:
    """Sorted distinct prime divisors of |n| (empty for 0 and +-1)."""
    if n == 0:
        return []
    return sorted(sympy.factorint(abs(n)))


# -- Newton polygons ---------------------------------------------------------

@dataclass(frozen=True)
class NewtonPolygon:
    """Lower convex hull of (i, v_p(c_i)).

    ``slopes`` holds root valuations (negated hull slopes) in increasing order
    with multiplicities; roots at zero are counted separately in ``zero_roots``.
    """

    p: int
    points: tuple[tuple[int, int], ...]
    slopes: tuple[tuple[Fraction, int], ...]
    zero_roots: int = 0

    @property
    def degree(self) -> int:
        return sum(mult for _, mult in self.slopes) + self.zero_roots

    def root_valuations(self) -> list[Fraction | float]:
        out: list[Fraction | float] = []
        for s, mult in self.slopes:
            out.extend([s] * mult)
        out.extend([INFINITY] * self.zero_roots)
        return out

    def min_finite_slope(self) -> Fraction | None:
        return self.slopes[0][0] if self.slopes else None


def _cross(o, a, b) -> int:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def newton_polygon(coeffs: Sequence[int], p: int) -> NewtonPolygon:
    """Newton polygon of ``sum coeffs[i] x**i`` at ``p``."""
    require_prime(p)
    coeffs = [int(c) for c in coeffs]
    if not any(coeffs):
        raise ValueError("zero polynomial has no Newton polygon")
    while coeffs[-1] == 0:
        coeffs.pop()
    zero_roots = next(i for i, c in enumerate(coeffs) if c != 0)
    points = tuple((i, int_valuation(c, p)) for i, c in enumerate(coeffs) if c != 0)

    hull: list[tuple[int, int]] = []
    for pt in points:
        while len(hull) >= 2 and _cross(hull[-2], hull[-1], pt) <= 0:
            hull.pop()
        hull.append(pt)

    slopes = []
    for (i1, v1), (i2, v2) in zip(hull, hull[1:]):
        slopes.append((Fraction(v1 - v2, i2 - i1), i2 - i1))
    # hull runs left to right with increasing slope, i.e. decreasing root valuation
    slopes.reverse()
    return NewtonPolygon(p, points, tuple(slopes), zero_roots)


# -- binomial valuations -----------------------------------------------------

def _digits(n: int, p: int) -> list[int]:
    out = []
    while n:
        n, d = divmod(n, p)
        out.append(d)
    return out


def binom_valuation(n: int, k: int, p: int) -> int:
    """v_p(C(n, k)) as the number of carries adding k and n - k in base p."""
    require_prime(p)
    if not 0 <= k <= n:
        raise ValueError(f"need 0 <= k <= n, got n={n}, k={k}")
    a, b = _digits(k, p), _digits(n - k, p)
    width = max(len(a), len(b))
    a += [0] * (width - len(a))
    b += [0] * (width - len(b))
    carry = carries = 0
    for x, y in zip(a, b):
        carry = 1 if x + y + carry >= p else 0
        carries += carry
    return carries


def m_constant(e: int, p: int) -> int:
    """Smallest M >= 0 with v_p(k) - k/e <= M for every k >= 1.

    The search stops once the upper bound floor(log_p k) + 1 - k/e has dropped
    to the running maximum on the decreasing branch (k >= 2e >= e / ln p).
    """
    require_prime(p)
    if e < 1:
        raise ValueError("ramification index must be >= 1")
    best = Fraction(-1, e)  # k = 1
    k = 1
    while True:
        k += 1
        val = int_valuation(k, p) - Fraction(k, e)
        if val > best:
            best = val
        if k >= 2 * e and (len(_digits(k, p)) - Fraction(k, e)) <= best:
            break
    return max(0, math.ceil(best))


def period_candidates(p: int, max_f: int, max_L: int) -> list[int]:
    """All (p**f - 1) * p**L for 1 <= f <= max_f, 0 <= L <= max_L, sorted."""
    require_prime(p)
    if max_f < 1 or max_L < 0:
        raise ValueError("need max_f >= 1 and max_L >= 0")
    return sorted({(p**f - 1) * p**L for f in range(1, max_f + 1) for L in range(max_L + 1)})


# -- polynomial probes -------------------------------------------------------

@dataclass(frozen=True)
class PolyProbe:
    """f(n) = min(0, v_p(q(n)) - c) for a rational polynomial q (constant term first)."""

    q: tuple[Fraction, ...]
    c: Fraction
    p: int
    theta: int = field(init=False)

    def __post_init__(self):
        q = tuple(Fraction(x) for x in self.q)
        if not any(q):
            raise ValueError("probe polynomial must be nonzero")
        require_prime(self.p)
        object.__setattr__(self, "q", q)
        object.__setattr__(self, "c", Fraction(self.c))
        object.__setattr__(self, "theta", math.lcm(*(x.denominator for x in q)))

    @property
    def depth(self) -> int:
        """D = ceil(c + v_p(theta)), floored at 0."""
        return max(0, math.ceil(self.c + int_valuation(self.theta, self.p)))

    def evaluate(self, n: int) -> Fraction:
        acc = Fraction(0)
        for coeff in reversed(self.q):
            acc = acc * n + coeff
        return acc

    def value(self, n: int) -> Fraction:
        v = rat_valuation(self.evaluate(n), self.p)
        if v == INFINITY:
            return Fraction(0)
        return min(Fraction(0), v - self.c)


def poly_probe_seq(probe: PolyProbe, horizon: int,
                   confirm_factor: int = 3) -> tuple[FiniteSeq, PeriodReport]:
    seq = FiniteSeq(0, tuple(probe.value(n) for n in range(horizon)))
    return seq, detect_period(seq, confirm_factor)
