"""Smith forms along the powers of a matrix.

Builds S_n = SNF(A^n) for n = 0..horizon, the quotient sequence D_n with
S_{n+1} = D_n S_n, the gcd-ratio sequence, and the decomposition
v_p(A^n) = a*n + h(n) with ``a`` the least finite Newton slope of charpoly(A).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .exactmat import IntMatrix, charpoly, content_gcd, mat_mul, mat_pow
from .ntkit import int_valuation, newton_polygon, require_prime
from .seqlab import FiniteSeq, PeriodReport, detect_period, detect_values, detect_vector
from .smith import SmithForm, relevant_primes, smith_form


class NilpotentError(ValueError):
    pass


def is_nilpotent(a: IntMatrix) -> bool:
    return mat_pow(a, a.rows).is_zero()


def _require_not_nilpotent(a: IntMatrix) -> None:
    if not a.is_square:
        raise ValueError("expected a square matrix")
    if is_nilpotent(a):
        raise NilpotentError("matrix is nilpotent (A^m = 0)")


def powers(a: IntMatrix, horizon: int) -> list[IntMatrix]:
    """[A^0, A^1, ..., A^horizon] by repeated multiplication."""
    out = [IntMatrix.identity(a.rows)]
    for _ in range(horizon):
        out.append(mat_mul(a, out[-1]))
    return out


def quotient_diag(s_next: SmithForm, s_cur: SmithForm) -> tuple[int, ...]:
    out = []
    for hi, lo in zip(s_next.diag, s_cur.diag):
        if lo:
            assert hi % lo == 0, "invariant factors of consecutive powers must divide"
            out.append(hi // lo)
        else:
            assert hi == 0, "a zero invariant factor cannot become nonzero"
            out.append(0)
    return tuple(out)


@dataclass(frozen=True)
class PowerTrace:
    a: IntMatrix
    horizon: int
    smith_seq: tuple[SmithForm, ...]
    d_seq: tuple[tuple[int, ...], ...]
    powers: tuple[IntMatrix, ...]


def trace_powers(a: IntMatrix, horizon: int) -> PowerTrace:
    if not a.is_square:
        raise ValueError("trace_powers expects a square matrix")
    if horizon < 2:
        raise ValueError("horizon too small (need >= 2)")
    pw = powers(a, horizon)
    smiths = tuple(smith_form(x) for x in pw)
    d_seq = tuple(quotient_diag(smiths[n + 1], smiths[n]) for n in range(horizon))
    return PowerTrace(a, horizon, smiths, d_seq, tuple(pw))


def detect_dn_periodicity(t: PowerTrace, confirm_factor: int = 3) -> PeriodReport:
    return detect_vector(t.d_seq, 0, confirm_factor)


def per_prime_d_periods(t: PowerTrace, primes, confirm_factor: int = 3) -> dict[int, PeriodReport]:
    """Period of the p-part exponents of D_n, one report per prime."""
    out = {}
    for p in primes:
        vecs = [tuple(int_valuation(x, p) for x in d) for d in t.d_seq]
        out[p] = detect_vector(vecs, 0, confirm_factor)
    return out


def gcd_ratio_seq(a: IntMatrix, horizon: int) -> FiniteSeq:
    """g(n) = gcd(A^{n+1}) / gcd(A^n) for n = 0..horizon-1."""
    _require_not_nilpotent(a)
    gcds = [content_gcd(x) for x in powers(a, horizon)]
    return FiniteSeq(0, tuple(gcds[n + 1] // gcds[n] for n in range(horizon)))


def valuation_seq(a: IntMatrix, p: int, horizon: int) -> FiniteSeq:
    """v_p(A^n) for n = 0..horizon."""
    require_prime(p)
    _require_not_nilpotent(a)
    return _valuations(powers(a, horizon), p)


def _valuations(pw, p: int) -> FiniteSeq:
    return FiniteSeq(0, tuple(int_valuation(content_gcd(x), p) for x in pw))


def min_root_valuation(a: IntMatrix, p: int) -> Fraction:
    """Least p-adic valuation of a nonzero eigenvalue of ``a``."""
    slope = newton_polygon(charpoly(a), p).min_finite_slope()
    if slope is None:
        raise NilpotentError("no nonzero eigenvalue")
    return slope


@dataclass(frozen=True)
class ValuationDecomposition:
    p: int
    a: Fraction
    valuations: FiniteSeq
    h_samples: FiniteSeq
    h_report: PeriodReport
    dh_report: PeriodReport

    def is_bounded(self) -> bool:
        """Tail range of h is already attained within one detected period."""
        rep = self.h_report
        if not rep.found:
            return False
        tail = self.h_samples.samples[rep.n0 - self.h_samples.start:]
        return min(tail) == min(rep.block) and max(tail) == max(rep.block)


def decompose_valuation(a: IntMatrix, p: int, horizon: int,
                        confirm_factor: int = 3, _powers=None) -> ValuationDecomposition:
    require_prime(p)
    _require_not_nilpotent(a)
    slope = min_root_valuation(a, p)
    vals = _valuations(_powers if _powers is not None else powers(a, horizon), p)
    h = FiniteSeq(0, tuple(v - slope * n for n, v in enumerate(vals.samples)))
    return ValuationDecomposition(
        p, slope, vals, h,
        detect_period(h, confirm_factor),
        detect_values(h.differences().samples, 0, confirm_factor),
    )


def analyze(a: IntMatrix, horizon: int, primes=None, confirm_factor: int = 3):
    """Trace, combined D_n report and per-prime decompositions in one pass.

    ``primes=None`` selects the primes dividing the top determinantal divisor
    of ``a``. Nilpotent matrices get an empty per-prime section.
    """
    t = trace_powers(a, horizon)
    period = detect_dn_periodicity(t, confirm_factor)
    if primes is None:
        primes = relevant_primes(a)
    decomps = []
    if not is_nilpotent(a):
        decomps = [decompose_valuation(a, p, horizon, confirm_factor, _powers=t.powers)
                   for p in primes]
    return t, period, decomps

