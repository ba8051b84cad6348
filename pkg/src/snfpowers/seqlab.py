"""Eventually periodic sequences: pointwise combinators and an empirical
(n0, T) detector over a finite sampling horizon.

Detection never claims more than the samples show. A report is accepted only
when at least ``confirm_factor`` full periods are observed after ``n0`` and the
verified stretch covers at least ``min_coverage`` of the horizon. The coverage
rule stops a constant run at the very end of the samples from passing as T = 1.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Hashable, Sequence

INFINITY = math.inf
MIN_COVERAGE = 0.5


class Op(enum.Enum):
    SUM = "sum"
    PRODUCT = "product"
    MIN = "min"
    QUOTIENT = "quotient"


class Status(str, enum.Enum):
    CONFIRMED_WINDOW = "CONFIRMED_WINDOW"
    ORACLE_EXACT = "ORACLE_EXACT"
    NOT_FOUND = "NOT_FOUND"


@dataclass(frozen=True)
class FiniteSeq:
    """Samples f(start), f(start + 1), ... of an integer-indexed sequence."""

    start: int
    samples: tuple

    def __post_init__(self):
        if not self.samples:
            raise ValueError("a sequence needs at least one sample")
        object.__setattr__(self, "samples", tuple(self.samples))

    def __len__(self) -> int:
        return len(self.samples)

    def __getitem__(self, n: int):
        return self.samples[n - self.start]

    @property
    def stop(self) -> int:
        return self.start + len(self.samples)

    def indices(self) -> range:
        return range(self.start, self.stop)

    def differences(self) -> FiniteSeq:
        if len(self.samples) < 2:
            raise ValueError("need two samples to take differences")
        s = self.samples
        if any(x == INFINITY for x in s):
            raise ValueError("differences of an infinite sample")
        return FiniteSeq(self.start, tuple(b - a for a, b in zip(s, s[1:])))

    @classmethod
    def from_function(cls, f, start: int, stop: int) -> FiniteSeq:
        return cls(start, tuple(f(n) for n in range(start, stop)))


@dataclass(frozen=True)
class PeriodReport:
    n0: int | None
    T: int | None
    block: tuple
    confirmed_window: int
    status: Status

    @property
    def found(self) -> bool:
        return self.status is not Status.NOT_FOUND

    @classmethod
    def not_found(cls) -> PeriodReport:
        return cls(None, None, (), 0, Status.NOT_FOUND)


def _as_exact(x):
    if x == INFINITY or isinstance(x, (int, Fraction)):
        return x
    return Fraction(x)


def combine(seqs: Sequence[FiniteSeq], op: Op) -> FiniteSeq:
    """Pointwise sum, product, minimum or quotient of aligned sequences."""
    if not seqs:
        raise ValueError("nothing to combine")
    first = seqs[0]
    if any(s.start != first.start or len(s) != len(first) for s in seqs):
        raise ValueError("sequences must share the same index range")
    if op is Op.QUOTIENT and len(seqs) != 2:
        raise ValueError("QUOTIENT takes exactly two sequences")
    cols = list(zip(*(s.samples for s in seqs)))
    if op is Op.MIN:
        return FiniteSeq(first.start, tuple(min(c) for c in cols))
    if any(x == INFINITY for c in cols for x in c):
        raise ValueError(f"{op.name} is undefined on INFINITY samples")
    out = []
    for n, c in zip(first.indices(), cols):
        c = [_as_exact(x) for x in c]
        if op is Op.SUM:
            out.append(sum(c))
        elif op is Op.PRODUCT:
            out.append(math.prod(c))
        else:
            if c[1] == 0:
                raise ZeroDivisionError(f"divisor vanishes at n={n}")
            q = Fraction(c[0]) / c[1]
            out.append(q.numerator if q.denominator == 1 else q)
    return FiniteSeq(first.start, tuple(out))


def min_of_difference_periodic(seqs: Sequence[FiniteSeq],
                               confirm_factor: int = 3) -> FiniteSeq:
    """Pointwise minimum of sequences whose first differences are eventually periodic.

    Raises ValueError if some input's differences cannot be confirmed periodic
    over the sampled horizon.
    """
    for i, s in enumerate(seqs):
        if not detect_period(s.differences(), confirm_factor).found:
            raise ValueError(f"input {i}: first differences not confirmed periodic")
    if len(seqs) == 1:
        return seqs[0]
    return combine(seqs, Op.MIN)


def _threshold(values: Sequence[Hashable], T: int) -> int:
    """Smallest offset i0 with values[i + T] == values[i] for every i >= i0."""
    for i in range(len(values) - T - 1, -1, -1):
        if values[i + T] != values[i]:
            return i + 1
    return 0


def _accepted(h: int, i0: int, T: int, confirm_factor: int, min_coverage: float) -> bool:
    return (h - i0) // T >= confirm_factor and (h - i0) >= min_coverage * h


def detect_values(values: Sequence[Any], start: int = 0, confirm_factor: int = 3,
                  min_coverage: float = MIN_COVERAGE) -> PeriodReport:
    """Minimal T, then minimal n0 for that T, with ``confirm_factor`` periods seen."""
    if not values:
        raise ValueError("cannot detect a period in an empty sequence")
    if confirm_factor < 2:
        raise ValueError("confirm_factor must be >= 2")
    h = len(values)
    for T in range(1, h // confirm_factor + 1):
        i0 = _threshold(values, T)
        if _accepted(h, i0, T, confirm_factor, min_coverage):
            return PeriodReport(start + i0, T, tuple(values[i0:i0 + T]), (h - i0) // T,
                                Status.CONFIRMED_WINDOW)
    return PeriodReport.not_found()


def detect_period(seq: FiniteSeq, confirm_factor: int = 3,
                  min_coverage: float = MIN_COVERAGE) -> PeriodReport:
    return detect_values(seq.samples, seq.start, confirm_factor, min_coverage)


def detect_vector(vectors: Sequence[Sequence[Any]], start: int = 0, confirm_factor: int = 3,
                  min_coverage: float = MIN_COVERAGE) -> PeriodReport:
    """Detect on vector-valued samples.

    Each component is detected on its own; the period is the lcm of the
    component periods and the threshold is re-derived on the whole vectors for
    that period.
    """
    if not vectors:
        raise ValueError("cannot detect a period in an empty sequence")
    width = len(vectors[0])
    T = 1
    for j in range(width):
        rep = detect_values([v[j] for v in vectors], start, confirm_factor, min_coverage)
        if not rep.found:
            return PeriodReport.not_found()
        T = math.lcm(T, rep.T)
    rows = [tuple(v) for v in vectors]
    h = len(rows)
    i0 = _threshold(rows, T)
    if not _accepted(h, i0, T, confirm_factor, min_coverage):
        return PeriodReport.not_found()
    return PeriodReport(start + i0, T, tuple(rows[i0:i0 + T]), (h - i0) // T,
                        Status.CONFIRMED_WINDOW)


def holds_period(values: Sequence[Any], n0: int, T: int, start: int = 0) -> bool:
    """True if values[n + T] == values[n] for every sampled n >= n0."""
    i0 = max(0, n0 - start)
    return all(values[i + T] == values[i] for i in range(i0, len(values) - T))
