"""Instance families with closed-form Smith-form oracles, plus seeded random matrices.

Random matrices come from Python's ``random.Random`` (MT19937) seeded with an
integer. Only ``Random.random()`` is used, whose output stream for an int seed
is stable across platforms and Python versions; entries are
``floor(u * (2B + 1)) - B``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Callable, Sequence

from .exactmat import IntMatrix
from .io import matrix_to_json
from .powertrace import quotient_diag
from .seqlab import PeriodReport, Status, detect_vector
from .smith import SmithForm, is_divisibility_chain
from .ntkit import require_prime


@dataclass(frozen=True)
class OracleInstance:
    matrix: IntMatrix
    oracle: Callable[[int], tuple[int, ...]] = field(compare=False)
    family: str
    params: dict = field(compare=False)

    def to_json(self) -> dict:
        return {"family": self.family, "params": dict(self.params),
                "matrix": matrix_to_json(self.matrix)}


def divisibility_order(values: Sequence[int]) -> tuple[int, ...]:
    """Sort a multiset of invariant factors into chain order (zeros last)."""
    nonzero = sorted(v for v in values if v)
    out = tuple(nonzero) + (0,) * (len(values) - len(nonzero))
    if not is_divisibility_chain(out):
        raise ValueError(f"{values} does not sort into a divisibility chain")
    return out


def jordan_example(p: int, pad: int = 0) -> OracleInstance:
    """[[p, 1], [0, p]] (+) I_pad; D_n has period exactly p."""
    require_prime(p)
    if pad < 0:
        raise ValueError("pad must be >= 0")
    a = IntMatrix.from_rows([[p, 1], [0, p]])
    if pad:
        a = a.direct_sum(IntMatrix.identity(pad))

    def oracle(n: int) -> tuple[int, ...]:
        if n % p == 0:
            block = (p**n, p**n)
        else:
            block = (p**(n - 1), p**(n + 1))
        return divisibility_order((1,) * pad + block)

    return OracleInstance(a, oracle, "jordan", {"p": p, "pad": pad})


def companion(poly: Sequence[int]) -> IntMatrix:
    """Companion matrix of a monic polynomial given constant term first.

    Subdiagonal ones and the negated coefficients in the last column, so
    x^3 - 256 gives [[0, 0, 256], [1, 0, 0], [0, 1, 0]].
    """
    poly = [int(c) for c in poly]
    while len(poly) > 1 and poly[-1] == 0:
        poly.pop()
    d = len(poly) - 1
    if d < 1:
        raise ValueError("companion matrix needs degree >= 1")
    if poly[-1] != 1:
        raise ValueError("polynomial must be monic")
    rows = [[0] * d for _ in range(d)]
    for i in range(1, d):
        rows[i][i - 1] = 1
    for i in range(d):
        rows[i][d - 1] = -poly[i]
    return IntMatrix.from_rows(rows)


def bruner_counterexample(m: int) -> OracleInstance:
    """C (+) [2] with C the companion of x^(m-1) - 4^m.

    For n = (m-1)k + r the invariant factors are 2^n once, 4^(mk+m) r times and
    4^(mk) (m-1-r) times. D_n is periodic only from n0 = m-1, with T = m-1.
    """
    if m < 3:
        raise ValueError("family needs m >= 3")
    c = companion([-(4**m)] + [0] * (m - 2) + [1])
    a = c.direct_sum(IntMatrix.from_rows([[2]]))

    def oracle(n: int) -> tuple[int, ...]:
        k, r = divmod(n, m - 1)
        values = [2**n] + [4**(m * k + m)] * r + [4**(m * k)] * (m - 1 - r)
        return divisibility_order(values)

    return OracleInstance(a, oracle, "bruner", {"m": m})


def random_instance(size: int, entry_bound: int, seed: int) -> IntMatrix:
    if size < 1 or entry_bound < 1:
        raise ValueError("need size >= 1 and entry_bound >= 1")
    rng = random.Random(seed)
    span = 2 * entry_bound + 1
    entries = [int(rng.random() * span) - entry_bound for _ in range(size * size)]
    return IntMatrix(size, size, tuple(entries))


def oracle_trace(inst: OracleInstance, horizon: int) -> list[SmithForm]:
    out = []
    for n in range(horizon + 1):
        diag = inst.oracle(n)
        out.append(SmithForm(diag, sum(1 for d in diag if d)))
    return out


def check_oracle(inst: OracleInstance, smith_seq: Sequence[SmithForm],
                 confirm_factor: int = 3) -> PeriodReport:
    """Compare computed Smith forms with the closed form and detect on the oracle's D_n.

    Returns an ORACLE_EXACT report when every computed S_n equals the oracle,
    NOT_FOUND otherwise.
    """
    expected = oracle_trace(inst, len(smith_seq) - 1)
    if any(e.diag != s.diag for e, s in zip(expected, smith_seq)):
        return PeriodReport.not_found()
    d_seq = [quotient_diag(expected[n + 1], expected[n]) for n in range(len(expected) - 1)]
    rep = detect_vector(d_seq, 0, confirm_factor)
    if not rep.found:
        return rep
    return PeriodReport(rep.n0, rep.T, rep.block, rep.confirmed_window, Status.ORACLE_EXACT)


FAMILIES = {
    "jordan": lambda p=2, pad=0: jordan_example(int(p), int(pad)),
    "bruner": lambda m=4: bruner_counterexample(int(m)),
}
