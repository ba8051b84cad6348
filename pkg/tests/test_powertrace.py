import math
from fractions import Fraction

import pytest
from hypothesis import given, settings

from snfpowers.exactmat import IntMatrix, det, mat_pow
from snfpowers.gen import bruner_counterexample, jordan_example
from snfpowers.ntkit import int_valuation
from snfpowers.powertrace import (
    NilpotentError, analyze, decompose_valuation, detect_dn_periodicity, gcd_ratio_seq,
    is_nilpotent, min_root_valuation, per_prime_d_periods, trace_powers, valuation_seq,
)
from snfpowers.smith import relevant_primes, smith_form

from strategies import matrices


def test_identity_trace():
    t = trace_powers(IntMatrix.identity(3), 5)
    assert all(s.diag == (1, 1, 1) for s in t.smith_seq)
    assert all(d == (1, 1, 1) for d in t.d_seq)


def test_jordan_three_quotient():
    t = trace_powers(IntMatrix.from_rows([[3, 1], [0, 3]]), 5)
    assert t.smith_seq[3].diag == (27, 27)
    assert t.d_seq[3] == (1, 9)


def test_counterexample_fifth_power():
    t = trace_powers(bruner_counterexample(4).matrix, 6)
    assert t.smith_seq[5].diag == (32, 256, 256**2, 256**2)


def test_horizon_too_small():
    with pytest.raises(ValueError, match="horizon too small"):
        trace_powers(IntMatrix.identity(2), 1)


def test_recursion_holds():
    t = trace_powers(IntMatrix.from_rows([[2, 1, 0], [0, 2, 3], [1, 0, 6]]), 12)
    for n, d in enumerate(t.d_seq):
        assert tuple(x * y for x, y in zip(d, t.smith_seq[n].diag)) == t.smith_seq[n + 1].diag


def test_jordan_two_period():
    rep = detect_dn_periodicity(trace_powers(jordan_example(2).matrix, 40))
    assert rep.T == 2 and rep.n0 == 0


def test_counterexample_period():
    rep = detect_dn_periodicity(trace_powers(bruner_counterexample(4).matrix, 60))
    assert (rep.n0, rep.T) == (3, 3)


def test_diagonal_constant_quotient():
    rep = detect_dn_periodicity(trace_powers(IntMatrix.diagonal([2, 6]), 20))
    assert rep.T == 1 and rep.block == ((2, 6),)


def test_nilpotent_trace_allowed():
    t = trace_powers(IntMatrix.from_rows([[0, 1], [0, 0]]), 6)
    assert t.smith_seq[2].diag == (0, 0)
    assert t.d_seq[0] == (1, 0)
    assert detect_dn_periodicity(t).T == 1


def test_gcd_ratio_examples():
    assert gcd_ratio_seq(IntMatrix.diagonal([2, 4]), 6).samples == (2,) * 6
    g = gcd_ratio_seq(IntMatrix.from_rows([[2, 1], [0, 2]]), 6).samples
    # gcd(A^n) = 2^(n-1) for odd n, 2^n for even n
    assert g == (1, 4) * 3
    with pytest.raises(NilpotentError):
        gcd_ratio_seq(IntMatrix.from_rows([[0, 1], [0, 0]]), 4)


@pytest.mark.parametrize("p", [2, 3, 5])
def test_jordan_valuation_closed_form(p):
    seq = valuation_seq(jordan_example(p).matrix, p, 30)
    for n, v in enumerate(seq.samples):
        expected = n if n % p == 0 else n - 1
        assert v == expected


def test_decompose_jordan():
    d = decompose_valuation(jordan_example(2).matrix, 2, 40)
    assert d.a == 1
    assert d.h_report.T == 2 and set(d.h_report.block) == {0, -1}
    assert d.is_bounded()


def test_decompose_diagonal():
    d = decompose_valuation(IntMatrix.diagonal([2, 3]), 2, 20)
    assert d.a == 0
    assert d.h_report.T == 1 and d.h_report.block == (0,)


def test_fractional_slope():
    a = IntMatrix.from_rows([[0, 2], [1, 0]])  # charpoly x^2 - 2
    assert min_root_valuation(a, 2) == Fraction(1, 2)
    d = decompose_valuation(a, 2, 30)
    assert d.h_report.T == 2 and d.is_bounded()


def test_decompose_nilpotent():
    with pytest.raises(NilpotentError):
        decompose_valuation(IntMatrix.zeros(2), 2, 10)


def test_analyze_nilpotent_has_no_decompositions():
    _, _, decomps = analyze(IntMatrix.from_rows([[0, 1], [0, 0]]), 6)
    assert decomps == []


def test_analyze_auto_primes():
    _, period, decomps = analyze(IntMatrix.diagonal([2, 6]), 20)
    assert [d.p for d in decomps] == [2, 3]
    assert period.T == 1


@settings(max_examples=25, deadline=None)
@given(matrices(2, 3, bound=6))
def test_combined_period_is_lcm_of_prime_periods(a):
    # primes of det(A) cover every D_n only for nonsingular A
    if det(a.to_rows()) == 0:
        return
    t = trace_powers(a, 60)
    rep = detect_dn_periodicity(t)
    primes = relevant_primes(a)
    per_p = per_prime_d_periods(t, primes)
    if not rep.found or not all(r.found for r in per_p.values()):
        return
    assert rep.T == math.lcm(1, *(r.T for r in per_p.values()))


@settings(max_examples=25, deadline=None)
@given(matrices(2, 3, bound=6))
def test_valuation_matches_smith_head(a):
    # v_p(A^n) equals v_p of the first invariant factor
    if is_nilpotent(a):
        return
    for p in relevant_primes(a)[:2]:
        seq = valuation_seq(a, p, 8)
        for n, v in enumerate(seq.samples):
            assert v == int_valuation(smith_form(mat_pow(a, n)).diag[0], p)


def test_singular_input_can_gain_primes():
    a = IntMatrix.from_rows([[0, 1, 0], [2, 0, 0], [1, 0, 0]])
    assert relevant_primes(a) == []
    assert trace_powers(a, 3).smith_seq[2].diag == (1, 2, 0)
