import json

import pytest

from snfpowers.exactmat import IntMatrix, mat_pow
from snfpowers.gen import (
    bruner_counterexample, check_oracle, companion, divisibility_order, jordan_example,
    oracle_trace, random_instance,
)
from snfpowers.ntkit import period_candidates
from snfpowers.powertrace import trace_powers
from snfpowers.seqlab import Status
from snfpowers.smith import smith_form


def test_jordan_oracle_examples():
    assert jordan_example(2).oracle(3) == (4, 16)
    assert jordan_example(3).oracle(3) == (27, 27)
    assert jordan_example(5).oracle(0) == (1, 1)


@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_jordan_oracle_matches_computation(p):
    inst = jordan_example(p, pad=1)
    for n in range(12):
        assert smith_form(mat_pow(inst.matrix, n)).diag == inst.oracle(n)


def test_jordan_padding_layout():
    a = jordan_example(2, pad=2).matrix
    assert a.to_rows()[:2] == [[2, 1, 0, 0], [0, 2, 0, 0]]
    assert a[2, 2] == a[3, 3] == 1


def test_companion_examples():
    assert companion([-256, 0, 0, 1]) == IntMatrix.from_rows([[0, 0, 256], [1, 0, 0], [0, 1, 0]])
    assert companion([3, 1]) == IntMatrix.from_rows([[-3]])
    with pytest.raises(ValueError):
        companion([1, 2])


def test_counterexample_matrix():
    a = bruner_counterexample(4).matrix
    assert a == IntMatrix.from_rows([[0, 0, 256, 0], [1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 2]])


def test_counterexample_second_power():
    inst = bruner_counterexample(4)
    assert inst.oracle(2) == (1, 4, 256, 256)
    assert smith_form(mat_pow(inst.matrix, 2)).diag == (1, 4, 256, 256)


@pytest.mark.parametrize("m", [3, 4, 5])
def test_counterexample_oracle_exact(m):
    inst = bruner_counterexample(m)
    t = trace_powers(inst.matrix, 8 * (m - 1))
    rep = check_oracle(inst, t.smith_seq)
    assert rep.status is Status.ORACLE_EXACT
    assert (rep.n0, rep.T) == (m - 1, m - 1)


def test_check_oracle_detects_mismatch():
    inst = bruner_counterexample(4)
    wrong = oracle_trace(jordan_example(2, pad=2), 10)
    assert check_oracle(inst, wrong).status is Status.NOT_FOUND


def test_counterexample_needs_m3():
    with pytest.raises(ValueError):
        bruner_counterexample(2)


def test_random_deterministic():
    a = random_instance(4, 9, 123)
    assert a == random_instance(4, 9, 123)
    assert a != random_instance(4, 9, 124)
    assert all(-9 <= x <= 9 for x in a.entries)


def test_random_covers_range():
    seen = set()
    for seed in range(60):
        seen.update(random_instance(3, 2, seed).entries)
    assert seen == {-2, -1, 0, 1, 2}


def test_divisibility_order():
    assert divisibility_order([4, 0, 1, 2]) == (1, 2, 4, 0)
    with pytest.raises(ValueError):
        divisibility_order([2, 3])


def test_instance_json():
    obj = jordan_example(3).to_json()
    assert json.loads(json.dumps(obj))["family"] == "jordan"


def test_periods_among_candidates_diagnostic():
    # soft check: the Jordan period p divides some (p^f - 1) p^L
    for p in (2, 3, 5):
        rep = check_oracle(jordan_example(p), oracle_trace(jordan_example(p), 12 * p))
        assert rep.T == p
        assert any(c % rep.T == 0 for c in period_candidates(p, 1, 1))
