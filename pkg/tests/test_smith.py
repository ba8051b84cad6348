import math
import random

import pytest
from hypothesis import given, settings, strategies as st
from sympy import Matrix, ZZ
from sympy.matrices.normalforms import smith_normal_form

from snfpowers.exactmat import IntMatrix, det, mat_pow
from snfpowers.smith import (
    CorruptDivisorsError, DeterminantalDivisors, SmithForm, determinantal_divisors,
    is_divisibility_chain, local_smith, reconstruct_global, relevant_primes, smith_form,
    snf_from_divisors,
)

from strategies import matrices


def sympy_snf(a: IntMatrix) -> tuple:
    s = smith_normal_form(Matrix(a.to_rows()), domain=ZZ)
    diag = [abs(int(s[i, i])) for i in range(a.rows)]
    nonzero = sorted(d for d in diag if d)
    return tuple(nonzero + [0] * (len(diag) - len(nonzero)))


def test_identity():
    assert smith_form(IntMatrix.identity(4)).diag == (1, 1, 1, 1)


def test_small_example():
    assert smith_form(IntMatrix.from_rows([[2, 4], [4, 4]])).diag == (2, 4)


def test_jordan_cube_divisible_branch():
    a = IntMatrix.from_rows([[3, 1], [0, 3]])
    assert smith_form(mat_pow(a, 3)).diag == (27, 27)


def test_zero_matrix():
    s = smith_form(IntMatrix.zeros(3))
    assert s.diag == (0, 0, 0) and s.rank == 0


def test_rank_deficient():
    s = smith_form(IntMatrix.from_rows([[2, 4, 6], [1, 2, 3], [0, 0, 0]]))
    assert s.diag == (1, 0, 0) and s.rank == 1


def test_counterexample_first_power_value():
    a = IntMatrix.from_rows([[0, 0, 256, 0], [1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 2]])
    # gamma_3 = 2 (minor {1,2,3}x{0,1,3}), gamma_4 = |det| = 512
    d = determinantal_divisors(a)
    assert d.gamma == (1, 1, 1, 2, 512)
    assert smith_form(a).diag == (1, 1, 2, 256)


@settings(max_examples=150)
@given(matrices(1, 5, bound=9))
def test_matches_sympy(a):
    assert smith_form(a).diag == sympy_snf(a)


@given(matrices(1, 5, bound=9))
def test_eq1_cross_check(a):
    s = smith_form(a)
    g = determinantal_divisors(a)
    assert s.diag == snf_from_divisors(g).diag
    assert s.is_chain()
    for i in range(1, s.rank + 1):
        assert math.prod(s.diag[:i]) == g.gamma[i]


@given(matrices(1, 5, bound=9))
def test_witnesses(a):
    s = smith_form(a, with_witnesses=True)
    assert abs(det(s.u.to_rows())) == 1
    assert abs(det(s.v.to_rows())) == 1
    assert s.u @ s.matrix() @ s.v == a


def test_witnesses_on_large_power():
    a = IntMatrix.from_rows([[3, 1, 0], [0, 3, 1], [2, 0, 3]])
    m = mat_pow(a, 25)
    s = smith_form(m, with_witnesses=True)
    assert s.u @ s.matrix() @ s.v == m
    assert s.diag == smith_form(m).diag


@settings(max_examples=30)
@given(matrices(2, 4, bound=5), st.integers(0, 8))
def test_invariant_factors_divide_next_power(a, n):
    s0, s1 = smith_form(mat_pow(a, n)), smith_form(mat_pow(a, n + 1))
    for lo, hi in zip(s0.diag, s1.diag):
        if lo:
            assert hi % lo == 0
        else:
            assert hi == 0


def test_determinantal_examples():
    assert determinantal_divisors(IntMatrix.identity(3)).gamma == (1, 1, 1, 1)
    assert determinantal_divisors(IntMatrix.from_rows([[2, 4], [4, 4]])).gamma == (1, 2, 8)


def test_determinantal_counterexample_square():
    a = IntMatrix.from_rows([[0, 0, 256, 0], [1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 2]])
    assert determinantal_divisors(mat_pow(a, 2)).gamma[1] == 1


def test_snf_from_divisors_examples():
    assert snf_from_divisors(DeterminantalDivisors((1, 1, 1, 1))).diag == (1, 1, 1)
    assert snf_from_divisors(DeterminantalDivisors((1, 2, 8))).diag == (2, 4)
    s = snf_from_divisors(DeterminantalDivisors((1, 2, 0)))
    assert s.diag == (2, 0) and s.rank == 1


@pytest.mark.parametrize("gamma", [(1, 2, 5), (2, 4), (1, 0, 3), (1, 2, 4, 4 * 3)])
def test_snf_from_divisors_rejects_corrupt(gamma):
    # (1,2,4,12) gives ratios (2,2,3): not a chain
    with pytest.raises(CorruptDivisorsError):
        snf_from_divisors(DeterminantalDivisors(gamma))


def test_local_smith_examples():
    assert local_smith(IntMatrix.diagonal([2, 4]), 3).diag == (1, 1)
    assert local_smith(IntMatrix.from_rows([[2, 4], [4, 4]]), 2).diag == (2, 4)
    assert local_smith(IntMatrix.diagonal([6, 12]), 3).diag == (3, 3)
    assert local_smith(IntMatrix.diagonal([6, 0]), 2).diag == (2, 0)


def test_reconstruct_examples():
    part = SmithForm((2, 4), 2)
    assert reconstruct_global([(2, part)]).diag == (2, 4)
    assert reconstruct_global([(2, SmithForm((2, 4), 2)), (3, SmithForm((1, 3), 2))]).diag == (2, 12)


def test_reconstruct_mismatch():
    with pytest.raises(ValueError):
        reconstruct_global([(2, SmithForm((2, 4), 2)), (3, SmithForm((1, 0), 1))])


def test_reconstruct_random():
    rng = random.Random(8)
    for _ in range(40):
        a = IntMatrix.from_rows([[rng.randint(-9, 9) for _ in range(3)] for _ in range(3)])
        primes = relevant_primes(a)
        s = smith_form(a)
        if primes:
            assert reconstruct_global((p, local_smith(a, p)) for p in primes).diag == s.diag


def test_chain_predicate():
    assert is_divisibility_chain((1, 2, 4, 0))
    assert not is_divisibility_chain((2, 3))
    assert not is_divisibility_chain((0, 2))
    assert not is_divisibility_chain((-1, 2))
