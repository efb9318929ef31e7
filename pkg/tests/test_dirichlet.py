"""Tests for truncated Dirichlet series arithmetic."""

import pytest

from core.arith import mobius
from core.dirichlet import DirichletCoeffs, euler_factor_inverse, zeta_2s_minus_1_inverse
from core.errors import DomainError

N = 60


@pytest.fixture
def ones():
    return DirichletCoeffs.from_function(lambda n: 1, N, "zeta")


def test_unit_is_neutral(ones):
    assert ones.convolve(DirichletCoeffs.unit(N)) == ones


def test_inverse_of_zeta_is_mobius(ones):
    assert ones.inverse().values() == [mobius(n) for n in range(1, N + 1)]
    assert ones.convolve(ones.inverse()) == DirichletCoeffs.unit(N)


def test_square_of_zeta_counts_divisors(ones):
    tau = ones.convolve(ones)
    assert [tau[n] for n in (1, 6, 12, 36)] == [1, 4, 6, 9]
    assert tau.is_multiplicative()


def test_zeta_2s_minus_1_inverse():
    c = zeta_2s_minus_1_inverse(30)
    nonzero = {n: c[n] for n in range(1, 31) if c[n]}
    assert nonzero == {1: 1, 4: -2, 9: -3, 25: -5}


def test_euler_factor_inverse():
    c = euler_factor_inverse([2, 3], 100)
    nonzero = {n: c[n] for n in range(1, 101) if c[n]}
    assert nonzero == {1: 1, 4: 2, 9: 3, 16: 4, 36: 6, 64: 8, 81: 9}
    assert euler_factor_inverse([], 10) == DirichletCoeffs.unit(10)


def test_multiplicativity_detects_defects():
    bad = DirichletCoeffs.from_function(lambda n: 0 if n == 6 else n * n, 20)
    assert not bad.is_multiplicative()
    assert bad.is_multiplicative([(2, 5), (3, 4)])
    assert not DirichletCoeffs.from_function(lambda n: 2, 10).is_multiplicative()


def test_arithmetic_and_mismatch(ones):
    doubled = ones + ones
    assert doubled[7] == 2
    assert (doubled - ones) == ones
    assert ones.first_mismatch(ones) is None
    assert ones.first_mismatch(DirichletCoeffs.unit(N)) == 2
    assert (ones + ones.truncate(10)).N == 10


def test_errors(ones):
    with pytest.raises(DomainError):
        ones[0]
    with pytest.raises(DomainError):
        ones.truncate(N + 1)
    with pytest.raises(DomainError):
        DirichletCoeffs.from_function(lambda n: 2, 10).inverse()
    with pytest.raises(DomainError):
        DirichletCoeffs([0])
