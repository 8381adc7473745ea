"""Limit-shape and fluctuation series: transforms, drifts, covariances."""

import random
from fractions import Fraction

import pytest

from jackwalk.asymptotics import (
    build_U,
    build_V,
    burgers_evolve,
    default_order,
    limit_covariance,
    limit_covariance_two_times,
    limit_moment,
    moments_to_stieltjes,
    packed_limit_moments,
    stieltjes_R_H,
    stieltjes_from_inverse,
    stieltjes_inverse,
    stieltjes_moments,
    toeplitz_wienerhopf_check,
    walk_covariance_kernel,
    walk_limit_data,
    with_order_retry,
)
from jackwalk.errors import OrderError, StabilityError
from jackwalk.measures import AtomicMeasure
from jackwalk.series import TruncSeries
from jackwalk.specializations import Specialization
from jackwalk.verify import toeplitz_cases

half = Fraction(1, 2)
one = Fraction(1)


def bernoulli_walk_frame(tau, order=8):
    rho = Specialization.single_beta(one)
    moments = packed_limit_moments(2 * order + 1)
    data = walk_limit_data(rho, one, Fraction(tau), moments, order)
    return build_U(data), build_V(data)


def test_packed_limit_moments():
    assert packed_limit_moments(6) == \
        [Fraction(-1, 2), Fraction(1, 3), Fraction(-1, 4),
         Fraction(1, 5), Fraction(-1, 6), Fraction(1, 7)]


def test_stieltjes_round_trips():
    moments = [Fraction(1, 2), Fraction(1, 3), Fraction(-1, 5), Fraction(2)]
    m = moments_to_stieltjes(moments)
    assert m.var == "1/z" and m.coefficient(1) == 1
    assert stieltjes_moments(m, 4) == moments
    k = stieltjes_inverse(m, var="u")
    back = stieltjes_from_inverse(k)
    assert stieltjes_moments(back, 4) == moments


def test_stieltjes_R_H_point_mass():
    m, R, H = stieltjes_R_H([Fraction(0)] * 9, 9)
    assert list(m.items()) == [(1, 1)]
    assert not any(c for _, c in R.items())
    assert H.coefficient(1) == half
    assert H.coefficient(2) == Fraction(-7, 24)
    assert H.coefficient(3) == Fraction(5, 24)


def test_H_prime_at_one_is_mean_shifted():
    # H'(1) = m_1 + 1/2 across atomic measures
    rng = random.Random(43)
    for _ in range(8):
        atoms = [(Fraction(rng.randint(-3, 3), 4), Fraction(1, 4))
                 for _ in range(4)]
        mu = AtomicMeasure(atoms)
        _, _, H = stieltjes_R_H(mu.moments(9), 9)
        assert H.derivative().coefficient(0) == mu.moment(1) + half
    # packed and symmetric-uniform values used by the trend checks
    _, _, Hp = stieltjes_R_H(packed_limit_moments(9), 9)
    assert Hp.derivative().coefficient(0) == 0
    uniform = [Fraction(0) if k % 2 else Fraction(1, k + 1)
               for k in range(1, 10)]
    _, _, Hu = stieltjes_R_H(uniform, 9)
    assert Hu.derivative().coefficient(0) == half


def test_limit_moment_zero_drift():
    for k in range(1, 7):
        assert limit_moment(k, 0, one) == Fraction((-1) ** k, k + 1)
        assert limit_moment(k, 0, half) == Fraction((-1) ** k, k + 1)


def test_limit_moment_constant_drift_shifts():
    c = Fraction(3, 2)
    U = TruncSeries.constant("z-1", c * half)
    assert limit_moment(1, U, half) - limit_moment(1, 0, half) == c


def test_limit_moment_bernoulli_walk():
    U, _ = bernoulli_walk_frame(1)
    assert [limit_moment(k, U, one) for k in range(1, 5)] == \
        [0, Fraction(1, 3), 0, Fraction(1, 5)]
    U_half, _ = bernoulli_walk_frame(Fraction(1, 2))
    assert limit_moment(1, U_half, one) == Fraction(-1, 4)


def test_limit_covariance_examples():
    zeroV = TruncSeries("w", 0, [TruncSeries("z", 0, [Fraction(0)], 6)], 6)
    assert limit_covariance(1, 1, 0, zeroV, one) == 0
    v = Fraction(5, 7)
    constV = TruncSeries("w", 0, [TruncSeries("z", 0, [v], 6)], 6)
    assert limit_covariance(1, 1, 0, constV, half) == v / half ** 2


def test_limit_covariance_bernoulli_walk():
    U, V = bernoulli_walk_frame(1)
    assert limit_covariance(1, 1, U, V, one) == Fraction(1, 4)
    assert limit_covariance(2, 2, U, V, one) == Fraction(1, 8)
    assert limit_covariance(1, 2, U, V, one) == 0
    assert limit_covariance(1, 3, U, V, one) == Fraction(3, 16)
    assert limit_covariance(3, 1, U, V, one) == Fraction(3, 16)


def test_two_time_covariance_independent_increments():
    # the walk gains independent mass each step, so the covariance across
    # times equals the variance at the earlier time: tau/4 for k = l = 1
    U_q, V = bernoulli_walk_frame(Fraction(1, 4))
    U_h, _ = bernoulli_walk_frame(Fraction(1, 2))
    U_1, _ = bernoulli_walk_frame(1)
    assert limit_covariance(1, 1, U_h, V, one) == Fraction(1, 8)
    assert limit_covariance_two_times(1, 1, U_h, U_1, V, one) == Fraction(1, 8)
    assert limit_covariance_two_times(1, 1, U_q, U_1, V, one) == Fraction(1, 16)
    assert limit_covariance_two_times(1, 1, U_q, U_h, V, one) == Fraction(1, 16)
    # equal arguments reduce to the one-time value
    assert limit_covariance_two_times(2, 2, U_1, U_1, V, one) == \
        limit_covariance(2, 2, U_1, V, one)


def test_walk_covariance_kernel_symmetric():
    # the packed start produces the zero kernel; an off-center start does not
    packedV = walk_covariance_kernel(packed_limit_moments(17), 8)
    for j in range(6):
        row = packedV.coefficient(j)
        assert not isinstance(row, TruncSeries) or not any(v for _, v in row.items())

    mu = AtomicMeasure([(half, Fraction(3, 4)), (-half, Fraction(1, 4))])
    V = walk_covariance_kernel(mu.moments(17), 8)

    def entry(i, j):
        row = V.coefficient(i)
        return row.coefficient(j) if isinstance(row, TruncSeries) else 0

    assert entry(0, 0) == Fraction(5, 48)
    assert any(entry(i, j) for i in range(6) for j in range(6))
    for i in range(6):
        for j in range(6):
            assert entry(i, j) == entry(j, i)


def test_burgers_cross_pipeline():
    rho = Specialization.single_beta(half)
    moments = packed_limit_moments(17)
    m0 = moments_to_stieltjes(moments)
    for tau in (half, one, Fraction(2)):
        evolved = burgers_evolve(m0, rho, tau, one, 8)
        data = walk_limit_data(rho, one, tau, moments, 8)
        U = build_U(data)
        assert stieltjes_moments(evolved, 4) == \
            [limit_moment(k, U, one) for k in range(1, 5)]
    # tau = 1/2 evolved moments, pinned
    assert stieltjes_moments(burgers_evolve(m0, rho, half, one, 8), 4) == \
        [Fraction(-1, 3), Fraction(11, 36), Fraction(-23, 108),
         Fraction(1201, 6480)]


def test_burgers_requires_stability():
    m0 = moments_to_stieltjes(packed_limit_moments(17))
    with pytest.raises(StabilityError):
        burgers_evolve(m0, Specialization.single_beta(one), one, one, 8)
    with pytest.raises(ValueError):
        burgers_evolve(TruncSeries("1/z", 0, [1, 1], 5),
                       Specialization.single_beta(half), one, one, 3)


def test_burgers_time_zero():
    m0 = moments_to_stieltjes(packed_limit_moments(17))
    ev = burgers_evolve(m0, Specialization.single_beta(half), 0, one, 6)
    assert stieltjes_moments(ev, 6) == packed_limit_moments(6)


def test_toeplitz_examples():
    ok, report = toeplitz_wienerhopf_check({}, 3)
    assert ok and len(report) == 4
    ok, _ = toeplitz_wienerhopf_check({-1: one}, 4)
    assert ok
    ok, report = toeplitz_wienerhopf_check({1: one, -1: one}, 5)
    assert ok
    assert "power 2: minor 1" in report[2]
    assert "power 4: minor 2" in report[4]


def test_toeplitz_random_suite():
    assert all(ok for _, ok in toeplitz_cases(10, 6, seed=7))


def test_default_order_and_retry():
    assert default_order([1, 3]) == 10
    assert default_order([2]) == 8
    calls = []

    def flaky(order):
        calls.append(order)
        if order < 8:
            raise OrderError("too small")
        return order

    assert with_order_retry(flaky, 4) == 8
    assert calls == [4, 8]
