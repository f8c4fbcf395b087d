import cmath
import math
import random
from fractions import Fraction as F

import mpmath
import pytest
from hypothesis import assume, given, strategies as st

from periodet.algebra import Poly, QMatrix, RationalFunction
from periodet.connection import LogConnection
from periodet.gamma import (
    Condition,
    GammaPoleError,
    delta,
    gamma,
    gamma_complex,
    gamma_of_matrix,
    gamma_of_rf,
    partial_shift,
    phi_aggregate,
    gamma_factor,
)
from periodet.suites import gamma_partial_delta_suite, gauss_multiplication_suite, random_gamma_rf

T = RationalFunction(Poly.x())


def lin(a):
    return RationalFunction(Poly.linear(a))


def mp_gamma(z):
    return complex(mpmath.gamma(mpmath.mpc(z.real, z.imag)))


class TestGammaComplex:
    def test_values(self):
        assert gamma(1) == 1
        assert gamma(5) == 24
        assert gamma(0.5) == pytest.approx(1.7724538509055159, rel=1e-15)

    def test_pole(self):
        with pytest.raises(GammaPoleError):
            gamma_complex(-3)
        assert gamma_complex(-3 + 1e-10).condition is Condition.NEAR_POLE

    @given(st.complex_numbers(max_magnitude=10, allow_nan=False, allow_infinity=False))
    def test_against_mpmath(self, z):
        assume(min(abs(z - n) for n in range(-11, 1)) > 1e-3)
        assert abs(gamma(z) / mp_gamma(z) - 1) < 1e-12

    @given(st.complex_numbers(max_magnitude=10, allow_nan=False, allow_infinity=False))
    def test_functional_equation(self, z):
        assume(min(abs(z - n) for n in range(-11, 1)) > 1e-3)
        assert abs(gamma(z + 1) / (z * gamma(z)) - 1) < 1e-11

    @given(st.floats(-8, 8).filter(lambda x: abs(x - round(x)) > 1e-3),
           st.floats(-3, 3))
    def test_reflection(self, x, y):
        z = complex(x, y)
        v = gamma(z) * gamma(1 - z) * cmath.sin(math.pi * z) / math.pi
        assert abs(v - 1) < 1e-10


class TestGammaHomomorphism:
    def test_examples(self):
        assert gamma_of_rf(lin(F(1, 2))) == pytest.approx(math.sqrt(math.pi), rel=1e-14)
        assert gamma_of_rf(lin(-3)) == pytest.approx(-1 / 6, rel=1e-14)
        assert gamma_of_rf(RationalFunction(Poly([7])) * lin(2)) == pytest.approx(1)

    def test_partial_shift_examples(self):
        assert partial_shift(T) == T / (T - 1)
        assert partial_shift(RationalFunction(Poly([5]))) == RationalFunction(Poly([1]))
        assert partial_shift(T * T) == (T * T) / ((T - 1) * (T - 1))

    def test_delta_examples(self):
        assert delta(lin(F(3, 7))) == F(3, 7)
        assert delta(T) == 1
        assert delta(RationalFunction(Poly([3]))) == 1

    def test_gamma_of_matrix(self):
        assert gamma_of_matrix(QMatrix.of([[F(1, 2)]])) == pytest.approx(math.sqrt(math.pi))
        assert gamma_of_matrix(QMatrix.diag([F(1, 3), F(2, 3)])) == pytest.approx(
            2 * math.pi / math.sqrt(3), rel=1e-14)
        assert gamma_of_matrix(QMatrix.of([[0, 1], [0, 0]])) == pytest.approx(1)

    def test_partial_delta_suite(self):
        assert gamma_partial_delta_suite(100, 42) < 1e-10

    def test_multiplication_suite(self):
        assert gauss_multiplication_suite((2, 3, 5), 50, 42) < 1e-9

    @given(st.integers(0, 2 ** 32))
    def test_multiplicative(self, seed):
        rng = random.Random(seed)
        f, g = random_gamma_rf(rng), random_gamma_rf(rng)
        try:
            lhs = gamma_of_rf(f * g)
        except (GammaPoleError, ValueError):
            return
        rhs = gamma_of_rf(f) * gamma_of_rf(g)
        assert abs(lhs / rhs - 1) < 1e-10


class TestConnectionAggregates:
    def test_phi_without_infinity(self):
        a, b = F(1, 3), F(1, 5)
        conn = LogConnection.rank_one([0, 1], [a, b], include_infinity=False)
        assert phi_aggregate(conn) == lin(a) * lin(b)

    def test_trivial(self):
        conn = LogConnection.rank_one([0, 1], [0, 0], include_infinity=False)
        assert phi_aggregate(conn) == T * T

    def test_gamma_factor(self):
        conn = LogConnection.rank_one([0, 1], [F(1, 3), F(1, 3)])
        want = mp_gamma(1 / 3) ** 2 * cmath.exp(-2j * math.pi / 3) / mp_gamma(1 + 2 / 3)
        assert abs(gamma_factor(conn) / want - 1) < 1e-13
