"""Exact coefficient ring: axioms, q-combinatorics oracles, round trips."""

from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from qlorentz.scalars import (ExactDivisionError, Gauss, LaurentScalar, ONE,
                              ZERO, IMAG, basic_integer, eps_power,
                              neg_q_power, q_binomial, q_factorial,
                              sym_factorial, sym_integer)


fractions = st.fractions(min_value=-50, max_value=50, max_denominator=9)
gausses = st.builds(Gauss, fractions, fractions)
scalars = st.dictionaries(st.integers(-6, 6), gausses, max_size=4).map(
    LaurentScalar)


# -- ring axioms (property-based) ------------------------------------------


@settings(max_examples=200, deadline=None)
@given(scalars, scalars, scalars)
def test_ring_axioms(x, y, z):
    assert (x + y) + z == x + (y + z)
    assert x + y == y + x
    assert (x * y) * z == x * (y * z)
    assert x * y == y * x
    assert x * (y + z) == x * y + x * z
    assert x + ZERO == x
    assert x * ONE == x
    assert (x - x).is_zero()


@settings(max_examples=100, deadline=None)
@given(scalars, scalars)
def test_specialize_is_a_homomorphism(x, y):
    q = 1.37
    assert abs((x + y).specialize(q) - (x.specialize(q) + y.specialize(q))) \
        < 1e-9
    assert abs((x * y).specialize(q) - x.specialize(q) * y.specialize(q)) \
        < 1e-9


@settings(max_examples=100, deadline=None)
@given(scalars)
def test_json_round_trip(x):
    assert LaurentScalar.from_json(x.to_json()) == x


@settings(max_examples=100, deadline=None)
@given(scalars, scalars)
def test_division_round_trip(x, y):
    if y.is_zero():
        with pytest.raises(ZeroDivisionError):
            x.divmod_scalar(y)
        return
    quo, rem = x.divmod_scalar(y)
    assert quo * y + rem == x


def test_exact_div_raises_on_remainder():
    with pytest.raises(ExactDivisionError):
        (LaurentScalar.q_power(1) + ONE).exact_div(
            LaurentScalar.q_power(1) - ONE)


def test_inverse_monomial():
    x = LaurentScalar({3: Gauss(Fraction(2, 5), 1)})
    assert x * x.inverse_monomial() == ONE
    with pytest.raises(ValueError):
        (ONE + LaurentScalar.q_power(1)).inverse_monomial()


# -- branch and special powers ---------------------------------------------


def test_neg_q_branch():
    # (-q)^(1/2) = i q^(1/2), fixed branch
    assert neg_q_power(1) == IMAG * LaurentScalar.s_power(1)
    assert neg_q_power(2) == -LaurentScalar.q_power(1)
    assert neg_q_power(1) * neg_q_power(1) == neg_q_power(2)
    assert neg_q_power(-2) * neg_q_power(2) == ONE
    assert neg_q_power(0) == ONE


def test_eps_power():
    # q^(n(n-1)/2) and its reciprocal
    assert eps_power(0) == ONE
    assert eps_power(1) == ONE
    assert eps_power(2) == LaurentScalar.q_power(1)
    assert eps_power(3) == LaurentScalar.q_power(3)
    assert eps_power(3, inverse=True) == LaurentScalar.q_power(-3)


# -- q-combinatorics against independent oracles ----------------------------


def test_basic_integer_closed_form():
    q = LaurentScalar.q_power(1)
    for n in range(8):
        # (q^n - 1)/(q - 1)
        num = LaurentScalar.q_power(n) - ONE
        if n == 0:
            assert basic_integer(n).is_zero()
        else:
            assert basic_integer(n) == num.exact_div(q - ONE)


@pytest.mark.parametrize("base", [None, LaurentScalar.q_power(2)])
def test_q_binomial_pascal_recurrence(base):
    # independent oracle: C(n,k) = C(n-1,k-1) + base^k * C(n-1,k)
    b = LaurentScalar.q_power(1) if base is None else base
    for n in range(1, 9):
        for k in range(n + 1):
            got = q_binomial(n, k, base)
            if k == 0 or k == n:
                assert got == ONE
                continue
            want = (q_binomial(n - 1, k - 1, base)
                    + (b ** k) * q_binomial(n - 1, k, base))
            assert got == want


def test_q_factorial_classical_limit():
    for n in range(7):
        val = q_factorial(n).specialize(1.0)
        import math
        assert abs(val - math.factorial(n)) < 1e-9


def test_sym_integer_closed_form():
    # [n] = (Q^n - Q^-n)/(Q - Q^-1) at base Q = q^2
    Q = LaurentScalar.q_power(2)
    for n in range(1, 7):
        num = Q ** n - Q ** (-n)
        den = Q - Q ** (-1)
        assert sym_integer(n, base_s_exp=4) == num.exact_div(den)
    assert sym_integer(0, base_s_exp=4).is_zero()


def test_sym_factorial_symmetry_under_q_inversion():
    # balanced factorials are invariant under q -> 1/q
    for n in range(6):
        f = sym_factorial(n, base_s_exp=4)
        flipped = LaurentScalar({-e: c for e, c in f.terms.items()})
        assert f == flipped


def test_exact_specialization():
    x = LaurentScalar.q_power(2) + LaurentScalar.q_power(-1) * Gauss(0, 1)
    v = x.specialize(Fraction(3), exact=True)
    assert v == Gauss(9, Fraction(1, 3))
    with pytest.raises(ValueError):
        LaurentScalar.s_power(1).specialize(Fraction(3), exact=True)


def test_conjugate_fixes_real_q():
    x = LaurentScalar({1: Gauss(1, 2), -3: Gauss(0, -1)})
    assert x.conjugate().conjugate() == x
    assert (x + x.conjugate()).conjugate() == x + x.conjugate()
