"""Expression grammar: round trips, precedence, error positions."""

import random
from fractions import Fraction

import pytest

from qlorentz.algebra import NAMED_SPECS
from qlorentz.parsing import (ExprError, lower, parse, parse_poly,
                              print_canonical)
from qlorentz.scalars import Gauss, LaurentScalar


@pytest.fixture(scope="module")
def spec():
    return NAMED_SPECS["spinor"]()


# -- directed grammar cases -------------------------------------------------


def test_ordered_products(spec):
    # juxtaposition-free grammar keeps noncommutative order explicit
    p = parse_poly("q^(1/2)*a*b - b*a", spec)
    want = (spec.word(("a", "b"), LaurentScalar.s_power(1))
            - spec.word(("b", "a")))
    assert p == want


def test_da_normalizes(spec):
    p = parse_poly("d*a", spec)
    lam = LaurentScalar.q_power(1) - LaurentScalar.q_power(-1)
    assert p == spec.word(("a", "d")) - spec.word(("b", "c"), lam)


def test_determinant_literal(spec):
    p = parse_poly("a*d - q*b*c", spec)
    assert p == (spec.word(("a", "d"))
                 - spec.word(("b", "c"), LaurentScalar.q_power(1)))


def test_scalar_atoms(spec):
    assert parse_poly("3/4", spec) == spec.scalar(Fraction(3, 4))
    assert parse_poly("i", spec) == spec.scalar(LaurentScalar.imag_unit())
    assert parse_poly("i^2", spec) == spec.scalar(-1)
    assert parse_poly("q", spec) == spec.scalar(LaurentScalar.q_power(1))
    assert parse_poly("q^-3", spec) == spec.scalar(LaurentScalar.q_power(-3))
    assert parse_poly("q^(5/2)", spec) == spec.scalar(
        LaurentScalar.s_power(5))
    assert parse_poly("q^(-1/2)", spec) == spec.scalar(
        LaurentScalar.s_power(-1))


def test_precedence_and_grouping(spec):
    assert parse_poly("a + b*c", spec) == \
        spec.word(("a",)) + spec.word(("b", "c"))
    assert parse_poly("(a + b)*c", spec) == \
        spec.word(("a", "c")) + spec.word(("b", "c"))
    assert parse_poly("a^2*b", spec) == spec.word(("a", "a", "b"))
    assert parse_poly("-a + b", spec) == \
        spec.word(("b",)) - spec.word(("a",))
    assert parse_poly("-(a - b)", spec) == \
        spec.word(("b",)) - spec.word(("a",))


def test_negative_scalar_powers(spec):
    assert parse_poly("(2*q)^-1", spec) == spec.scalar(
        LaurentScalar.q_power(-1) * Gauss(Fraction(1, 2)))
    with pytest.raises(ExprError):
        parse_poly("a^-1", spec)
    with pytest.raises(ExprError):
        parse_poly("(a + b)^-1", spec)


def test_print_canonical_examples(spec):
    lam = LaurentScalar.q_power(1)
    delta = spec.word(("a", "d")) - spec.word(("b", "c"), lam)
    assert print_canonical(delta) == "a*d - q*b*c"
    assert print_canonical(spec.zero()) == "0"
    assert print_canonical(spec.one()) == "1"


# -- error reporting --------------------------------------------------------


@pytest.mark.parametrize("text,line,col", [
    ("a +", 1, 4),
    ("2q", 1, 2),
    ("q^(1/3)", 1, 6),
    ("(a", 1, 3),
    ("a^b", 1, 3),
    ("a $ b", 1, 3),
    ("a *\n* b", 2, 1),
])
def test_syntax_error_positions(spec, text, line, col):
    with pytest.raises(ExprError) as err:
        parse_poly(text, spec)
    assert err.value.line == line
    assert err.value.column == col


def test_unknown_generator_error(spec):
    with pytest.raises(ExprError) as err:
        parse_poly("a*zz", spec)
    assert "zz" in str(err.value)
    assert err.value.column == 3


def test_juxtaposition_is_rejected(spec):
    with pytest.raises(ExprError):
        parse_poly("a b", spec)


# -- round-trip property ----------------------------------------------------


def random_poly(spec, rng, names=("a", "b", "c", "d", "x1", "x2", "c1", "c2"),
                max_terms=5, max_len=4):
    out = spec.zero()
    for _ in range(rng.randint(1, max_terms)):
        w = tuple(rng.choice(names) for _ in range(rng.randint(0, max_len)))
        coeff = LaurentScalar({
            rng.randint(-4, 4): Gauss(
                Fraction(rng.randint(-3, 3), rng.randint(1, 4)),
                Fraction(rng.randint(-3, 3), rng.randint(1, 4)))})
        out = out + spec.word(w, coeff)
    return out


def test_round_trip_property(spec):
    rng = random.Random(2024)
    for _ in range(400):
        p = random_poly(spec, rng)
        text = print_canonical(p)
        back = parse_poly(text, spec)
        assert (p - back).is_zero()
        # canonical text is a fixed point
        assert print_canonical(back) == text


def test_ast_reuse(spec):
    ast = parse("a*d - q*b*c")
    p1 = lower(ast, spec)
    p2 = lower(ast, spec)
    assert p1 == p2
