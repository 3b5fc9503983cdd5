"""Spin-j tower: derived matrices, closed formula, invariants, expansion."""

from fractions import Fraction

import pytest

from qlorentz import representations as rep
from qlorentz.algebra import reduce_unimodular
from qlorentz.scalars import Gauss, LaurentScalar, ONE
from qlorentz.spinor import canonical_T

HALF = Fraction(1, 2)


def half_integers(lo, hi):
    out = []
    j = Fraction(lo)
    while j <= Fraction(hi):
        out.append(j)
        j += HALF
    return out


# -- basis ------------------------------------------------------------------


def test_m_values_order():
    assert rep.m_values(Fraction(3, 2)) == [Fraction(3, 2), HALF, -HALF,
                                            -Fraction(3, 2)]


def test_norm_sq_table_symmetric():
    for j in half_integers(0, 2):
        table = rep.norm_sq_table(j)
        assert table == tuple(reversed(table))  # m <-> -m symmetry
        for n in table:
            # balanced factorials are invariant under q -> 1/q
            flipped = LaurentScalar({-e: c for e, c in n.terms.items()})
            assert n == flipped


def test_vector_component_words():
    spec = rep.default_rep_spec()
    v, n = rep.vector_V(1, 0)
    # j=1, m=0: word c2 c1 with phase (-q)^1 * q^0 = -q
    assert v == spec.word(("c1", "c2"), -LaurentScalar.s_power(4))
    # the word lands PBW-sorted as c1 c2, picking up the reordering q
    assert n == rep.norm_sq(1, 0)


def test_invalid_jm():
    with pytest.raises(ValueError):
        rep.vector_V(1, Fraction(1, 2))
    with pytest.raises(ValueError):
        rep.m_values(Fraction(1, 3))


# -- derived matrices -------------------------------------------------------


def test_dmatrix_half_is_generator_matrix():
    dm = rep.derive_dmatrix(HALF)
    T = canonical_T(rep.default_rep_spec())
    for i in range(2):
        for j in range(2):
            assert (dm.entries[i][j] - T[i, j]).is_zero()


def test_dmatrix_j_bound():
    with pytest.raises(ValueError):
        rep.derive_dmatrix(Fraction(7, 2))
    with pytest.raises(ValueError):
        rep.formula_dmatrix(Fraction(7, 2))


@pytest.mark.parametrize("variant", ["plain", "tilde"])
def test_coproduct_homomorphism(variant):
    dspec = rep.doubled_spec()
    T1 = rep.doubled_T(dspec, "1")
    T2 = rep.doubled_T(dspec, "2")
    T12 = T1 * T2
    for j in half_integers(HALF, Fraction(3, 2)):
        D1 = rep.derive_dmatrix(j, T=T1, spec=dspec, variant=variant)
        D2 = rep.derive_dmatrix(j, T=T2, spec=dspec, variant=variant)
        D12 = rep.derive_dmatrix(j, T=T12, spec=dspec, variant=variant)
        assert (D12.as_matrix() - D1.as_matrix() * D2.as_matrix()).is_zero()


def test_formula_equals_derived_up_to_j_3():
    spec = rep.default_rep_spec()
    for j in half_integers(HALF, 3):
        derived = rep.derive_dmatrix(j, spec=spec, variant="tilde")
        closed = rep.formula_dmatrix(j, spec=spec)
        for row in rep.compare_dmatrices(derived, closed):
            for r in row:
                assert r.is_zero()


def test_formula_rejects_other_sign_convention():
    # flipping the frozen sign must break the comparison already at j = 1
    flipped = (rep.frozen_exponent, lambda j, m, mp: -rep.frozen_sign(j, m, mp))
    derived = rep.derive_dmatrix(1, variant="tilde")
    closed = rep.formula_dmatrix(1, convention=flipped)
    residuals = [r for row in rep.compare_dmatrices(derived, closed)
                 for r in row]
    assert any(not r.is_zero() for r in residuals)


def test_dmatrix_json():
    dm = rep.derive_dmatrix(1)
    data = dm.to_json()
    assert data["j"] == "1"
    assert data["provenance"] == "derived"
    assert data["basis"] == "unnormalized"
    assert len(data["entries"]) == 3
    assert len(data["norm_sq"]) == 3


# -- classical oracle (sympy) -----------------------------------------------


def test_classical_limit_matches_symmetric_power_oracle():
    sympy = pytest.importorskip("sympy")
    a, b, c, d, y1, y2 = sympy.symbols("a b c d y1 y2", commutative=True)
    # classical coaction at unit determinant: y' = y * adj(T^t)
    y1p = y1 * d - y2 * b
    y2p = -y1 * c + y2 * a

    for j in half_integers(HALF, 2):
        mv = rep.m_values(j)
        dm = rep.derive_dmatrix(j)
        for col, m in enumerate(mv):
            transformed = sympy.expand(
                (-1) ** int(j + m) * y2p ** int(j + m) * y1p ** int(j - m))
            poly = sympy.Poly(transformed, y1, y2)
            for row, mp in enumerate(mv):
                want = poly.coeff_monomial(
                    y1 ** int(j - mp) * y2 ** int(j + mp))
                want = sympy.expand(want * (-1) ** int(j + mp))
                # the engine entry at q = 1, as a sympy polynomial
                got = sympy.Integer(0)
                entry = dm.entries[row][col]
                for w, coeff in entry.terms.items():
                    val = sum((g for _, g in coeff.monomials()),
                              start=Gauss(0))
                    assert val.im == 0
                    term = sympy.Rational(val.re.numerator,
                                          val.re.denominator)
                    for name in entry.spec.word_names(w):
                        term *= {"a": a, "b": b, "c": c, "d": d}[name]
                    got += term
                assert sympy.expand(got - want) == 0


# -- invariants -------------------------------------------------------------


def test_invariant_Q_under_coaction():
    for j in half_integers(0, 3):
        q0 = rep.invariant_Q(j)
        q1 = rep.invariant_Q_transformed(j)
        assert reduce_unimodular(q1 - q0).is_zero()


def test_invariant_weight_endpoints():
    # k = 0 term is always 1; the family is determined only up to scale
    for j in half_integers(0, 2):
        assert rep.invariant_weight(j, j) == ONE
    with pytest.raises(ValueError):
        rep.invariant_weight(1, 2)


def test_invariant_Q_fundamental_form():
    # j = 1/2: Q is the familiar epsilon pairing x1 c1 + q^2-weighted x2 c2
    # up to overall scale
    spec = rep.invariant_spec()
    q = rep.invariant_Q(HALF, spec=spec)
    x1c1 = q.coefficient(("x1", "c1"))
    x2c2 = q.coefficient(("x2", "c2"))
    assert not x1c1.is_zero() and not x2c2.is_zero()
    ratio = x2c2 * x1c1.inverse_monomial()
    assert ratio == LaurentScalar.q_power(2)


def test_c_matrix():
    cm = rep.c_matrix(1)
    from qlorentz.scalars import neg_q_power
    assert cm.diagonal == (neg_q_power(2), ONE, neg_q_power(-2))
    cm_q = rep.c_matrix(HALF, minus_q=False)
    assert cm_q.diagonal == (LaurentScalar.s_power(1),
                             LaurentScalar.s_power(-1))


# -- graded expansion -------------------------------------------------------


def test_expansion_resolves_symmetric_convention():
    report = rep.check_expansion(2)
    assert report.lemma_commuting_products
    assert report.resolved == ("symmetric_q2",)
    # all conventions agree at 2j <= 1, and the alternatives die at 2j = 2
    for tj, lhs_zero, closes in report.per_grade:
        if tj == 0:
            assert all(closes.values())
        if tj == 1:
            assert lhs_zero and all(closes.values())
        if tj == 2:
            assert closes["symmetric_q2"]
            assert not closes["classical"]
            assert not closes["basic"]


def test_extraction_residual_guard():
    # feeding a tilde-variant collection a plain-basis polynomial of wrong
    # degree must raise, not silently drop terms
    spec = rep.default_rep_spec()
    poly = spec.word(("c1",))
    with pytest.raises(rep.ExtractionResidualError):
        rep._collect(1, poly, spec, ("c1", "c2"), "plain")
