"""Spin-j representation tower over the quantum plane.

Spin-j vectors are monomials in the lower spinor components c1, c2 with
c2*c1 = q c1*c2.  All exact computation happens in the *unnormalized*
monomial basis

    v(j, m)      =  (-q)^(j+m) phase(1/q | j+m) * c2^(j+m) c1^(j-m)   (plain)
    v~(j, m)     =  phase(q | j-m)   * c1^(j+m) c2^(j-m)             (tilde)

with phase(q | n) = q^(n(n-1)/2); the (-q)-power on the plain basis pins the
fundamental block to the generator matrix itself (D at j = 1/2 equals
[[a, b], [c, d]] exactly), and amounts to conjugating every level by a fixed
diagonal.  The squared normalizations are kept
in a separate exact table, so square roots never materialize.  The squared
norm uses the symmetric quantum factorial at base q^2,

    norm_sq(j, m) = [j+m]! [j-m]!,   [n] = (q^(2n) - q^(-2n)) / (q^2 - q^(-2)),

which `check_expansion` singles out empirically as the unique convention (up
to an m-independent rescaling) closing the graded binomial identity; the
classical and plain basic-factorial readings do not close it.

Representation matrices act on the unnormalized basis in row-coaction
layout, mirroring the row transformation c' = c * (-eps T eps) of the
components themselves:

    v'(j, m)  = sum_m' v(j, m')  D(m', m)
    v~'(j, m) = sum_m' v~(j, m') D~(m', m)

with rows/columns ordered m = +j .. -j.  D is derived by expanding the
transformed monomials and extracting PBW coefficients (`derive_dmatrix`), or
assembled from a closed product formula with quantum binomials at base q^2
(`formula_dmatrix`); the free parameters of the closed formula are frozen
from the derived matrices at small j and validated at larger j.

The quadratic invariant Q(j) (`invariant_Q`) pairs a tilde vector built from
an upper spinor against a plain vector built from an independent lower
spinor; the tilde component at m contracts the plain component at -m with
the exact weights of `invariant_weight`, the unique family (up to scale)
fixed by the transformation equations.  `c_matrix` provides the geometric
diagonal (arg)^j .. (arg)^(-j) used by the single-spinor graded identity in
`check_expansion`.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .algebra import Block, NCPoly, build_spec
from .scalars import (LaurentScalar, ONE, eps_power, neg_q_power,
                      q_factorial, q_binomial, sym_factorial)
from .spinor import NCMatrix, canonical_T, transpose_inverse

DEFAULT_J_BOUND = Fraction(3)


def _as_twice(j):
    tj = Fraction(j) * 2
    if tj.denominator != 1 or tj < 0:
        raise ValueError(f"j must be a non-negative half-integer, got {j}")
    return int(tj)


def m_values(j):
    """m = +j .. -j as Fractions."""
    tj = _as_twice(j)
    return [Fraction(tm, 2) for tm in range(tj, -tj - 1, -2)]


# -- normalization conventions --------------------------------------------

FACTORIAL_CONVENTIONS = {
    # name -> factorial function on non-negative integers
    "classical": lambda n: LaurentScalar.coerce(_int_factorial(n)),
    "basic": lambda n: q_factorial(n),
    "basic_q2": lambda n: q_factorial(n, LaurentScalar.q_power(2)),
    "symmetric_q2": lambda n: sym_factorial(n, base_s_exp=4),
}

RESOLVED_CONVENTION = "symmetric_q2"


def _int_factorial(n):
    out = 1
    for k in range(2, n + 1):
        out *= k
    return out


def norm_sq(j, m, convention=RESOLVED_CONVENTION):
    fact = FACTORIAL_CONVENTIONS[convention]
    jm = Fraction(j) + Fraction(m)
    jmm = Fraction(j) - Fraction(m)
    if jm.denominator != 1 or jmm.denominator != 1 or jm < 0 or jmm < 0:
        raise ValueError(f"invalid (j, m) = ({j}, {m})")
    return fact(int(jm)) * fact(int(jmm))


def norm_sq_table(j, convention=RESOLVED_CONVENTION):
    return tuple(norm_sq(j, m, convention) for m in m_values(j))


# -- spin vectors ----------------------------------------------------------


@dataclass(frozen=True)
class SpinVector:
    j: Fraction
    components: tuple  # NCPoly, ordered m = +j .. -j
    norm_sq: tuple
    variant: str  # "plain" | "tilde"


def _component_word(j, m, variant, chi):
    c1, c2 = chi
    jm = int(Fraction(j) + Fraction(m))
    jmm = int(Fraction(j) - Fraction(m))
    if variant == "plain":
        phase = eps_power(jm, inverse=True) * neg_q_power(2 * jm)
        return (c2,) * jm + (c1,) * jmm, phase
    if variant == "tilde":
        return (c1,) * jm + (c2,) * jmm, eps_power(jmm)
    raise ValueError(f"unknown variant {variant!r}")


def vector_V(j, m, variant="plain", spec=None, chi=("c1", "c2"),
             convention=RESOLVED_CONVENTION):
    """One unnormalized spin-j component with its exact squared norm."""
    j = Fraction(j)
    m = Fraction(m)
    if abs(m) > j or (j - m).denominator != 1:
        raise ValueError(f"invalid (j, m) = ({j}, {m})")
    spec = spec or default_rep_spec()
    word, phase = _component_word(j, m, variant, chi)
    return spec.word(word, phase), norm_sq(j, m, convention)


def spin_vector(j, variant="plain", spec=None, chi=("c1", "c2"),
                convention=RESOLVED_CONVENTION):
    j = Fraction(j)
    comps = tuple(vector_V(j, m, variant, spec, chi, convention)[0]
                  for m in m_values(j))
    return SpinVector(j, comps, norm_sq_table(j, convention), variant)


# -- specs -----------------------------------------------------------------

_REP_SPEC = None


def default_rep_spec():
    """a..d plus one lower spinor (c1, c2)."""
    global _REP_SPEC
    if _REP_SPEC is None:
        _REP_SPEC = build_spec(
            [
                Block("matrix", ("a", "b", "c", "d")),
                Block("plane", ("c1", "c2"), sort="spinor-component"),
            ],
            name="rep",
        )
    return _REP_SPEC


_INVARIANT_SPEC = None


def invariant_spec():
    """a..d plus two mutually commuting spinors: an upper one (x1, x2) with
    x1 x2 = q x2 x1 feeding the tilde vectors, and a lower one (c1, c2) with
    c2 c1 = q c1 c2 feeding the plain vectors."""
    global _INVARIANT_SPEC
    if _INVARIANT_SPEC is not None:
        return _INVARIANT_SPEC
    _INVARIANT_SPEC = build_spec(
        [
            Block("matrix", ("a", "b", "c", "d")),
            Block("plane", ("x2", "x1"), sort="spinor-component"),
            Block("plane", ("c1", "c2"), sort="spinor-component"),
        ],
        name="invariant",
    )
    return _INVARIANT_SPEC


def doubled_spec():
    """Two commuting quantum matrix copies plus one spinor, for the
    coproduct-homomorphism check."""
    return build_spec(
        [
            Block("matrix", ("a1", "b1", "c1m", "d1")),
            Block("matrix", ("a2", "b2", "c2m", "d2")),
            Block("plane", ("c1", "c2"), sort="spinor-component"),
        ],
        name="doubled",
    )


def doubled_T(spec, which):
    names = {"1": ("a1", "b1", "c1m", "d1"), "2": ("a2", "b2", "c2m", "d2")}[which]
    a, b, c, d = (spec.gen(n) for n in names)
    return NCMatrix([[a, b], [c, d]])


# -- derived representation matrices ---------------------------------------


@dataclass(frozen=True)
class DMatrix:
    j: Fraction
    entries: tuple  # (2j+1)^2 NCPoly grid, rows/cols ordered m = +j .. -j
    norm_sq: tuple
    provenance: str  # "derived" | "formula"
    variant: str  # "plain" | "tilde"

    def as_matrix(self):
        return NCMatrix([list(row) for row in self.entries])

    def to_json(self):
        return {
            "j": str(self.j),
            "basis": "unnormalized",
            "variant": self.variant,
            "provenance": self.provenance,
            "entries": [[e.to_json() for e in row] for row in self.entries],
            "norm_sq": [n.to_json() for n in self.norm_sq],
        }


class ExtractionResidualError(ArithmeticError):
    """Expansion of a transformed spin vector left terms outside the spin-j
    monomial basis: the transformation convention is broken."""


def transformed_components(T, spec, chi=("c1", "c2")):
    """c'_B = c_D M[D][B] with M = -eps T eps, the covariant coaction that
    preserves the quantum-plane relation."""
    M = transpose_inverse(T)
    c1, c2 = (spec.gen(n) for n in chi)
    return tuple(c1 * M[0, j] + c2 * M[1, j] for j in range(2))


def _collect(j, poly, spec, chi, variant):
    """Coefficients of poly against the spin-j monomial basis.

    Returns {m': NCPoly in the non-spinor generators}.  PBW linear
    independence makes the extraction unique; any residual raises.
    """
    c1_i, c2_i = (spec.gen_index(n) for n in chi)
    tj = _as_twice(j)
    out = {}
    for w, coeff in poly.terms.items():
        tpart = tuple(g for g in w if g not in (c1_i, c2_i))
        n1 = sum(1 for g in w if g == c1_i)
        n2 = sum(1 for g in w if g == c2_i)
        if n1 + n2 != tj:
            raise ExtractionResidualError(
                f"word of spinor degree {n1 + n2}, expected {tj}")
        # plain: c1^(j-m') c2^(j+m');  tilde: c1^(j+m') c2^(j-m')
        tm = (n2 - n1) if variant == "plain" else (n1 - n2)
        key = Fraction(tm, 2)
        cur = out.get(key, spec.zero())
        out[key] = cur + NCPoly(spec, {tpart: coeff})
    return out


def derive_dmatrix(j, T=None, spec=None, chi=("c1", "c2"), variant="plain",
                   j_bound=DEFAULT_J_BOUND, convention=RESOLVED_CONVENTION):
    """Representation matrix extracted from the transformed spin vector.

    Both variants use the row-coaction layout D(m', m):

        v'(j, m)  = sum_m' v(j, m')  D(m', m)
        v~'(j, m) = sum_m' v~(j, m') D~(m', m)

    matching the row transformation of the components themselves.  In this
    layout D(T'T'') = D(T') D(T'') holds as a matrix product over two
    commuting copies of the algebra.
    """
    j = Fraction(j)
    if j > j_bound:
        raise ValueError(f"j={j} exceeds the configured bound {j_bound}")
    spec = spec or default_rep_spec()
    if T is None:
        T = canonical_T(spec)
    cp1, cp2 = transformed_components(T, spec, chi)
    mv = m_values(j)
    rows = []
    for m in mv:
        word, phase = _component_word(j, m, variant, ("<1>", "<2>"))
        prod = spec.one()
        for tag in word:
            prod = prod * (cp1 if tag == "<1>" else cp2)
        prod = prod * phase
        groups = _collect(j, prod, spec, chi, variant)
        row = []
        for mp in mv:
            # the grouped coefficients sit against the PBW-sorted monomial;
            # divide by the basis component's full scalar (prefactor plus any
            # reordering power picked up during sorting)
            basis_poly, _ = vector_V(j, mp, variant, spec, chi, convention)
            ((_, basis_coeff),) = basis_poly.terms.items()
            entry = groups.get(mp, spec.zero()) * basis_coeff.inverse_monomial()
            row.append(entry)
        rows.append(tuple(row))
    # extraction grid has rows indexed by the transformed m; transpose into
    # the row-coaction layout D(m', m)
    rows = [tuple(rows[i][k] for i in range(len(mv)))
            for k in range(len(mv))]
    return DMatrix(j, tuple(rows), norm_sq_table(j, convention), "derived",
                   variant)


# -- closed formula --------------------------------------------------------

# Frozen convention for the closed t-sum formula giving the tilde matrix in
# the same layout as `derive_dmatrix(..., variant="tilde")` (rows m', cols m,
# both running +j .. -j).  Fitted exactly against the derived matrices for
# all j <= 3 (209 coefficient data points) and validated independently by
# `compare_dmatrices` in the tests:
#
#     D~(m', m) = sum_t  sign * q^(E/2)
#                 * qbinom(j+m, t | q^2) * qbinom(j-m, j+m'-t | q^2)
#                 * a^(t-m-m') b^(j+m-t) c^(j+m'-t) d^t
#
# with sign = (-1)^(2j - m - m') and s-exponent
#
#     E = -2j^2 + 4jm' - 4jt + 3m^2 + 2mm' - 6mt + 3m + m'^2 - 6m't
#         - 3m' + 6t^2,
#
# t ranging over max(0, m+m') <= t <= min(j+m, j+m').  Relative to the
# t-sum written with a-exponent m+m'+t and b-exponent j-m'-t, this layout is
# the reflected transpose (m, m') -> (-m', -m): the fit resolves the
# printed-sum index convention in favour of the derived coaction matrices.


def frozen_exponent(j, m, mp, t):
    """s-exponent of the t-th term of entry (m', m); always an integer."""
    e = (-2 * j * j + 4 * j * mp - 4 * j * t + 3 * m * m + 2 * m * mp
         - 6 * m * t + 3 * m + mp * mp - 6 * mp * t - 3 * mp + 6 * t * t)
    if Fraction(e).denominator != 1:
        raise ValueError(f"non-integral exponent at {(j, m, mp, t)}")
    return int(e)


def frozen_sign(j, m, mp):
    return -ONE if int(2 * j - m - mp) % 2 else ONE


def frozen_formula_convention():
    """The (exponent, sign) pair frozen from the derived matrices."""
    return frozen_exponent, frozen_sign


def formula_dmatrix(j, convention=None, j_bound=DEFAULT_J_BOUND,
                    spec=None, norm_convention=RESOLVED_CONVENTION):
    """Tilde representation matrix assembled from the closed t-sum formula.

    `convention` supplies (exponent, sign) callables; by default the frozen
    fit above is used.  exponent(j, m, mp, t) returns the s-exponent (twice
    the q-exponent) of the t-th term; sign(j, m, mp) its overall sign.
    """
    j = Fraction(j)
    if j > j_bound:
        raise ValueError(f"j={j} exceeds the configured bound {j_bound}")
    spec = spec or default_rep_spec()
    exp_fn, sign_fn = convention or frozen_formula_convention()
    q2 = LaurentScalar.q_power(2)
    mv = m_values(j)
    grid = []
    for mp in mv:
        row = []
        for m in mv:
            entry = spec.zero()
            for t in range(0, int(2 * j) + 1):
                ea = t - m - mp
                eb = j + m - t
                ec = j + mp - t
                if min(ea, eb, ec) < 0 or ea.denominator != 1:
                    continue
                coeff = (q_binomial(int(j + m), t, q2)
                         * q_binomial(int(j - m), int(ec), q2)
                         * LaurentScalar.s_power(exp_fn(j, m, mp, t))
                         * sign_fn(j, m, mp))
                word = (("a",) * int(ea) + ("b",) * int(eb)
                        + ("c",) * int(ec) + ("d",) * t)
                entry = entry + spec.word(word, coeff)
            row.append(entry)
        grid.append(tuple(row))
    return DMatrix(j, tuple(grid), norm_sq_table(j, norm_convention),
                   "formula", "tilde")


def compare_dmatrices(d1, d2):
    """Entrywise residual grid between two DMatrix values of equal j."""
    if d1.j != d2.j:
        raise ValueError("different j")
    return tuple(
        tuple(d1.entries[i][k] - d2.entries[i][k]
              for k in range(len(d1.entries)))
        for i in range(len(d1.entries))
    )


# -- invariants ------------------------------------------------------------


@dataclass(frozen=True)
class CMatrix:
    j: Fraction
    diagonal: tuple  # (arg)^j .. (arg)^(-j)


def c_matrix(j, minus_q=True):
    """diag(x^j .. x^-j) with x = -q (the invariant weight) or x = q."""
    j = Fraction(j)
    diag = []
    for m in m_values(j):
        tm = _as_twice(abs(m)) * (1 if m >= 0 else -1)
        diag.append(neg_q_power(tm) if minus_q
                    else LaurentScalar.s_power(tm))
    return CMatrix(j, tuple(diag))


def invariant_weight(j, m):
    """Exact weight pairing the tilde component at m with the plain component
    at -m inside the invariant:

        w_m = (-q)^(-k) q^(2k^2 - (4j-2)k) * qbinom(2j, k | q^2),  k = j - m.

    The (-q)^(-k) factor absorbs the diagonal phase carried by the plain
    basis, so the assembled Q(j) is independent of that bookkeeping choice.
    This is the unique weight family (up to overall scale, machine-solved
    from the transformation equations at small j and re-verified for larger
    j) making Q(j) invariant under the unimodular coaction.  Equivalently
    w_m = q^(2m(m-1) - 2j^2 + 2j) <2j>! / (<j+m>! <j-m>!) with basic
    factorials at base q^2, so the quantum binomial carries the inverse
    squared norms in the basic-q^2 convention.
    """
    j = Fraction(j)
    k = j - Fraction(m)
    if k.denominator != 1 or k < 0 or k > 2 * j:
        raise ValueError(f"invalid (j, m) = ({j}, {m})")
    k = int(k)
    s_exp = int(2 * (2 * k * k - (4 * j - 2) * k))
    return (LaurentScalar.s_power(s_exp) * neg_q_power(-2 * k)
            * q_binomial(int(2 * j), k, LaurentScalar.q_power(2)))


def _assemble_Q(j, spec, xi_comps, chi_comps):
    mv = m_values(j)
    out = spec.zero()
    for m in mv:
        # tilde from the upper spinor, plain (at -m) from the lower one
        word_t, phase_t = _component_word(j, m, "tilde", ("<1>", "<2>"))
        word_p, phase_p = _component_word(j, -m, "plain", ("<1>", "<2>"))
        prod = spec.one()
        for tag in word_t:
            prod = prod * (xi_comps[0] if tag == "<1>" else xi_comps[1])
        for tag in word_p:
            prod = prod * (chi_comps[0] if tag == "<1>" else chi_comps[1])
        out = out + prod * (phase_t * phase_p * invariant_weight(j, m))
    return out


def invariant_Q(j, spec=None):
    """Q(j) = sum_m v~_xi(j, m) v_chi(j, -m) w_m over one upper and one
    lower spinor, with the exact weights of `invariant_weight`."""
    j = Fraction(j)
    spec = spec or invariant_spec()
    x1, x2, c1, c2 = (spec.gen(n) for n in ("x1", "x2", "c1", "c2"))
    return _assemble_Q(j, spec, (x1, x2), (c1, c2))


def invariant_Q_transformed(j, spec=None, T=None):
    """Q(j) rebuilt from transformed components: the upper spinor transforms
    contravariantly (xi' = xi T), the lower one covariantly
    (chi' = chi (T^t)^-1); after unimodular reduction the result equals
    Q(j)."""
    j = Fraction(j)
    spec = spec or invariant_spec()
    if T is None:
        T = canonical_T(spec)
    x1, x2 = spec.gen("x1"), spec.gen("x2")
    xi_p = tuple(x1 * T[0, col] + x2 * T[1, col] for col in range(2))
    chi_p = transformed_components(T, spec, ("c1", "c2"))
    return _assemble_Q(j, spec, xi_p, chi_p)


# -- graded binomial identity ----------------------------------------------


@dataclass(frozen=True)
class ExpansionReport:
    j_max: Fraction
    lemma_commuting_products: bool  # c1c2 * c2c1 == c2c1 * c1c2
    per_grade: tuple  # (2j, lhs_is_zero, {convention: closes})
    resolved: tuple  # conventions closing every grade


def check_expansion(j_max=2, conventions=None, spec=None):
    """Expand the invariant-bilinear power through the rewrite engine and test
    which normalization convention closes the graded identity

        (i chi^t eps chi)^(2j) = (2j)! * sum_m v~(jm) v(jm) (-q)^m / norm_sq

    exactly.  For 2j >= 1 the left side collapses to zero in the quantum
    plane, so the identity pins down the norm table: the alternating sum of
    the unnormalized products must telescope to zero.
    """
    conventions = tuple(conventions or FACTORIAL_CONVENTIONS)
    spec = spec or default_rep_spec()
    c1, c2 = spec.gen("c1"), spec.gen("c2")
    # chi_A epshat^{AB} chi_B = q^(1/2) c1 c2 - q^(-1/2) c2 c1
    bilinear = (c1 * c2 * LaurentScalar.s_power(1)
                - c2 * c1 * LaurentScalar.s_power(-1))
    lemma = ((c1 * c2) * (c2 * c1)) == ((c2 * c1) * (c1 * c2))
    grades = []
    closing_all = set(conventions)
    for tj in range(0, _as_twice(j_max) + 1):
        j = Fraction(tj, 2)
        lhs = (bilinear * LaurentScalar.imag_unit()) ** tj
        lhs_zero = lhs.is_zero() if tj >= 1 else None
        closes = {}
        for conv in conventions:
            mv = m_values(j)
            norms = [norm_sq(j, m, conv) for m in mv]
            total = ONE
            for n in norms:
                total = total * n
            rhs = spec.zero()
            for i, m in enumerate(mv):
                vt, _ = vector_V(j, m, "tilde", spec, ("c1", "c2"), conv)
                vp, _ = vector_V(j, m, "plain", spec, ("c1", "c2"), conv)
                # (-q)^m weight relative to the phase-free plain monomial;
                # the (-q)^(-(j+m)) strips the plain basis diagonal phase
                weight = c_matrix(j).diagonal[i] * neg_q_power(
                    -2 * int(j + m))
                rhs = rhs + vt * vp * (total.exact_div(norms[i]) * weight)
            # identity scaled through by total = prod_m norm_sq to stay in
            # the Laurent ring; (2j)! on the right in the same convention
            fact = FACTORIAL_CONVENTIONS[conv](tj)
            ok = (lhs * total - rhs * fact).is_zero() if tj >= 1 \
                else (lhs == spec.one() and rhs == spec.one())
            closes[conv] = ok
            if not ok:
                closing_all.discard(conv)
        grades.append((tj, lhs_zero, closes))
    if not closing_all:
        raise ArithmeticError(
            "no factorial convention closes the graded binomial identity")
    return ExpansionReport(Fraction(j_max), lemma, tuple(grades),
                           tuple(sorted(closing_all)))
