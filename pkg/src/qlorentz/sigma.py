"""The deformed sigma-matrix sector: bar-sigma set, deformed Minkowski
metric, completeness relation, bispinor/vector maps and the 4x4 vector
representation of a quantum matrix.

Conventions table (fixed once, used everywhere):

* sigma = (1, sigma^1, sigma^2, sigma^3) is the undeformed Pauli set; the
  deformation enters only through the contravariant epsilon used to build
  bar_sigma.
* The deformed metric with upper indices is *defined* by the contraction
  eta^{mn} = (1/2) Tr(bar_sigma^m sigma^n).  It is not symmetric for q != 1;
  the off-diagonal corner entries differ by a sign.  A symmetrized variant
  circulates in the literature but is inconsistent with the bar_sigma set
  (see `eta_reference_upper` and the identity suite).
* eta_{mn} is the exact matrix inverse of eta^{mn}.  Because eta is not
  symmetric, index lowering is one-sided: bar_sigma_a = eta_{am} bar_sigma^m
  (first slot) and sigma_b = sigma^m eta_{mb} (second slot).  These are the
  unique choices making the completeness relation and vector_rep(1) = 1 hold.
* Bispinor maps carry the 1/2 on the vector-extraction side:
  x^a = (1/2) Tr(bar_sigma_a X) and X = sum_a x^a sigma^a, which reduces to
  the classical normalization at q = 1 and round-trips exactly for every q.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .algebra import (NCPoly, build_spec, Block, reduce_unimodular,
                      substitute_numeric)
from .scalars import Gauss, LaurentScalar, ONE, ZERO, IMAG
from .spinor import NCMatrix, canonical_T, dagger, eps_upper_entries

BAR_MAP = {"a": "abar", "b": "bbar", "c": "cbar", "d": "dbar"}

_HALF = Gauss(1) / Gauss(2)


def pauli_set():
    """(1, sigma^1, sigma^2, sigma^3) as exact scalar grids."""
    one, i = ONE, IMAG
    return (
        ((one, ZERO), (ZERO, one)),
        ((ZERO, one), (one, ZERO)),
        ((ZERO, -i), (i, ZERO)),
        ((one, ZERO), (ZERO, -one)),
    )


def _scalar_matmul(A, B):
    return tuple(
        tuple(sum((A[i][k] * B[k][j] for k in range(len(B))), ZERO)
              for j in range(len(B[0])))
        for i in range(len(A))
    )


def _scalar_trace(A):
    return sum((A[i][i] for i in range(len(A))), ZERO)


def compute_bar_sigma():
    """Raise both spin indices of the Pauli set with the contravariant
    epsilon: bar^m[X][A] = eps^{XY} eps^{AB} sigma^m[B][Y]."""
    eps = eps_upper_entries()
    out = []
    for sm in pauli_set():
        grid = []
        for X in range(2):
            row = []
            for A in range(2):
                acc = ZERO
                for Y in range(2):
                    for B in range(2):
                        acc = acc + eps[X][Y] * eps[A][B] * sm[B][Y]
                row.append(acc)
            grid.append(tuple(row))
        out.append(tuple(grid))
    return tuple(out)


def expected_bar_sigma():
    """The closed-form bar set: diag(q, 1/q), [[0,-1],[-1,0]],
    [[0,i],[-i,0]], diag(-q, 1/q)."""
    q, qi, i, one = (LaurentScalar.q_power(1), LaurentScalar.q_power(-1),
                     IMAG, ONE)
    return (
        ((q, ZERO), (ZERO, qi)),
        ((ZERO, -one), (-one, ZERO)),
        ((ZERO, i), (-i, ZERO)),
        ((-q, ZERO), (ZERO, qi)),
    )


@dataclass(frozen=True)
class SigmaSet:
    sigma: tuple
    bar_sigma: tuple


def build_bar_sigma():
    """Construct the sigma/bar-sigma pair, asserting the epsilon contraction
    reproduces the closed-form list (a mismatch means the epsilon convention
    is broken and construction must fail hard)."""
    computed = compute_bar_sigma()
    if computed != expected_bar_sigma():
        raise AssertionError("bar_sigma contraction does not match the "
                             "closed-form list; epsilon conventions broken")
    return SigmaSet(pauli_set(), computed)


def _det(grid):
    """Determinant of a square grid of commuting LaurentScalars (Laplace)."""
    n = len(grid)
    if n == 1:
        return grid[0][0]
    out = ZERO
    for j in range(n):
        minor = [row[:j] + row[j + 1:] for row in grid[1:]]
        term = grid[0][j] * _det(minor)
        out = out + (term if j % 2 == 0 else -term)
    return out


def _inverse(grid):
    """Exact inverse via the adjugate; entries must divide exactly."""
    n = len(grid)
    det = _det(list(map(list, grid)))
    inv = []
    for i in range(n):
        row = []
        for j in range(n):
            minor = [r[:i] + r[i + 1:] for k, r in enumerate(grid) if k != j]
            cof = _det(minor)
            if (i + j) % 2:
                cof = -cof
            row.append(cof.exact_div(det))
        inv.append(tuple(row))
    return tuple(inv)


@dataclass(frozen=True)
class MinkowskiMetricQ:
    upper: tuple  # eta^{mn} from the contraction
    lower: tuple  # exact inverse
    matches_reference: bool
    mismatches: tuple  # ((m, n, computed, reference), ...)


def eta_reference_upper():
    """The symmetric closed form quoted for the deformed metric:
    corner block [[(q+1/q)/2, (q-1/q)/2], [(q-1/q)/2, -(q+1/q)/2]],
    middle diag(-1, -1)."""
    q, qi = LaurentScalar.q_power(1), LaurentScalar.q_power(-1)
    plus = (q + qi) * _HALF
    minus = (q - qi) * _HALF
    m1 = -ONE
    Z = ZERO
    return (
        (plus, Z, Z, minus),
        (Z, m1, Z, Z),
        (Z, Z, m1, Z),
        (minus, Z, Z, -plus),
    )


def eta_upper(sigma_set=None):
    """Deformed metric from the trace contraction, with its exact inverse.

    The result is compared entrywise against the symmetric closed form; the
    comparison outcome is carried in the report rather than asserted, because
    the contraction is the definition the rest of the module relies on.
    """
    ss = sigma_set or build_bar_sigma()
    upper = tuple(
        tuple(_scalar_trace(_scalar_matmul(ss.bar_sigma[m], ss.sigma[n]))
              * _HALF for n in range(4))
        for m in range(4)
    )
    ref = eta_reference_upper()
    mismatches = tuple(
        (m, n, upper[m][n], ref[m][n])
        for m in range(4) for n in range(4)
        if upper[m][n] != ref[m][n]
    )
    return MinkowskiMetricQ(upper, _inverse(upper), not mismatches, mismatches)


def lowered_bar_sigma(metric=None, sigma_set=None):
    """bar_sigma_a = eta_{am} bar_sigma^m (first-slot lowering)."""
    ss = sigma_set or build_bar_sigma()
    eta = metric or eta_upper(ss)
    out = []
    for a in range(4):
        grid = [[ZERO, ZERO], [ZERO, ZERO]]
        for m in range(4):
            w = eta.lower[a][m]
            if w.is_zero():
                continue
            for i in range(2):
                for j in range(2):
                    grid[i][j] = grid[i][j] + w * ss.bar_sigma[m][i][j]
        out.append(tuple(tuple(row) for row in grid))
    return tuple(out)


def lowered_sigma(metric=None, sigma_set=None):
    """sigma_b = sigma^m eta_{mb} (second-slot lowering)."""
    ss = sigma_set or build_bar_sigma()
    eta = metric or eta_upper(ss)
    out = []
    for b in range(4):
        grid = [[ZERO, ZERO], [ZERO, ZERO]]
        for m in range(4):
            w = eta.lower[m][b]
            if w.is_zero():
                continue
            for i in range(2):
                for j in range(2):
                    grid[i][j] = grid[i][j] + w * ss.sigma[m][i][j]
        out.append(tuple(tuple(row) for row in grid))
    return tuple(out)


@dataclass(frozen=True)
class CompletenessReport:
    passed: bool
    residual: tuple  # residual[X][Y][A][B]


def completeness_check(sigma_set=None):
    """sigma^n_{AX} (bar_sigma_n)^{YB} = 2 delta^Y_X delta^B_A, with the
    summation index lowered through the inverse metric."""
    ss = sigma_set or build_bar_sigma()
    bar_low = lowered_bar_sigma(sigma_set=ss)
    residual = []
    passed = True
    for X in range(2):
        plane = []
        for Y in range(2):
            grid = []
            for A in range(2):
                row = []
                for B in range(2):
                    acc = ZERO
                    for n in range(4):
                        acc = acc + ss.sigma[n][A][X] * bar_low[n][Y][B]
                    want = (LaurentScalar.coerce(2)
                            if (X == Y and A == B) else ZERO)
                    res = acc - want
                    if not res.is_zero():
                        passed = False
                    row.append(res)
                grid.append(tuple(row))
            plane.append(tuple(grid))
        residual.append(tuple(plane))
    return CompletenessReport(passed, tuple(residual))


# -- bispinor <-> vector ---------------------------------------------------


def vector_to_bispinor(x, spec):
    """X = sum_a x^a sigma^a as an NCMatrix; x entries are NCPoly or scalars."""
    ss = build_bar_sigma()
    comps = [xi if isinstance(xi, NCPoly) else spec.scalar(xi) for xi in x]
    grid = []
    for i in range(2):
        row = []
        for j in range(2):
            acc = spec.zero()
            for a in range(4):
                acc = acc + comps[a] * ss.sigma[a][i][j]
            row.append(acc)
        grid.append(row)
    return NCMatrix(grid)


def bispinor_to_vector(X):
    """x^a = (1/2) sum_{A,Xdot} (bar_sigma_a)^{Xdot A} X_{A Xdot}."""
    bar_low = lowered_bar_sigma()
    out = []
    for a in range(4):
        acc = X.spec.zero()
        for A in range(2):
            for Xd in range(2):
                acc = acc + X[A, Xd] * bar_low[a][Xd][A]
        out.append(acc * LaurentScalar.from_gauss(_HALF))
    return tuple(out)


# -- vector representation -------------------------------------------------


def combined_spec():
    """a..d with the commuting conjugate copy abar..dbar."""
    from .algebra import sl2q_bar_spec

    return sl2q_bar_spec()


@dataclass(frozen=True)
class VectorRep:
    entries: NCMatrix


def vector_rep(T, bar_map=BAR_MAP):
    """T^a_b = (1/2) Tr(bar_sigma^a T sigma_b T^dagger).

    T must live over a spec containing the conjugate copy named by bar_map
    (or have purely scalar entries, in which case the dagger is the ordinary
    conjugate transpose).
    """
    spec = T.spec
    has_bars = all(spec.index.get(v) is not None for v in bar_map.values())
    Td = dagger(T, bar_map if has_bars else None)
    ss = build_bar_sigma()
    sig_low = lowered_sigma(sigma_set=ss)
    grid = []
    for a in range(4):
        row = []
        for b in range(4):
            mid = T * NCMatrix.from_scalars(spec, sig_low[b]) * Td
            acc = spec.zero()
            for i in range(2):
                for j in range(2):
                    acc = acc + mid[j, i] * ss.bar_sigma[a][i][j]
            row.append(acc * LaurentScalar.from_gauss(_HALF))
        grid.append(row)
    return VectorRep(NCMatrix(grid))


def vector_rep_numeric(N, q=1.0):
    """Float evaluation of the vector representation for a numeric 2x2
    matrix; used for the classical Lorentz-property checks at q = 1."""
    N = np.asarray(N, dtype=complex)
    ss = build_bar_sigma()

    def ev(grid):
        return np.array([[complex(grid[i][j].specialize(q))
                          for j in range(2)] for i in range(2)])

    bars = [ev(g) for g in ss.bar_sigma]
    sig_low = [ev(g) for g in lowered_sigma(sigma_set=ss)]
    out = np.zeros((4, 4), dtype=complex)
    for a in range(4):
        for b in range(4):
            out[a, b] = 0.5 * np.trace(bars[a] @ N @ sig_low[b]
                                       @ N.conj().T)
    return out


# -- quantum determinant non-conservation ----------------------------------


def q_det_formula(M):
    """M00 M11 - q M01 M10, the quantum determinant formula applied to an
    arbitrary 2x2 matrix (no consistency check)."""
    return M[0, 0] * M[1, 1] - M[0, 1] * M[1, 0] * LaurentScalar.q_power(1)


@dataclass(frozen=True)
class DetqWitness:
    residual: NCPoly
    nonzero: bool
    classical_limit_vanishes: bool


def detq_nonconservation_witness():
    """Symbolic witness that the quantum determinant of a generic bispinor is
    not preserved under X -> T X T^dagger, although the classical limit is.

    The bispinor entries are independent commuting generators, so the failure
    is entirely due to the noncommutativity of the matrix entries.
    """
    spec = build_spec(
        [
            Block("matrix", ("a", "b", "c", "d")),
            Block("matrix", ("abar", "bbar", "cbar", "dbar"),
                  sort="conjugate-matrix-element", sign=-1),
            Block("commuting", ("x11", "x12", "x21", "x22"),
                  sort="spinor-component"),
        ],
        name="witness",
    )
    X = NCMatrix([[spec.gen("x11"), spec.gen("x12")],
                  [spec.gen("x21"), spec.gen("x22")]])
    T = canonical_T(spec)
    Xp = T * X * dagger(T, BAR_MAP)
    residual = reduce_unimodular(q_det_formula(Xp) - q_det_formula(X))
    # classical check: exact rational point with both determinants equal to 1
    assignment = {
        "a": 2, "b": 1, "c": 1, "d": 1,
        "abar": 2, "bbar": 1, "cbar": 1, "dbar": 1,
        "x11": 3, "x12": Gauss(1, 1), "x21": Gauss(1, -1), "x22": 5,
    }
    classical = substitute_numeric(residual, assignment, 1, exact=True)
    return DetqWitness(residual, not residual.is_zero(), not classical)
