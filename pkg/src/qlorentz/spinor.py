"""Deformed Levi-Civita metric spinors, index raising/lowering, matrix
machinery and the quantum determinant.

Index conventions used throughout (documented once, here):

* T^A_B is the matrix entry at (row A, col B) of [[a, b], [c, d]];
  T_A^B denotes the transpose's entry.
* eps_lower has entries eps_12 = q^(-1/2), eps_21 = -q^(1/2);
  eps_upper has eps^12 = q^(1/2), eps^21 = -q^(-1/2);
  both have zero diagonal, and eps_upper(q) = eps_lower(1/q).
* Lowering is xi_B = xi^A eps_AB; the tilde variant is xi~_A = eps_AB xi^B.
* Raising is xi^B = eps^BA xi_A (inverse of lowering by the
  delta identity eps^AC eps_BC = delta^A_B).
"""

from __future__ import annotations

from dataclasses import dataclass

from .algebra import NCPoly, SpecMismatchError, rename_generators, reduce_unimodular
from .scalars import LaurentScalar, ONE, ZERO


def eps_lower_entries():
    """Covariant deformed Levi-Civita tensor as a 2x2 scalar grid."""
    return (
        (ZERO, LaurentScalar.s_power(-1)),
        (-LaurentScalar.s_power(1), ZERO),
    )


def eps_upper_entries():
    """Contravariant partner; equals the covariant tensor at q -> 1/q."""
    return (
        (ZERO, LaurentScalar.s_power(1)),
        (-LaurentScalar.s_power(-1), ZERO),
    )


@dataclass(frozen=True)
class EpsilonTensor:
    variant: str  # "covariant" | "contravariant"
    entries: tuple

    @staticmethod
    def covariant():
        return EpsilonTensor("covariant", eps_lower_entries())

    @staticmethod
    def contravariant():
        return EpsilonTensor("contravariant", eps_upper_entries())

    def to_json(self):
        return {
            "variant": self.variant,
            "entries": [[c.to_json() for c in row] for row in self.entries],
        }


class NCMatrix:
    """Rectangular matrix of NCPoly entries over a shared spec."""

    __slots__ = ("rows", "cols", "entries", "spec")

    def __init__(self, entries):
        rows = len(entries)
        cols = len(entries[0]) if rows else 0
        spec = entries[0][0].spec
        ent = []
        for row in entries:
            if len(row) != cols:
                raise ValueError("ragged matrix")
            for e in row:
                if e.spec is not spec:
                    raise SpecMismatchError("matrix entries mix algebra specs")
            ent.append(tuple(row))
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "entries", tuple(ent))
        object.__setattr__(self, "spec", spec)

    def __setattr__(self, name, value):
        raise AttributeError("NCMatrix is immutable")

    @staticmethod
    def identity(spec, n):
        return NCMatrix([[spec.one() if i == j else spec.zero()
                          for j in range(n)] for i in range(n)])

    @staticmethod
    def from_scalars(spec, grid):
        return NCMatrix([[spec.scalar(x) for x in row] for row in grid])

    def __getitem__(self, rc):
        r, c = rc
        return self.entries[r][c]

    def __add__(self, other):
        self._shape_check(other)
        return NCMatrix([[self[i, j] + other[i, j] for j in range(self.cols)]
                         for i in range(self.rows)])

    def __sub__(self, other):
        self._shape_check(other)
        return NCMatrix([[self[i, j] - other[i, j] for j in range(self.cols)]
                         for i in range(self.rows)])

    def __neg__(self):
        return self.map_entries(lambda p: -p)

    def __mul__(self, other):
        if isinstance(other, NCMatrix):
            if self.cols != other.rows:
                raise ValueError("shape mismatch in matrix product")
            out = []
            for i in range(self.rows):
                row = []
                for j in range(other.cols):
                    acc = self.spec.zero()
                    for k in range(self.cols):
                        acc = acc + self[i, k] * other[k, j]
                    row.append(acc)
                out.append(row)
            return NCMatrix(out)
        return self.map_entries(lambda p: p * other)

    def __rmul__(self, other):
        return self.map_entries(lambda p: p * other)

    def _shape_check(self, other):
        if self.rows != other.rows or self.cols != other.cols:
            raise ValueError("shape mismatch")

    def transpose(self):
        return NCMatrix([[self.entries[j][i] for j in range(self.rows)]
                         for i in range(self.cols)])

    def map_entries(self, f):
        return NCMatrix([[f(e) for e in row] for row in self.entries])

    def __eq__(self, other):
        if not isinstance(other, NCMatrix):
            return NotImplemented
        return (self.rows, self.cols) == (other.rows, other.cols) and all(
            self[i, j] == other[i, j]
            for i in range(self.rows) for j in range(self.cols)
        )

    def __hash__(self):
        return hash((self.rows, self.cols, self.entries))

    def is_zero(self):
        return all(e.is_zero() for row in self.entries for e in row)

    def reduce_unimodular(self):
        return self.map_entries(reduce_unimodular)

    def __repr__(self):
        rows = "; ".join(
            ", ".join(str(e) for e in row) for row in self.entries)
        return f"NCMatrix[{rows}]"

    def to_json(self):
        return {
            "rows": self.rows,
            "cols": self.cols,
            "entries": [[e.to_json() for e in row] for row in self.entries],
        }


def scalar_sandwich(left_grid, T, right_grid):
    """Matrix product L * T * R with scalar 2x2 grids on either side."""
    spec = T.spec
    L = NCMatrix.from_scalars(spec, left_grid)
    R = NCMatrix.from_scalars(spec, right_grid)
    return L * T * R


def canonical_T(spec):
    """[[a, b], [c, d]] over any spec containing those generator names."""
    return NCMatrix([[spec.gen("a"), spec.gen("b")],
                     [spec.gen("c"), spec.gen("d")]])


def canonical_T_bar(spec):
    return NCMatrix([[spec.gen("abar"), spec.gen("bbar")],
                     [spec.gen("cbar"), spec.gen("dbar")]])


def dagger(T, bar_map=None):
    """Hermitian adjoint: entrywise transport into the conjugate copy, then
    transpose.  For scalar-entry matrices this is the usual conjugate
    transpose."""
    if bar_map:
        barred = T.map_entries(
            lambda p: rename_generators(p, bar_map, T.spec))
    else:
        barred = T.map_entries(
            lambda p: p.map_coefficients(lambda c: c.conjugate()))
    return barred.transpose()


class QDetMismatchError(ArithmeticError):
    """The two quantum-determinant extractions disagree: the matrix entries do
    not satisfy the quantum matrix relations."""


def q_det(M, check=True):
    """Quantum determinant of a 2x2 matrix, extracted from the metric
    relation  M^t eps M = eps * Delta.

    When `check` is set, the transposed relation M eps M^t = eps * Delta is
    also evaluated and any disagreement (including nonzero diagonal residue)
    raises QDetMismatchError instead of being silently ignored.
    """
    if M.rows != 2 or M.cols != 2:
        raise ValueError("q_det is defined for 2x2 matrices")
    eps = eps_lower_entries()
    A = M.transpose() * NCMatrix.from_scalars(M.spec, eps) * M
    delta = A[0, 1] * eps[0][1].inverse_monomial()
    if check:
        B = M * NCMatrix.from_scalars(M.spec, eps) * M.transpose()
        delta_b = B[0, 1] * eps[0][1].inverse_monomial()
        ok = (
            A[0, 0].is_zero() and A[1, 1].is_zero()
            and B[0, 0].is_zero() and B[1, 1].is_zero()
            and (A[1, 0] - delta * eps[1][0]).is_zero()
            and (B[1, 0] - delta * eps[1][0]).is_zero()
            and (delta - delta_b).is_zero()
        )
        if not ok:
            raise QDetMismatchError(
                "the two quantum-determinant extractions disagree; "
                "matrix entries do not satisfy the algebra relations")
    return delta


def antipode(T):
    """Quantum-group inverse of the 2x2 quantum matrix: S(T) such that
    T S(T) = S(T) T = 1 modulo the unit-determinant ideal."""
    if T.rows != 2 or T.cols != 2:
        raise ValueError("antipode is defined for 2x2 matrices")
    a, b, c, d = T[0, 0], T[0, 1], T[1, 0], T[1, 1]
    qinv = LaurentScalar.q_power(-1)
    q = LaurentScalar.q_power(1)
    return NCMatrix([[d, -(b * qinv)], [-(c * q), a]])


def transpose_inverse(T):
    """(T^t)^-1 = -eps T eps, valid for unit quantum determinant."""
    return -scalar_sandwich(eps_lower_entries(), T, eps_lower_entries())


@dataclass(frozen=True)
class SpinorExpr:
    """A two-component spinor with NCPoly components."""

    components: tuple
    variance: str  # "upper" | "lower"
    dotted: bool = False

    def __post_init__(self):
        if len(self.components) != 2:
            raise ValueError("a spinor has exactly two components")
        if self.variance not in ("upper", "lower"):
            raise ValueError("variance must be 'upper' or 'lower'")

    @property
    def spec(self):
        return self.components[0].spec

    @staticmethod
    def from_names(spec, names, variance, dotted=False):
        return SpinorExpr(tuple(spec.gen(n) for n in names), variance, dotted)


def lower_index(xi, tilde=False):
    """xi_B = xi^A eps_AB, or the tilde variant xi~_A = eps_AB xi^B."""
    if xi.variance != "upper":
        raise ValueError("lower_index needs an upper-index spinor")
    eps = eps_lower_entries()
    u1, u2 = xi.components
    if tilde:
        comps = (u2 * eps[0][1], u1 * eps[1][0])
    else:
        comps = (u2 * eps[1][0], u1 * eps[0][1])
    return SpinorExpr(comps, "lower", xi.dotted)


def raise_index(xi, tilde=False):
    """xi^B = eps^BA xi_A, or the tilde inverse xi^C = xi~_A eps^AC."""
    if xi.variance != "lower":
        raise ValueError("raise_index needs a lower-index spinor")
    eps = eps_upper_entries()
    l1, l2 = xi.components
    if tilde:
        comps = (l2 * eps[1][0], l1 * eps[0][1])
    else:
        comps = (l2 * eps[0][1], l1 * eps[1][0])
    return SpinorExpr(comps, "upper", xi.dotted)


def invariant_form(xi, chi):
    """The invariant bilinear xi^A eps_AB chi^B
    = q^(-1/2) xi1 chi2 - q^(1/2) xi2 chi1."""
    if xi.variance != "upper" or chi.variance != "upper":
        raise ValueError("invariant_form takes two upper-index spinors")
    eps = eps_lower_entries()
    x1, x2 = xi.components
    c1, c2 = chi.components
    return x1 * c2 * eps[0][1] + x2 * c1 * eps[1][0]


def transform(x, T, mode=None):
    """Transform a spinor by a quantum matrix.

    Modes:
      contravariant : right action  xi'^C = xi^A T_A^C   (upper spinors)
      covariant     : xi'_B = xi_D ((T^t)^-1)^D_B  with (T^t)^-1 = -eps T eps
      conjugate     : same right action with the barred matrix (dotted index)
      left          : alternative convention xi'^C = T^C_A xi^A
    """
    if mode is None:
        mode = "covariant" if x.variance == "lower" else "contravariant"
    comps = x.components
    if mode in ("contravariant", "conjugate"):
        if x.variance != "upper":
            raise ValueError(f"mode {mode!r} needs an upper-index spinor")
        Tt = T.transpose()
        new = tuple(
            comps[0] * Tt[0, j] + comps[1] * Tt[1, j] for j in range(2))
        return SpinorExpr(new, "upper", dotted=(mode == "conjugate") or x.dotted)
    if mode == "left":
        if x.variance != "upper":
            raise ValueError("mode 'left' needs an upper-index spinor")
        new = tuple(T[j, 0] * comps[0] + T[j, 1] * comps[1] for j in range(2))
        return SpinorExpr(new, "upper", x.dotted)
    if mode == "covariant":
        if x.variance != "lower":
            raise ValueError("mode 'covariant' needs a lower-index spinor")
        M = transpose_inverse(T)
        new = tuple(
            comps[0] * M[0, j] + comps[1] * M[1, j] for j in range(2))
        return SpinorExpr(new, "lower", x.dotted)
    raise ValueError(f"unknown transform mode {mode!r}")
