"""Exact coefficient arithmetic: Laurent polynomials in s = q^(1/2) over the
Gaussian rationals.

Every quantity in the engine has coefficients in this ring.  Exponents are
stored on the lattice (1/2)Z as integer powers of s, so q^(k/2) is
representable for any integer k without leaving the ring.  The branch for
(-q)^m at half-integer m is fixed once and for all as (-q)^(1/2) = i*q^(1/2),
which keeps the ring closed (i is needed anyway for the second Pauli matrix).

No floating point enters unless `specialize` is called in float mode.
"""

from __future__ import annotations

import cmath
from fractions import Fraction


class Gauss:
    """Exact Gaussian rational re + im*i with Fraction parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = Fraction(re)
        self.im = Fraction(im)

    @staticmethod
    def coerce(x):
        if isinstance(x, Gauss):
            return x
        if isinstance(x, (int, Fraction)):
            return Gauss(x)
        if isinstance(x, complex):
            # exact only when the parts are exactly representable
            return Gauss(Fraction(x.real), Fraction(x.imag))
        raise TypeError(f"cannot coerce {x!r} to Gauss")

    def __add__(self, other):
        other = Gauss.coerce(other)
        return Gauss(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __neg__(self):
        return Gauss(-self.re, -self.im)

    def __sub__(self, other):
        return self + (-Gauss.coerce(other))

    def __rsub__(self, other):
        return Gauss.coerce(other) + (-self)

    def __mul__(self, other):
        other = Gauss.coerce(other)
        return Gauss(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = Gauss.coerce(other)
        n = other.re * other.re + other.im * other.im
        if n == 0:
            raise ZeroDivisionError("division by zero Gaussian rational")
        return Gauss(
            (self.re * other.re + self.im * other.im) / n,
            (self.im * other.re - self.re * other.im) / n,
        )

    def conjugate(self):
        return Gauss(self.re, -self.im)

    def __eq__(self, other):
        try:
            other = Gauss.coerce(other)
        except TypeError:
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __bool__(self):
        return self.re != 0 or self.im != 0

    def __complex__(self):
        return complex(self.re) + 1j * complex(self.im)

    def __repr__(self):
        return f"Gauss({self.re}, {self.im})"


GAUSS_ZERO = Gauss(0)
GAUSS_ONE = Gauss(1)
GAUSS_I = Gauss(0, 1)

# i^k for k mod 4
_I_CYCLE = (GAUSS_ONE, GAUSS_I, Gauss(-1), Gauss(0, -1))


class LaurentScalar:
    """Sparse Laurent polynomial in s = q^(1/2) with Gauss coefficients.

    `terms` maps the integer s-exponent to a nonzero Gauss coefficient; an
    empty map is zero.  Instances are immutable and hashable; equality is
    structural on the canonical sparse form.
    """

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean = {}
        if terms:
            for e, c in terms.items():
                c = Gauss.coerce(c)
                if c:
                    clean[int(e)] = c
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("LaurentScalar is immutable")

    # -- constructors ------------------------------------------------------

    @staticmethod
    def zero():
        return LaurentScalar()

    @staticmethod
    def one():
        return LaurentScalar({0: GAUSS_ONE})

    @staticmethod
    def from_gauss(c):
        return LaurentScalar({0: Gauss.coerce(c)})

    @staticmethod
    def coerce(x):
        if isinstance(x, LaurentScalar):
            return x
        return LaurentScalar.from_gauss(Gauss.coerce(x))

    @staticmethod
    def s_power(k):
        """s^k = q^(k/2)."""
        return LaurentScalar({int(k): GAUSS_ONE})

    @staticmethod
    def q_power(n):
        """q^n for integer n."""
        return LaurentScalar({2 * int(n): GAUSS_ONE})

    @staticmethod
    def imag_unit():
        return LaurentScalar({0: GAUSS_I})

    # -- ring operations ---------------------------------------------------

    def __add__(self, other):
        try:
            other = LaurentScalar.coerce(other)
        except TypeError:
            return NotImplemented
        terms = dict(self.terms)
        for e, c in other.terms.items():
            terms[e] = terms.get(e, GAUSS_ZERO) + c
        return LaurentScalar(terms)

    __radd__ = __add__

    def __neg__(self):
        return LaurentScalar({e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-LaurentScalar.coerce(other))

    def __rsub__(self, other):
        return LaurentScalar.coerce(other) + (-self)

    def __mul__(self, other):
        try:
            other = LaurentScalar.coerce(other)
        except TypeError:
            return NotImplemented
        terms = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = e1 + e2
                terms[e] = terms.get(e, GAUSS_ZERO) + c1 * c2
        return LaurentScalar(terms)

    __rmul__ = __mul__

    def __pow__(self, n):
        n = int(n)
        if n < 0:
            inv = self.inverse_monomial()
            return inv ** (-n)
        out = LaurentScalar.one()
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def inverse_monomial(self):
        """Inverse, defined only for single-term scalars."""
        if len(self.terms) != 1:
            raise ValueError("only monomial scalars are invertible in the ring")
        ((e, c),) = self.terms.items()
        return LaurentScalar({-e: GAUSS_ONE / c})

    def __eq__(self, other):
        try:
            other = LaurentScalar.coerce(other)
        except TypeError:
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self):
        return not self.terms

    def conjugate(self):
        """Complex conjugation with s (hence real q) fixed."""
        return LaurentScalar({e: c.conjugate() for e, c in self.terms.items()})

    def min_exp(self):
        return min(self.terms) if self.terms else 0

    def max_exp(self):
        return max(self.terms) if self.terms else 0

    # -- division ----------------------------------------------------------

    def divmod_scalar(self, den):
        """Polynomial division by `den`, matching leading terms.

        Returns (quotient, remainder).  Because the ring is a Laurent ring in
        one variable over a field, division by a nonzero scalar always
        terminates with a remainder of lower breadth.
        """
        den = LaurentScalar.coerce(den)
        if den.is_zero():
            raise ZeroDivisionError("division by zero LaurentScalar")
        lead = den.max_exp()
        lead_c = den.terms[lead]
        quo = {}
        rem = self
        while rem.terms and rem.max_exp() - lead >= rem.min_exp() - den.min_exp():
            e = rem.max_exp() - lead
            c = rem.terms[rem.max_exp()] / lead_c
            quo[e] = quo.get(e, GAUSS_ZERO) + c
            rem = rem - LaurentScalar({e: c}) * den
            if rem.is_zero():
                break
        return LaurentScalar(quo), rem

    def exact_div(self, den):
        quo, rem = self.divmod_scalar(den)
        if not rem.is_zero():
            raise ExactDivisionError(f"non-exact division: remainder {rem}")
        return quo

    # -- evaluation --------------------------------------------------------

    def specialize(self, q_value, exact=False):
        """Evaluate at a concrete q.

        Float mode needs real positive q so s = sqrt(q) is unambiguous and
        returns a complex number.  Exact mode requires every s-exponent to be
        even and a rational (or Gaussian-rational) q, and returns a Gauss.
        """
        if exact:
            if any(e % 2 for e in self.terms):
                raise ValueError("exact specialization needs even s-exponents")
            qv = Gauss.coerce(q_value)
            if not qv:
                raise ValueError("q must be nonzero")
            out = GAUSS_ZERO
            for e, c in self.terms.items():
                n = e // 2
                p = GAUSS_ONE
                base = qv if n >= 0 else GAUSS_ONE / qv
                for _ in range(abs(n)):
                    p = p * base
                out = out + c * p
            return out
        qc = complex(q_value)
        if qc == 0:
            raise ValueError("q must be nonzero")
        if abs(qc.imag) > 0 or qc.real <= 0:
            raise ValueError("float specialization needs real positive q")
        sv = cmath.sqrt(qc)
        return sum((complex(c) * sv**e for e, c in self.terms.items()), 0j)

    # -- rendering ---------------------------------------------------------

    def monomials(self):
        """Terms in decreasing s-exponent, as (exponent, Gauss) pairs."""
        return sorted(self.terms.items(), reverse=True)

    def __str__(self):
        from .render import scalar_to_text

        return scalar_to_text(self)

    def __repr__(self):
        return f"LaurentScalar<{self}>"

    def to_json(self):
        """[[s_exp, re_num, re_den, im_num, im_den], ...] in decreasing s_exp."""
        return [
            [
                e,
                c.re.numerator,
                c.re.denominator,
                c.im.numerator,
                c.im.denominator,
            ]
            for e, c in self.monomials()
        ]

    @staticmethod
    def from_json(data):
        terms = {}
        for e, rn, rd, imn, imd in data:
            terms[e] = Gauss(Fraction(rn, rd), Fraction(imn, imd))
        return LaurentScalar(terms)


class ExactDivisionError(ArithmeticError):
    """A division that the theory guarantees exact left a remainder."""


# convenient constants
ZERO = LaurentScalar.zero()
ONE = LaurentScalar.one()
Q = LaurentScalar.q_power(1)
QINV = LaurentScalar.q_power(-1)
SQRT_Q = LaurentScalar.s_power(1)
IMAG = LaurentScalar.imag_unit()


def neg_q_power(two_m):
    """(-q)^m for half-integer m given as 2m, using the branch
    (-q)^(1/2) = i*q^(1/2)."""
    two_m = int(two_m)
    return LaurentScalar({two_m: _I_CYCLE[two_m % 4]})


def basic_integer(n, base=None):
    """The basic integer 1 + base + ... + base^(n-1) (zero for n = 0)."""
    n = int(n)
    if n < 0:
        raise ValueError("basic_integer needs n >= 0")
    base = Q if base is None else LaurentScalar.coerce(base)
    out = ZERO
    p = ONE
    for _ in range(n):
        out = out + p
        p = p * base
    return out


def q_factorial(n, base=None):
    """Product of basic integers <1>..<n> in the given base."""
    n = int(n)
    if n < 0:
        raise ValueError("q_factorial needs n >= 0")
    out = ONE
    for m in range(1, n + 1):
        out = out * basic_integer(m, base)
    return out


def q_binomial(n, k, base=None):
    """Gaussian binomial <n over k> in the given base, by exact division.

    The Pascal-style recurrence is deliberately *not* used here; it serves as
    an independent oracle in the tests.
    """
    n, k = int(n), int(k)
    if not 0 <= k <= n:
        raise ValueError(f"q_binomial needs 0 <= k <= n, got ({n}, {k})")
    num = q_factorial(n, base)
    den = q_factorial(k, base) * q_factorial(n - k, base)
    return num.exact_div(den)


def eps_power(n, inverse=False):
    """q^(n(n-1)/2), or its reciprocal when evaluated at q^-1."""
    n = int(n)
    e = n * (n - 1)  # s-exponent of q^(n(n-1)/2)
    return LaurentScalar.s_power(-e if inverse else e)


def sym_integer(n, base_s_exp=2):
    """Symmetric quantum integer (Q^n - Q^-n)/(Q - Q^-1) for Q = s^base_s_exp.

    With the default base Q = q this is the balanced q-number; the
    representation tower uses base q^2 (base_s_exp=4).
    """
    n = int(n)
    if n < 0:
        raise ValueError("sym_integer needs n >= 0")
    terms = {}
    for m in range(-(n - 1), n, 2):
        terms[m * base_s_exp] = GAUSS_ONE
    return LaurentScalar(terms)


def sym_factorial(n, base_s_exp=2):
    """Product [1][2]..[n] of symmetric quantum integers."""
    out = ONE
    for m in range(1, int(n) + 1):
        out = out * sym_integer(m, base_s_exp)
    return out
