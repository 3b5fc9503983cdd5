"""Noncommutative polynomial rings with PBW normal ordering by term rewriting.

An `AlgebraSpec` fixes a totally ordered generator list together with one
rewrite rule per out-of-order generator pair: the product g_hi * g_lo (with
g_hi later in the order) is replaced by a polynomial in correctly ordered
words.  Words that are non-decreasing in the order form the PBW basis, and
every `NCPoly` is kept in that basis at all times.

The standard quantum matrix block carries the relations

    ab = qba   ac = qca   bd = qdb   cd = qdc   bc = cb

together with the reordering rule da = ad - (q - q^-1)bc, which is the unique
completion making ad - qbc central (the tests re-derive it from that
requirement).  A mirrored block with q -> q^-1 serves as the conjugate copy,
and two-generator "quantum plane" blocks hold spinor components.  Generators
from different blocks commute unless explicit cross rules are supplied.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .scalars import Gauss, LaurentScalar, ONE, ZERO

DEFAULT_STEP_BUDGET = 10**6


class UnknownGeneratorError(KeyError):
    pass


class SpecMismatchError(ValueError):
    pass


class RewriteBudgetError(RuntimeError):
    """The rewrite system exceeded its step budget; the spec is malformed."""


@dataclass(frozen=True)
class Generator:
    name: str
    sort: str  # "matrix-element" | "conjugate-matrix-element" | "spinor-component"
    order_index: int


class AlgebraSpec:
    """Immutable description of a PBW-ordered noncommutative ring.

    rules maps an out-of-order index pair (hi, lo) to the normal-ordered
    replacement of the product g_hi * g_lo, given as a tuple of
    (coefficient, word) pairs.  Pairs without a rule commute.
    """

    def __init__(self, generators, rules, unimodular_families=(), name="",
                 step_budget=DEFAULT_STEP_BUDGET):
        self.generators = tuple(generators)
        self.name = name
        self.index = {g.name: g.order_index for g in self.generators}
        if len(self.index) != len(self.generators):
            raise ValueError("generator names must be unique")
        if sorted(g.order_index for g in self.generators) != list(
            range(len(self.generators))
        ):
            raise ValueError("order indices must be 0..n-1 without gaps")
        self.names = [None] * len(self.generators)
        for g in self.generators:
            self.names[g.order_index] = g.name
        self.rules = {k: tuple(v) for k, v in rules.items()}
        for (hi, lo) in self.rules:
            if hi <= lo:
                raise ValueError("rule keys must be out-of-order pairs (hi, lo)")
        # families (a, b, c, d, sign): ad - q^sign * bc is the unit q-determinant
        self.unimodular_families = tuple(unimodular_families)
        self.step_budget = step_budget

    # -- lookups -----------------------------------------------------------

    def gen_index(self, name):
        try:
            return self.index[name]
        except KeyError:
            raise UnknownGeneratorError(f"unknown generator {name!r} in spec "
                                        f"{self.name or '<anonymous>'}") from None

    def gen(self, name):
        """The generator as an NCPoly."""
        return NCPoly(self, {(self.gen_index(name),): ONE})

    def scalar(self, x):
        x = LaurentScalar.coerce(x)
        return NCPoly(self, {(): x} if x else {})

    def zero(self):
        return NCPoly(self, {})

    def one(self):
        return self.scalar(ONE)

    def word(self, names, coeff=ONE):
        """Normal-ordered polynomial for a formal product of generators."""
        w = tuple(self.gen_index(n) for n in names)
        out = {}
        _accumulate(out, self._normalize_word(w), LaurentScalar.coerce(coeff))
        return NCPoly(self, out)

    # -- rewriting core ----------------------------------------------------

    def _pair_poly(self, hi, lo):
        """Replacement for the product g_hi * g_lo with hi > lo."""
        rule = self.rules.get((hi, lo))
        if rule is None:
            return ((ONE, (lo, hi)),)
        return rule

    def _normalize_word(self, word):
        """Rewrite an arbitrary word into the PBW basis.

        Returns a dict word -> LaurentScalar.  Leftmost-innermost strategy;
        a step budget guards against non-terminating rule sets.
        """
        done = {}
        work = [(word, ONE)]
        steps = 0
        while work:
            w, c = work.pop()
            i = _first_inversion(w)
            if i < 0:
                done[w] = done.get(w, ZERO) + c
                continue
            steps += 1
            if steps > self.step_budget:
                raise RewriteBudgetError(
                    f"rewrite budget {self.step_budget} exceeded; "
                    "rule set is likely non-terminating")
            for rc, rw in self._pair_poly(w[i], w[i + 1]):
                work.append((w[:i] + rw + w[i + 2:], c * rc))
        return {w: c for w, c in done.items() if c}

    def word_names(self, word):
        return tuple(self.names[i] for i in word)

    def __repr__(self):
        return f"AlgebraSpec({self.name or 'anonymous'}, {len(self.generators)} gens)"


def _first_inversion(word):
    for i in range(len(word) - 1):
        if word[i] > word[i + 1]:
            return i
    return -1


def _accumulate(target, words, scale=ONE):
    for w, c in words.items():
        nc = target.get(w, ZERO) + c * scale
        if nc:
            target[w] = nc
        else:
            target.pop(w, None)


class NCPoly:
    """Normal-ordered noncommutative polynomial over an AlgebraSpec.

    terms maps PBW words (tuples of generator order indices, non-decreasing)
    to nonzero LaurentScalar coefficients.  Values are immutable.
    """

    __slots__ = ("spec", "terms")

    def __init__(self, spec, terms):
        object.__setattr__(self, "spec", spec)
        object.__setattr__(self, "terms", dict(terms))

    def __setattr__(self, name, value):
        raise AttributeError("NCPoly is immutable")

    def _check(self, other):
        if other.spec is not self.spec:
            raise SpecMismatchError("operands come from different algebra specs")

    def __add__(self, other):
        if not isinstance(other, NCPoly):
            other = self.spec.scalar(other)
        self._check(other)
        out = dict(self.terms)
        _accumulate(out, other.terms)
        return NCPoly(self.spec, out)

    __radd__ = __add__

    def __neg__(self):
        return NCPoly(self.spec, {w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, NCPoly):
            other = self.spec.scalar(other)
        return self + (-other)

    def __rsub__(self, other):
        return self.spec.scalar(other) + (-self)

    def __mul__(self, other):
        if not isinstance(other, NCPoly):
            s = LaurentScalar.coerce(other)
            return NCPoly(self.spec,
                          {w: c * s for w, c in self.terms.items() if c * s})
        self._check(other)
        out = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                _accumulate(out, self.spec._normalize_word(w1 + w2), c1 * c2)
        return NCPoly(self.spec, out)

    def __rmul__(self, other):
        # scalars commute with everything, so left and right agree
        return self * other

    def __pow__(self, n):
        n = int(n)
        if n < 0:
            raise ValueError("negative powers are not defined")
        out = self.spec.one()
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        if not isinstance(other, NCPoly):
            try:
                other = self.spec.scalar(other)
            except TypeError:
                return NotImplemented
        return self.spec is other.spec and self.terms == other.terms

    def __hash__(self):
        return hash((id(self.spec), frozenset(self.terms.items())))

    def is_zero(self):
        return not self.terms

    def degree(self):
        return max((len(w) for w in self.terms), default=0)

    def coefficient(self, names):
        """Coefficient of the PBW word given by generator names."""
        w = tuple(self.spec.gen_index(n) for n in names)
        return self.terms.get(w, ZERO)

    def scalar_part(self):
        return self.terms.get((), ZERO)

    def map_coefficients(self, f):
        return NCPoly(self.spec, {w: fc for w, c in self.terms.items()
                                  if (fc := f(c))})

    def sorted_terms(self):
        """Graded-lexicographic term order, for canonical rendering."""
        return sorted(self.terms.items(), key=lambda wc: (len(wc[0]), wc[0]))

    def __str__(self):
        from .render import poly_to_text

        return poly_to_text(self)

    def __repr__(self):
        return f"NCPoly<{self}>"

    def to_json(self):
        return [
            {"word": list(self.spec.word_names(w)), "coeff": c.to_json()}
            for w, c in self.sorted_terms()
        ]

    @staticmethod
    def from_json(spec, data):
        out = spec.zero()
        for item in data:
            out = out + spec.word(item["word"],
                                  LaurentScalar.from_json(item["coeff"]))
        return out


# -- module-level operations ----------------------------------------------


def normal_order(expr, spec=None):
    """Normal order a formal expression.

    Accepts an NCPoly (idempotent) or an iterable of (coeff, names) pairs.
    """
    if isinstance(expr, NCPoly):
        return expr
    if spec is None:
        raise ValueError("spec is required for formal expressions")
    out = spec.zero()
    for coeff, names in expr:
        out = out + spec.word(names, coeff)
    return out


def multiply(p1, p2, spec=None):
    if spec is not None and (p1.spec is not spec or p2.spec is not spec):
        raise SpecMismatchError("operands do not belong to the given spec")
    return p1 * p2


def commutator(p1, p2, spec=None):
    if spec is not None and (p1.spec is not spec or p2.spec is not spec):
        raise SpecMismatchError("operands do not belong to the given spec")
    return p1 * p2 - p2 * p1


def reduce_unimodular(p):
    """Reduce modulo the unit-q-determinant ideal of every declared family.

    For a family (a, b, c, d, sign) the relation ad = 1 + q^sign * bc is used
    to eliminate every PBW word containing both a and d.  The result is equal
    to p modulo the two-sided ideal generated by (Delta - 1) and the map is
    idempotent.
    """
    spec = p.spec
    pending = dict(p.terms)
    done = {}
    while pending:
        w, c = pending.popitem()
        hit = None
        for (ai, bi, ci, di, sign) in spec.unimodular_families:
            if ai in w and di in w:
                hit = (ai, bi, ci, di, sign)
                break
        if hit is None:
            nc = done.get(w, ZERO) + c
            if nc:
                done[w] = nc
            else:
                done.pop(w, None)
            continue
        ai, bi, ci, di, sign = hit
        i = max(k for k, g in enumerate(w) if g == ai)
        j = min(k for k, g in enumerate(w) if g == di)
        between = j - i - 1  # only the family's b and c can sit here
        stripped = w[:i] + w[i + 1:j] + w[j + 1:]
        qpow = LaurentScalar.q_power(sign * between)
        _accumulate(pending, {stripped: ONE}, c * qpow)
        inserted = w[:i] + w[i + 1:j] + (bi, ci) + w[j + 1:]
        _accumulate(pending, spec._normalize_word(inserted),
                    c * qpow * LaurentScalar.q_power(sign))
    return NCPoly(spec, done)


def substitute_numeric(p, assignment, q_value, exact=False):
    """Evaluate p with numeric generator values (the q=1 classical oracle).

    assignment maps generator names to numbers; all generators occurring in p
    must be covered.  In exact mode values are coerced to Gaussian rationals
    and the result is a Gauss; otherwise a complex float.
    """
    spec = p.spec
    values = {}
    for name, v in assignment.items():
        values[spec.gen_index(name)] = Gauss.coerce(v) if exact else complex(v)
    total = Gauss(0) if exact else 0j
    for w, c in p.terms.items():
        factor = c.specialize(q_value, exact=exact)
        for g in w:
            if g not in values:
                raise KeyError(
                    f"no assignment for generator {spec.names[g]!r}")
            factor = factor * values[g]
        total = total + factor
    return total


def rename_generators(p, mapping, new_spec):
    """Transport p along a generator renaming into another spec.

    Words are remapped name-wise and re-normal-ordered in the target spec, so
    the map is only a ring homomorphism when the relations agree.
    """
    out = new_spec.zero()
    for w, c in p.terms.items():
        names = [mapping.get(n, n) for n in p.spec.word_names(w)]
        out = out + new_spec.word(names, c)
    return out


def local_confluence_residuals(spec):
    """Diamond check: every overlap word g_k g_j g_i must normalize the same
    way regardless of which adjacent rule fires first.

    Returns a list of (k, j, i, residual NCPoly); all residuals must be zero
    for a confluent rule set.
    """
    n = len(spec.generators)
    residuals = []
    for k in range(n):
        for j in range(k):
            for i in range(j):
                left = {}
                for rc, rw in spec._pair_poly(k, j):
                    _accumulate(left, spec._normalize_word(rw + (i,)), rc)
                right = {}
                for rc, rw in spec._pair_poly(j, i):
                    _accumulate(right, spec._normalize_word((k,) + rw), rc)
                res = NCPoly(spec, left) - NCPoly(spec, right)
                residuals.append((k, j, i, res))
    return residuals


# -- spec builders ---------------------------------------------------------

Q_MINUS_QINV = LaurentScalar.q_power(1) - LaurentScalar.q_power(-1)


@dataclass
class Block:
    """One family of generators added to a spec under construction."""

    kind: str  # "matrix" | "plane" | "commuting"
    names: tuple
    sort: str = "matrix-element"
    sign: int = 1  # matrix: q -> q^sign;  plane: second*first -> q^sign first*second


def build_spec(blocks, cross_rules=None, name="", step_budget=DEFAULT_STEP_BUDGET):
    """Assemble an AlgebraSpec from generator blocks.

    Generators from different blocks commute unless `cross_rules` supplies a
    replacement for a specific out-of-order pair, given as
    {(hi_name, lo_name): [(coeff, (name, ...)), ...]}.
    """
    gens = []
    rules = {}
    families = []
    idx = {}

    def add(name_, sort):
        g = Generator(name_, sort, len(gens))
        gens.append(g)
        idx[name_] = g.order_index
        return g.order_index

    for blk in blocks:
        if blk.kind == "matrix":
            a, b, c, d = (add(n, blk.sort) for n in blk.names)
            qp = LaurentScalar.q_power(blk.sign)
            qm = LaurentScalar.q_power(-blk.sign)
            # xy = q^sign yx  =>  y*x -> q^-sign x*y  for the q-commuting pairs
            for hi, lo in ((b, a), (c, a), (d, b), (d, c)):
                rules[(hi, lo)] = ((qm, (lo, hi)),)
            # bc = cb is the commuting default; da needs the derived completion
            lam = qp - qm  # (q - q^-1) under q -> q^sign
            rules[(d, a)] = ((ONE, (a, d)), (-lam, (b, c)))
            families.append((a, b, c, d, blk.sign))
        elif blk.kind == "plane":
            lo, hi = (add(n, blk.sort) for n in blk.names)
            rules[(hi, lo)] = ((LaurentScalar.q_power(blk.sign), (lo, hi)),)
        elif blk.kind == "commuting":
            for n in blk.names:
                add(n, blk.sort)
        else:
            raise ValueError(f"unknown block kind {blk.kind!r}")

    spec = AlgebraSpec(gens, rules, families, name=name, step_budget=step_budget)
    if cross_rules:
        merged = dict(spec.rules)
        for (hi_name, lo_name), rhs in cross_rules.items():
            hi, lo = idx[hi_name], idx[lo_name]
            if hi < lo:
                raise ValueError(
                    f"cross rule {hi_name}*{lo_name} is not out of order")
            merged[(hi, lo)] = tuple(
                (LaurentScalar.coerce(c), tuple(idx[n] for n in wnames))
                for c, wnames in rhs
            )
        spec = AlgebraSpec(gens, merged, families, name=name,
                           step_budget=step_budget)
    return spec


def sl2q_spec():
    """The quantum matrix algebra on a, b, c, d."""
    return build_spec([Block("matrix", ("a", "b", "c", "d"))], name="sl2q")


def sl2q_bar_spec():
    """Two commuting copies: a..d and the conjugate copy abar..dbar.

    The conjugate relations come from applying an order-reversing antilinear
    star to the defining relations with real q, which is the same algebra at
    q -> q^-1.  Barred and unbarred generators commute by default; pass
    cross_rules to build_spec directly for other conventions.
    """
    return build_spec(
        [
            Block("matrix", ("a", "b", "c", "d")),
            Block("matrix", ("abar", "bbar", "cbar", "dbar"),
                  sort="conjugate-matrix-element", sign=-1),
        ],
        name="sl2q_bar",
    )


def quantum_plane_spec(names=("c1", "c2")):
    """A single lower-index spinor: c2*c1 = q c1*c2."""
    return build_spec([Block("plane", names, sort="spinor-component")],
                      name="plane")


def spinor_spec():
    """a..d plus an upper-index spinor (x1, x2) and a lower one (c1, c2).

    Upper components satisfy x1*x2 = q x2*x1 and are ordered x2 < x1 so the
    PBW basis matches; lower components satisfy c2*c1 = q c1*c2.  Spinor
    components commute with the matrix elements and with the other spinor.
    """
    return build_spec(
        [
            Block("matrix", ("a", "b", "c", "d")),
            Block("plane", ("x2", "x1"), sort="spinor-component"),
            Block("plane", ("c1", "c2"), sort="spinor-component"),
        ],
        name="spinor",
    )


NAMED_SPECS = {
    "sl2q": sl2q_spec,
    "sl2q_bar": sl2q_bar_spec,
    "plane": quantum_plane_spec,
    "spinor": spinor_spec,
}


def delta_q(spec):
    """The q-determinant ad - qbc of the unbarred family."""
    return spec.word(("a", "d")) - spec.word(("b", "c"),
                                             LaurentScalar.q_power(1))
