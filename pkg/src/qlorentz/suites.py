"""Named identity suites behind the ``verify`` subcommand.

Each suite re-checks the defining identities of one sector and returns a
:class:`SuiteReport` listing every check with a pass/fail flag and a short
residual rendering.  The suites accept an injectable :class:`SuiteEnv`
carrying the generator algebra and the epsilon grids, so deliberately
mutated inputs (a flipped rewrite-rule sign, a flipped epsilon entry) can
be driven through the same code paths; the mutation checks in the test
suite assert that such changes flip at least one check that passes on the
canonical build.

Two checks in the ``sigma`` suite compare the trace-contraction metric
against the symmetric closed form that circulates for it.  The contraction
is asymmetric in one corner entry, so those comparisons fail on the
canonical build and are tagged ``printed-form``; everything derived from
the contraction itself passes.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .algebra import (AlgebraSpec, NAMED_SPECS, commutator, delta_q,
                      reduce_unimodular, sl2q_spec, spinor_spec)
from .render import poly_to_text, scalar_to_text
from .scalars import LaurentScalar, ONE, ZERO
from .sigma import (completeness_check, detq_nonconservation_witness,
                    eta_reference_upper, eta_upper, expected_bar_sigma,
                    pauli_set, vector_rep, vector_rep_numeric, SigmaSet)
from .spinor import (NCMatrix, antipode, canonical_T, eps_lower_entries,
                     eps_upper_entries)
from . import representations as rep

SUITE_NAMES = ("epsilon", "sldet", "spinor", "sigma", "vectorrep", "repr")


@dataclass(frozen=True)
class SuiteEnv:
    """Inputs shared by the suites; replace fields to probe mutations."""

    sl2q: AlgebraSpec
    spinor: AlgebraSpec
    eps_lower: tuple
    eps_upper: tuple

    @staticmethod
    def canonical():
        return SuiteEnv(sl2q_spec(), spinor_spec(),
                        eps_lower_entries(), eps_upper_entries())


def mutated_da_spec():
    """The generator algebra with the sign of the bc-term in the da
    reordering rule flipped; used to prove the suites are not vacuous."""
    base = sl2q_spec()
    d, a = base.gen_index("d"), base.gen_index("a")
    (c1, w1), (c2, w2) = base.rules[(d, a)]
    rules = dict(base.rules)
    rules[(d, a)] = ((c1, w1), (-c2, w2))
    return AlgebraSpec(base.generators, rules, base.unimodular_families,
                       name="sl2q-da-flipped", step_budget=base.step_budget)


def mutated_eps_lower(row, col):
    """The covariant epsilon grid with one entry's sign flipped."""
    grid = [list(r) for r in eps_lower_entries()]
    if grid[row][col].is_zero():
        raise ValueError("flipping a zero entry is not a mutation")
    grid[row][col] = -grid[row][col]
    return tuple(tuple(r) for r in grid)


@dataclass(frozen=True)
class CheckResult:
    check_id: str
    tag: str          # "verified" | "derived" | "asserted" | "printed-form"
    passed: bool
    residual: str

    def to_json(self):
        return {"id": self.check_id, "tag": self.tag,
                "passed": self.passed, "residual": self.residual}


@dataclass(frozen=True)
class SuiteReport:
    suite: str
    checks: tuple

    @property
    def exit_status(self):
        return 0 if all(c.passed for c in self.checks) else 1

    @property
    def failed_ids(self):
        return tuple(c.check_id for c in self.checks if not c.passed)

    def to_json(self):
        return {"suite": self.suite, "exit_status": self.exit_status,
                "checks": [c.to_json() for c in self.checks]}

    def to_text(self):
        lines = [f"suite {self.suite}"]
        for c in self.checks:
            mark = "pass" if c.passed else "FAIL"
            line = f"  [{mark}] {c.check_id} ({c.tag})"
            if not c.passed:
                line += f": residual {c.residual}"
            lines.append(line)
        lines.append(f"suite {self.suite}: "
                     f"{'ok' if self.exit_status == 0 else 'FAILED'}")
        return "\n".join(lines)


def _check(check_id, tag, residuals):
    """Build a CheckResult from an iterable of named residual objects.

    Residuals may be NCPoly, LaurentScalar, plain bool (True = pass), or
    NCMatrix; anything whose is_zero() is True counts as passing.
    """
    failing = []
    for name, r in residuals:
        if isinstance(r, bool):
            ok = r
            text = "predicate false"
        elif isinstance(r, NCMatrix):
            ok = r.is_zero()
            text = "; ".join(
                poly_to_text(r[i, j])
                for i in range(r.rows) for j in range(r.cols)
                if not r[i, j].is_zero())
        elif isinstance(r, LaurentScalar):
            ok = r.is_zero()
            text = scalar_to_text(r)
        else:
            ok = r.is_zero()
            text = poly_to_text(r)
        if not ok:
            failing.append(f"{name}: {text}" if name else text)
    return CheckResult(check_id, tag, not failing,
                       " | ".join(failing) if failing else "0")


# ---------------------------------------------------------------------------
# scalar-grid helpers (2x2 grids of LaurentScalar)


def _grid_mul(A, B):
    return tuple(
        tuple(sum((A[i][k] * B[k][j] for k in range(2)), ZERO)
              for j in range(2))
        for i in range(2))


def _grid_residuals(prefix, A, B):
    return [(f"{prefix}[{i}][{j}]", A[i][j] - B[i][j])
            for i in range(2) for j in range(2)]


_SCALAR_ID = ((ONE, ZERO), (ZERO, ONE))


# ---------------------------------------------------------------------------
# suites


def epsilon_suite(env=None):
    env = env or SuiteEnv.canonical()
    el, eu = env.eps_lower, env.eps_upper
    checks = []

    sq = _grid_mul(el, el)
    minus_id = ((-ONE, ZERO), (ZERO, -ONE))
    checks.append(_check("eps-square-is-minus-one", "verified",
                         _grid_residuals("sq", sq, minus_id)))

    et = tuple(tuple(el[j][i] for j in range(2)) for i in range(2))
    prod = _grid_mul(el, et)
    diag = ((LaurentScalar.q_power(-1), ZERO), (ZERO, LaurentScalar.q_power(1)))
    checks.append(_check("eps-times-transpose-diagonal", "verified",
                         _grid_residuals("prod", prod, diag)))

    delta = tuple(
        tuple(sum((eu[A][C] * el[B][C] for C in range(2)), ZERO)
              for B in range(2))
        for A in range(2))
    checks.append(_check("raise-lower-delta", "verified",
                         _grid_residuals("delta", delta, _SCALAR_ID)))

    neg_t = tuple(tuple(-el[j][i] for j in range(2)) for i in range(2))
    checks.append(_check("contravariant-is-minus-transpose", "verified",
                         _grid_residuals("hat", eu, neg_t)))

    return SuiteReport("epsilon", tuple(checks))


def sldet_suite(env=None):
    env = env or SuiteEnv.canonical()
    spec = env.sl2q
    T = canonical_T(spec)
    E = NCMatrix.from_scalars(spec, env.eps_lower)
    delta = delta_q(spec)
    checks = []

    left = T.transpose() * E * T
    right = T * E * T.transpose()
    want = E.map_entries(lambda p: p * delta)
    checks.append(_check(
        "metric-relation", "verified",
        [("TtET", left - want), ("TETt", right - want)]))

    checks.append(_check(
        "determinant-central", "derived",
        [(g, commutator(delta, spec.gen(g))) for g in ("a", "b", "c", "d")]))

    S = antipode(T)
    I = NCMatrix.identity(spec, 2)
    checks.append(_check(
        "antipode-inverse", "verified",
        [("TS", (T * S - I).reduce_unimodular()),
         ("ST", (S * T - I).reduce_unimodular())]))

    M = -(NCMatrix.from_scalars(spec, env.eps_lower) * T
          * NCMatrix.from_scalars(spec, env.eps_lower))
    checks.append(_check(
        "transpose-inverse", "verified",
        [("TtM", (T.transpose() * M - I).reduce_unimodular())]))

    return SuiteReport("sldet", tuple(checks))


def _eps_form(el, xi, chi):
    """xi^A eps_AB chi^B for component tuples over a shared spec."""
    acc = xi[0].spec.zero()
    for A in range(2):
        for B in range(2):
            if el[A][B].is_zero():
                continue
            acc = acc + xi[A] * chi[B] * el[A][B]
    return acc


def spinor_suite(env=None):
    env = env or SuiteEnv.canonical()
    spec = env.spinor
    el, eu = env.eps_lower, env.eps_upper
    T = canonical_T(spec)
    checks = []

    xi = (spec.gen("x1"), spec.gen("x2"))
    chi = (spec.gen("c1"), spec.gen("c2"))

    # invariant bilinear preserved under the right coaction of T on both
    # upper-index factors (exact after unimodular reduction)
    xi_p = tuple(xi[0] * T[0, j] + xi[1] * T[1, j] for j in range(2))
    chi_p = tuple(chi[0] * T[0, j] + chi[1] * T[1, j] for j in range(2))
    form = _eps_form(el, xi, chi)
    form_p = _eps_form(el, xi_p, chi_p)
    checks.append(_check("invariant-form-preserved", "verified",
                         [("", reduce_unimodular(form_p - form))]))

    # epsilon as an invariant tensor: T_A^C T_B^D eps_CD = eps_AB after
    # unimodular reduction
    res = []
    for A in range(2):
        for B in range(2):
            acc = spec.zero()
            for C in range(2):
                for D in range(2):
                    if el[C][D].is_zero():
                        continue
                    acc = acc + T[A, C] * T[B, D] * el[C][D]
            res.append((f"eps[{A}][{B}]",
                        reduce_unimodular(acc - spec.scalar(el[A][B]))))
    checks.append(_check("epsilon-invariance", "verified", res))

    # vanishing of the self-pairing is exactly the quantum-plane relation:
    # the coefficient extraction of the bilinear set to zero
    checks.append(_check("self-pairing-vanishes", "derived",
                         [("", _eps_form(el, xi, xi))]))
    expansion = (xi[0] * chi[1] * el[0][1] + xi[1] * chi[0] * el[1][0])
    checks.append(_check("bilinear-component-expansion", "verified",
                         [("", form - expansion)]))

    # raise/lower round trip through the contravariant grid
    lowered = tuple(
        sum((xi[A] * el[A][B] for A in range(2)), spec.zero())
        for B in range(2))
    raised = tuple(
        sum((lowered[A] * eu[B][A] for A in range(2)), spec.zero())
        for B in range(2))
    checks.append(_check("raise-lower-roundtrip", "verified",
                         [(f"x{B+1}", raised[B] - xi[B]) for B in range(2)]))

    return SuiteReport("spinor", tuple(checks))


def _sigma_from_eps(eps_upper):
    """Bar-sigma set contracted with an injectable contravariant epsilon."""
    out = []
    for sm in pauli_set():
        grid = []
        for X in range(2):
            row = []
            for A in range(2):
                acc = ZERO
                for Y in range(2):
                    for B in range(2):
                        acc = acc + eps_upper[X][Y] * eps_upper[A][B] * sm[B][Y]
                row.append(acc)
            grid.append(tuple(row))
        out.append(tuple(grid))
    return tuple(out)


def sigma_suite(env=None):
    env = env or SuiteEnv.canonical()
    checks = []

    computed = _sigma_from_eps(env.eps_upper)
    expected = expected_bar_sigma()
    res = []
    for m in range(4):
        for i in range(2):
            for j in range(2):
                res.append((f"bar[{m}][{i}][{j}]",
                            computed[m][i][j] - expected[m][i][j]))
    checks.append(_check("bar-sigma-closed-form", "verified", res))

    ss = SigmaSet(pauli_set(), computed)
    try:
        metric = eta_upper(ss)
    except (ValueError, ZeroDivisionError, ArithmeticError):
        checks.append(CheckResult("eta-invertible", "verified", False,
                                  "contraction metric is singular"))
        return SuiteReport("sigma", tuple(checks))

    # entrywise comparison against the symmetric closed form: the
    # contraction differs in one corner entry, so this is a known failure
    # on the canonical build, kept as a faithful record of the printed form
    ref = eta_reference_upper()
    checks.append(_check(
        "eta-matches-symmetric-printed-form", "printed-form",
        [(f"eta[{m}][{n}]", metric.upper[m][n] - ref[m][n])
         for m in range(4) for n in range(4)]))

    comp = completeness_check(ss)
    flat = [(f"res[{X}][{Y}][{A}][{B}]", comp.residual[X][Y][A][B])
            for X in range(2) for Y in range(2)
            for A in range(2) for B in range(2)]
    checks.append(_check("completeness-contraction-metric", "verified", flat))

    # completeness with the summation index lowered through the inverse of
    # the symmetric printed form instead.  That inverse has denominator
    # q^2 + q^-2, so it does not live in the Laurent ring; the check is
    # evaluated numerically at a non-unit q and fails for the same corner
    # entry that breaks the entrywise comparison above.
    qv = 1.3
    ref_num = np.array([[complex(ref[m][n].specialize(qv))
                         for n in range(4)] for m in range(4)])
    ref_low = np.linalg.inv(ref_num)
    bars = np.array([[[complex(computed[m][i][j].specialize(qv))
                       for j in range(2)] for i in range(2)]
                     for m in range(4)])
    sig = np.array([[[complex(pauli_set()[m][i][j].specialize(qv))
                      for j in range(2)] for i in range(2)]
                    for m in range(4)])
    bar_low = np.einsum("am,mij->aij", ref_low, bars)
    res = []
    for X in range(2):
        for Y in range(2):
            for A in range(2):
                for B in range(2):
                    acc = sum(sig[n][A][X] * bar_low[n][Y][B]
                              for n in range(4))
                    want = 2.0 if (X == Y and A == B) else 0.0
                    res.append((f"res[{X}][{Y}][{A}][{B}]",
                                bool(abs(acc - want) < 1e-9)))
    checks.append(_check("completeness-printed-metric", "printed-form", res))

    # classical limit: at q = 1 the metric is diag(1, -1, -1, -1) and the
    # bar set is (1, -sigma^1, -sigma^2, -sigma^3)
    res = []
    mink = np.diag([1.0, -1.0, -1.0, -1.0])
    eta1 = np.array([[complex(metric.upper[m][n].specialize(1.0))
                      for n in range(4)] for m in range(4)])
    res.append(("eta(q=1)", bool(np.allclose(eta1, mink, atol=1e-12))))
    pauli = pauli_set()
    for m in range(4):
        sign = 1.0 if m == 0 else -1.0
        for i in range(2):
            for j in range(2):
                lhs = complex(computed[m][i][j].specialize(1.0))
                rhs = sign * complex(pauli[m][i][j].specialize(1.0))
                res.append((f"bar(q=1)[{m}][{i}][{j}]",
                            bool(abs(lhs - rhs) < 1e-12)))
    checks.append(_check("classical-limit", "verified", res))

    return SuiteReport("sigma", tuple(checks))


def vectorrep_suite(env=None, samples=100, seed=0):
    env = env or SuiteEnv.canonical()
    checks = []

    spec = NAMED_SPECS["sl2q_bar"]()
    I2 = NCMatrix.identity(spec, 2)
    R = vector_rep(I2).entries
    I4 = NCMatrix.identity(spec, 4)
    checks.append(_check("identity-maps-to-identity", "verified",
                         [("", R - I4)]))

    rng = np.random.default_rng(seed)
    eta1 = np.diag([1.0, -1.0, -1.0, -1.0])
    lorentz_ok = True
    hom_ok = True
    real_ok = True
    worst = 0.0
    for _ in range(samples):
        def rand_sl2():
            while True:
                N = rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))
                det = np.linalg.det(N)
                if abs(det) > 1e-6:
                    return N / np.sqrt(det)
        N1, N2 = rand_sl2(), rand_sl2()
        M1 = vector_rep_numeric(N1)
        M2 = vector_rep_numeric(N2)
        M12 = vector_rep_numeric(N1 @ N2)
        r1 = np.max(np.abs(M1.T @ eta1 @ M1 - eta1))
        r2 = np.max(np.abs(M12 - M1 @ M2))
        r3 = np.max(np.abs(M1.imag))
        worst = max(worst, r1, r2, r3)
        lorentz_ok &= r1 < 1e-10
        hom_ok &= r2 < 1e-10
        real_ok &= r3 < 1e-10
    checks.append(CheckResult(
        "classical-lorentz-property", "derived", bool(lorentz_ok and real_ok),
        "0" if lorentz_ok and real_ok else f"max residual {worst:.3e}"))
    checks.append(CheckResult(
        "numeric-homomorphism", "derived", bool(hom_ok),
        "0" if hom_ok else f"max residual {worst:.3e}"))

    w = detq_nonconservation_witness()
    checks.append(_check("detq-nonconservation-witness", "derived",
                         [("nonzero", w.nonzero),
                          ("classical-limit-vanishes",
                           w.classical_limit_vanishes)]))

    return SuiteReport("vectorrep", tuple(checks))


def _eval_s1(scalar):
    """Exact value of a LaurentScalar at s = 1 as a Gaussian rational."""
    total = None
    for _, c in scalar.monomials():
        total = c if total is None else total + c
    from .scalars import Gauss
    return total if total is not None else Gauss(0)


def _classical_dmatrix(j):
    """Commutative symmetric-power oracle at q = 1.

    Works over Z[a, b, c, d]: substitutes the classical inverse-transpose
    action chi' = chi adj(T)^t into the basis monomials
    (-1)^(j+m) y2^{j+m} y1^{j-m} (the q = 1 limit of the plain spin basis,
    including its diagonal phase) and reads off the coefficient grid,
    returned in the same row-coaction layout as derive_dmatrix.
    """
    ms = rep.m_values(j)
    # polynomials are dicts {(ea, eb, ec, ed, e1, e2): Fraction}
    def mono(expt, coeff=Fraction(1)):
        return {expt: coeff}

    def mul(p, q):
        out = {}
        for e1, c1 in p.items():
            for e2, c2 in q.items():
                key = tuple(x + y for x, y in zip(e1, e2))
                out[key] = out.get(key, Fraction(0)) + c1 * c2
        return {k: v for k, v in out.items() if v}

    def add(p, q):
        out = dict(p)
        for k, v in q.items():
            out[k] = out.get(k, Fraction(0)) + v
        return {k: v for k, v in out.items() if v}

    def power(p, n):
        out = mono((0,) * 6)
        for _ in range(n):
            out = mul(out, p)
        return out

    a = mono((1, 0, 0, 0, 0, 0))
    b = mono((0, 1, 0, 0, 0, 0))
    c = mono((0, 0, 1, 0, 0, 0))
    d = mono((0, 0, 0, 1, 0, 0))
    y1 = mono((0, 0, 0, 0, 1, 0))
    y2 = mono((0, 0, 0, 0, 0, 1))
    neg = lambda p: {k: -v for k, v in p.items()}
    # classical (T^t)^-1 at unit determinant: [[d, -c], [-b, a]]
    y1p = add(mul(y1, d), mul(y2, neg(b)))
    y2p = add(mul(y1, neg(c)), mul(y2, a))

    n = len(ms)
    grid = [[None] * n for _ in range(n)]
    for col, m in enumerate(ms):
        poly = mul(power(y2p, int(j + m)), power(y1p, int(j - m)))
        for row, mp in enumerate(ms):
            # coefficient of y2^{j+mp} y1^{j-mp}, itself a poly in a..d
            sign = Fraction(-1) ** int(m - mp)
            entry = {}
            for expt, coeff in poly.items():
                if expt[4] == int(j - mp) and expt[5] == int(j + mp):
                    entry[expt[:4]] = coeff * sign
            grid[row][col] = entry
    return ms, grid


def _dmatrix_at_q1(dm):
    """Entries of a DMatrix as commutative coefficient dicts at s = 1."""
    ms = rep.m_values(dm.j)
    n = len(ms)
    out = [[None] * n for _ in range(n)]
    for r in range(n):
        for c in range(n):
            poly = dm.entries[r][c]
            entry = {}
            names = ("a", "b", "c", "d")
            for word, coeff in poly.terms.items():
                wn = poly.spec.word_names(word)
                expt = tuple(wn.count(g) for g in names)
                if sum(expt) != len(wn):
                    raise ValueError("unexpected generator in D entry")
                g = _eval_s1(coeff)
                if g.im != 0:
                    raise ValueError("imaginary part at q = 1")
                entry[expt] = entry.get(expt, Fraction(0)) + g.re
            out[r][c] = {k: v for k, v in entry.items() if v}
    return out


def repr_suite(env=None, hom_j=(Fraction(1, 2), Fraction(1), Fraction(3, 2)),
               oracle_j_max=Fraction(2), formula_j_max=Fraction(2),
               q_j_max=Fraction(3, 2)):
    checks = []
    spec = rep.default_rep_spec()

    dm_half = rep.derive_dmatrix(Fraction(1, 2), spec=spec)
    T = canonical_T(spec)
    res = [(f"D[{i}][{j}]", dm_half.entries[i][j] - T[i, j])
           for i in range(2) for j in range(2)]
    checks.append(_check("dmatrix-half-is-generator-matrix", "derived", res))

    # coproduct homomorphism in the doubled algebra
    dspec = rep.doubled_spec()
    T1 = rep.doubled_T(dspec, "1")
    T2 = rep.doubled_T(dspec, "2")
    T12 = T1 * T2
    res = []
    for j in hom_j:
        D1 = rep.derive_dmatrix(j, T=T1, spec=dspec).as_matrix()
        D2 = rep.derive_dmatrix(j, T=T2, spec=dspec).as_matrix()
        D12 = rep.derive_dmatrix(j, T=T12, spec=dspec).as_matrix()
        diff = D12 - D1 * D2
        res.append((f"j={j}", diff))
    checks.append(_check("coproduct-homomorphism", "verified", res))

    # q = 1 specialization against the commutative symmetric-power oracle
    res = []
    j = Fraction(1, 2)
    while j <= oracle_j_max:
        dm = rep.derive_dmatrix(j, spec=spec)
        got = _dmatrix_at_q1(dm)
        ms, want = _classical_dmatrix(j)
        ok = got == [[want[r][c] for c in range(len(ms))]
                     for r in range(len(ms))]
        res.append((f"j={j}", ok))
        j += Fraction(1, 2)
    checks.append(_check("classical-oracle", "derived", res))

    res = []
    j = Fraction(1, 2)
    while j <= formula_j_max:
        derived = rep.derive_dmatrix(j, spec=spec, variant="tilde")
        closed = rep.formula_dmatrix(j, spec=spec)
        diff = [(f"j={j}[{r}][{c}]",
                 derived.entries[r][c] - closed.entries[r][c])
                for r in range(len(derived.entries))
                for c in range(len(derived.entries))]
        res.extend(diff)
        j += Fraction(1, 2)
    checks.append(_check("formula-equals-derived", "derived", res))

    res = []
    j = Fraction(1, 2)
    ispec = rep.invariant_spec()
    while j <= q_j_max:
        q0 = rep.invariant_Q(j, spec=ispec)
        q1 = rep.invariant_Q_transformed(j, spec=ispec)
        res.append((f"j={j}", reduce_unimodular(q1 - q0)))
        j += Fraction(1, 2)
    checks.append(_check("pairing-invariance", "derived", res))

    try:
        report = rep.check_expansion(Fraction(2))
        ok = (report.resolved == (rep.RESOLVED_CONVENTION,)
              and report.lemma_commuting_products)
        checks.append(CheckResult(
            "graded-expansion", "derived", ok,
            "0" if ok else f"resolved={report.resolved}"))
    except ValueError as exc:
        checks.append(CheckResult("graded-expansion", "derived", False,
                                  str(exc)))

    return SuiteReport("repr", tuple(checks))


_SUITES = {
    "epsilon": epsilon_suite,
    "sldet": sldet_suite,
    "spinor": spinor_suite,
    "sigma": sigma_suite,
    "vectorrep": vectorrep_suite,
    "repr": repr_suite,
}


def run_suite(name, env=None):
    """Run one named suite, or all of them concatenated."""
    if name == "all":
        checks = []
        for n in SUITE_NAMES:
            sub = _SUITES[n](env)
            checks.extend(
                CheckResult(f"{n}:{c.check_id}", c.tag, c.passed, c.residual)
                for c in sub.checks)
        return SuiteReport("all", tuple(checks))
    if name not in _SUITES:
        raise KeyError(f"unknown suite {name!r}; choose from "
                       f"{', '.join(SUITE_NAMES + ('all',))}")
    return _SUITES[name](env)
