"""Acceptance criteria: one test and one printed pass/fail line per
criterion.

Criterion 4 contains an entrywise comparison between the trace-contraction
metric and the symmetric closed form quoted for it.  The contraction is
asymmetric in the (3, 0) entry, so that clause fails on a faithful build;
the test reports the failure honestly instead of weakening the check.
"""

import random
import subprocess
import sys
import time
from fractions import Fraction

import numpy as np

from qlorentz.algebra import NAMED_SPECS, spinor_spec
from qlorentz.parsing import parse_poly, print_canonical
from qlorentz.scalars import Gauss, LaurentScalar
from qlorentz.sigma import (build_bar_sigma, completeness_check,
                            compute_bar_sigma, eta_reference_upper, eta_upper,
                            expected_bar_sigma, pauli_set)
from qlorentz.spinor import eps_lower_entries, eps_upper_entries
from qlorentz.suites import (SuiteEnv, mutated_da_spec, mutated_eps_lower,
                             run_suite)


def report(number, name, ok, detail=""):
    status = "PASS" if ok else "FAIL"
    extra = f" ({detail})" if detail else ""
    print(f"acceptance criterion {number} [{name}]: {status}{extra}")
    assert ok, f"criterion {number} ({name}) failed{extra}"


def test_criterion_1_epsilon_suite():
    t0 = time.time()
    r = run_suite("epsilon")
    ok = r.exit_status == 0
    report(1, "epsilon identities", ok, f"{time.time() - t0:.2f}s")
    assert time.time() - t0 < 1.0


def test_criterion_2_sl2q_suite():
    t0 = time.time()
    r = run_suite("sldet")
    ok = r.exit_status == 0
    report(2, "quantum matrix identities", ok, f"{time.time() - t0:.2f}s")
    assert time.time() - t0 < 5.0


def test_criterion_3_spinor_invariance():
    t0 = time.time()
    r = run_suite("spinor")
    ok = r.exit_status == 0
    report(3, "spinor invariance", ok, f"{time.time() - t0:.2f}s")
    assert time.time() - t0 < 5.0


def test_criterion_4_sigma_eta():
    t0 = time.time()
    bar_ok = compute_bar_sigma() == expected_bar_sigma()
    metric = eta_upper()
    entrywise_ok = metric.matches_reference
    completeness_ok = completeness_check().passed
    mink = np.diag([1.0, -1.0, -1.0, -1.0])
    eta1 = np.array([[complex(metric.upper[m][n].specialize(1.0))
                      for n in range(4)] for m in range(4)])
    classical_ok = bool(np.allclose(eta1, mink, atol=1e-12))
    ss = build_bar_sigma()
    for m in range(4):
        sign = 1.0 if m == 0 else -1.0
        for i in range(2):
            for j in range(2):
                lhs = complex(ss.bar_sigma[m][i][j].specialize(1.0))
                rhs = sign * complex(pauli_set()[m][i][j].specialize(1.0))
                classical_ok &= abs(lhs - rhs) < 1e-12
    ok = bar_ok and entrywise_ok and completeness_ok and classical_ok
    detail = []
    if not entrywise_ok:
        m, n, got, want = metric.mismatches[0]
        detail.append(f"contraction differs from the symmetric closed form "
                      f"at ({m},{n}): residual {got - want}")
    detail.append(f"{time.time() - t0:.2f}s")
    report(4, "sigma/eta identities", ok, "; ".join(detail))


def test_criterion_5_vector_rep():
    t0 = time.time()
    r = run_suite("vectorrep")  # 100 random matrices at 1e-10 inside
    ok = r.exit_status == 0
    report(5, "vector representation", ok, f"{time.time() - t0:.2f}s")
    assert time.time() - t0 < 10.0


def test_criterion_6_representation_tower():
    t0 = time.time()
    r = run_suite("repr")
    ok = r.exit_status == 0
    report(6, "spin-j representations", ok, f"{time.time() - t0:.2f}s")
    assert time.time() - t0 < 60.0


def test_criterion_7_mutation_sensitivity():
    t0 = time.time()
    base_fail = set(run_suite("all").failed_ids)

    def new_failures(env):
        return set(run_suite("all", env).failed_ids) - base_fail

    da_env = SuiteEnv(mutated_da_spec(), spinor_spec(),
                      eps_lower_entries(), eps_upper_entries())
    results = {"da-rule-sign": bool(new_failures(da_env))}
    for entry in ((0, 1), (1, 0)):
        env = SuiteEnv(spinor_spec(), spinor_spec(),
                       mutated_eps_lower(*entry), eps_upper_entries())
        results[f"eps{entry}"] = bool(new_failures(env))
    ok = all(results.values())
    report(7, "mutation sensitivity", ok,
           f"{results}; {time.time() - t0:.2f}s")
    assert time.time() - t0 < 30.0


def test_criterion_8_parser_and_cli():
    t0 = time.time()
    spec = NAMED_SPECS["spinor"]()
    rng = random.Random(99)
    names = ("a", "b", "c", "d", "x1", "x2", "c1", "c2")
    round_trips_ok = True
    for _ in range(1000):
        poly = spec.zero()
        for _ in range(rng.randint(1, 4)):
            w = tuple(rng.choice(names)
                      for _ in range(rng.randint(0, 3)))
            coeff = LaurentScalar({
                rng.randint(-4, 4): Gauss(
                    Fraction(rng.randint(-3, 3), rng.randint(1, 3)),
                    Fraction(rng.randint(-3, 3), rng.randint(1, 3)))})
            poly = poly + spec.word(w, coeff)
        back = parse_poly(print_canonical(poly), spec)
        round_trips_ok &= (poly - back).is_zero()

    def run(argv):
        return subprocess.run([sys.executable, "-m", "qlorentz.cli", *argv],
                              capture_output=True, check=False)

    determinism_ok = True
    for argv in (["emit", "dmatrix", "--j", "1", "--format", "json"],
                 ["verify", "epsilon", "--format", "json"]):
        r1, r2 = run(argv), run(argv)
        determinism_ok &= (r1.stdout == r2.stdout
                           and r1.returncode == r2.returncode)

    exit_ok = (run(["verify", "epsilon"]).returncode == 0
               and run(["verify", "sigma"]).returncode == 1
               and run(["verify", "nope"]).returncode == 2
               and run(["normalize", "a +"]).returncode == 2)

    ok = round_trips_ok and determinism_ok and exit_ok
    report(8, "parser and CLI contract", ok,
           f"round-trips={round_trips_ok} determinism={determinism_ok} "
           f"exit-codes={exit_ok}; {time.time() - t0:.2f}s")
    assert time.time() - t0 < 10.0
