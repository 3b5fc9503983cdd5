"""Exact symbolic calculus for the q-deformed Lorentz spinor algebra.

The package is organized in layers:

* :mod:`qlorentz.scalars` — exact Laurent polynomials in q^(1/2) over the
  Gaussian rationals, with q-integers, q-factorials and q-binomials.
* :mod:`qlorentz.algebra` — noncommutative polynomial rings with PBW normal
  ordering by term rewriting; the quantum matrix algebra and quantum planes.
* :mod:`qlorentz.spinor` — the deformed Levi-Civita metric spinors, index
  raising/lowering, quantum determinant, antipode and spinor transforms.
* :mod:`qlorentz.sigma` — the deformed sigma-matrix sector, the Minkowski
  metric from the trace contraction, and the 4x4 vector representation.
* :mod:`qlorentz.representations` — the spin-j representation tower over the
  quantum plane, derived and closed-form matrices, and the quadratic
  invariant.
* :mod:`qlorentz.parsing` / :mod:`qlorentz.render` — the expression grammar
  and the canonical pretty-printer (exact round trips).
* :mod:`qlorentz.suites` / :mod:`qlorentz.cli` — named identity suites and
  the ``qlorentz`` command-line front end.
"""

from .scalars import (Gauss, LaurentScalar, ONE, ZERO, IMAG, basic_integer,
                      q_factorial, q_binomial, sym_integer, sym_factorial)
from .algebra import (AlgebraSpec, Block, NCPoly, NAMED_SPECS, build_spec,
                      commutator, delta_q, normal_order, reduce_unimodular,
                      sl2q_spec, sl2q_bar_spec, quantum_plane_spec,
                      spinor_spec, substitute_numeric)
from .spinor import (EpsilonTensor, NCMatrix, SpinorExpr, antipode,
                     canonical_T, canonical_T_bar, dagger, invariant_form,
                     lower_index, q_det, raise_index, transform,
                     transpose_inverse)
from .sigma import (SigmaSet, build_bar_sigma, bispinor_to_vector,
                    completeness_check, detq_nonconservation_witness,
                    eta_upper, vector_rep, vector_rep_numeric,
                    vector_to_bispinor)
from .representations import (DMatrix, SpinVector, check_expansion, c_matrix,
                              derive_dmatrix, formula_dmatrix, invariant_Q,
                              invariant_Q_transformed, invariant_weight,
                              m_values, norm_sq, spin_vector, vector_V)
from .parsing import ExprError, lower, parse, parse_poly, print_canonical
from .render import poly_to_text, scalar_to_text
from .suites import SuiteEnv, SuiteReport, run_suite

__version__ = "0.1.0"
