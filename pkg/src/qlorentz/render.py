"""Canonical text rendering for scalars and noncommutative polynomials.

The output is deterministic and stays inside the CLI expression grammar, so
parse(print_canonical(p)) lowers back to p.
"""

from __future__ import annotations

from fractions import Fraction


def _frac_text(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}" if x.denominator != 1 else str(x.numerator)


def _gauss_factors(c):
    """Factor strings for a Gauss with non-negative canonical sign."""
    if c.im == 0:
        return [] if c.re == 1 else [_frac_text(c.re)]
    if c.re == 0:
        return ["i"] if c.im == 1 else [_frac_text(c.im), "i"]
    inner = _frac_text(c.re)
    if c.im > 0:
        tail = "i" if c.im == 1 else f"{_frac_text(c.im)}*i"
        return [f"({inner} + {tail})"]
    tail = "i" if c.im == -1 else f"{_frac_text(-c.im)}*i"
    return [f"({inner} - {tail})"]


def _gauss_sign(c):
    """Canonical sign split: returns (negative?, |c|)."""
    if c.re < 0 or (c.re == 0 and c.im < 0):
        return True, -c
    return False, c


def _q_factor(s_exp):
    if s_exp == 0:
        return None
    if s_exp == 2:
        return "q"
    if s_exp % 2 == 0:
        return f"q^{s_exp // 2}"
    return f"q^({s_exp}/2)"


def _monomial_text(c, s_exp, gen_names=()):
    neg, mag = _gauss_sign(c)
    factors = _gauss_factors(mag)
    qf = _q_factor(s_exp)
    if qf:
        factors.append(qf)
    factors.extend(gen_names)
    if not factors:
        factors = ["1"]
    return neg, "*".join(factors)


def _join(parts):
    if not parts:
        return "0"
    neg, text = parts[0]
    out = ("-" if neg else "") + text
    for neg, text in parts[1:]:
        out += (" - " if neg else " + ") + text
    return out


def scalar_to_text(x):
    """Terms in decreasing s-exponent; even exponents print as integer powers
    of q, odd ones as q^(k/2)."""
    return _join([_monomial_text(c, e) for e, c in x.monomials()])


def _scalar_is_monomial(x):
    return len(x.terms) == 1


def poly_to_text(p):
    """Graded-lexicographic term order; one summand per PBW word.

    Words with a multi-term scalar coefficient render it parenthesized so the
    text still parses under the expression grammar.
    """
    parts = []
    for w, c in p.sorted_terms():
        names = p.spec.word_names(w)
        if _scalar_is_monomial(c):
            ((e, g),) = c.terms.items()
            parts.append(_monomial_text(g, e, names))
        else:
            text = "(" + scalar_to_text(c) + ")"
            if names:
                text += "*" + "*".join(names)
            parts.append((False, text))
    return _join(parts)
