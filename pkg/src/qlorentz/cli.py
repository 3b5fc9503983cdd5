"""Command-line front end.

Subcommands:

* ``normalize <expr> [--spec NAME] [--reduce] [--q VALUE]`` — parse an
  expression in the CLI grammar, rewrite it into the PBW normal form of the
  chosen relation set, and print the canonical rendering (numeric
  coefficients with 15 significant digits when ``--q`` is given).
* ``verify <suite> [--format json|text] [--report-dir DIR]`` — run one of
  the identity suites (epsilon, sldet, spinor, sigma, vectorrep, repr, all)
  and print a per-identity report.  With ``--report-dir`` a CSV table and a
  PNG summary figure are written alongside the standard output.
* ``emit <kind> [--j J] [--q VALUE] [--format json|text]`` — export the
  sigma/metric/representation artifacts (kinds: dmatrix, eta, sigma,
  barsigma) as deterministic text or JSON.

Exit codes: 0 success / all identities pass, 1 at least one identity
failed, 2 usage error (bad arguments, unknown suite or generator, syntax
error).
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from fractions import Fraction

from .algebra import NAMED_SPECS, reduce_unimodular
from .parsing import ExprError, parse_poly, print_canonical
from .render import poly_to_text, scalar_to_text
from .representations import DEFAULT_J_BOUND, derive_dmatrix
from .scalars import LaurentScalar
from .sigma import build_bar_sigma, eta_upper
from .suites import SUITE_NAMES, run_suite

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2


# ---------------------------------------------------------------------------
# numeric rendering (15 significant digits, stable format)


def _fmt_float(x):
    return format(float(x), ".15g")


def _fmt_complex(z):
    z = complex(z)
    re, im = _fmt_float(z.real), _fmt_float(z.imag)
    if z.imag == 0:
        return re
    if z.real == 0:
        return f"{im}*i"
    sign = "+" if z.imag >= 0 else "-"
    return f"({re} {sign} {_fmt_float(abs(z.imag))}*i)"


def _numeric_scalar_text(x, q):
    return _fmt_complex(x.specialize(q))


def _numeric_poly_text(p, q):
    parts = []
    for w, c in p.sorted_terms():
        names = p.spec.word_names(w)
        text = _fmt_complex(c.specialize(q))
        if names:
            text += "*" + "*".join(names)
        parts.append(text)
    return " + ".join(parts) if parts else "0"


def _scalar_grid_payload(grid, q=None):
    if q is None:
        return [[x.to_json() for x in row] for row in grid]
    return [[_fmt_complex(x.specialize(q)) for x in row] for row in grid]


def _scalar_grid_text(grid, q=None):
    rows = []
    for row in grid:
        if q is None:
            rows.append("  ".join(scalar_to_text(x) for x in row))
        else:
            rows.append("  ".join(_fmt_complex(x.specialize(q)) for x in row))
    return "\n".join(rows)


def _dump_json(payload):
    return json.dumps(payload, sort_keys=True, separators=(",", ":"))


# ---------------------------------------------------------------------------
# subcommands


def _cmd_normalize(args):
    spec_name = args.spec
    if spec_name not in NAMED_SPECS:
        print(f"error: unknown spec {spec_name!r}; choose from "
              f"{', '.join(sorted(NAMED_SPECS))}", file=sys.stderr)
        return EXIT_USAGE
    spec = NAMED_SPECS[spec_name]()
    try:
        poly = parse_poly(args.expr, spec)
    except ExprError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if args.reduce:
        poly = reduce_unimodular(poly)
    if args.q is not None:
        print(_numeric_poly_text(poly, args.q))
    else:
        print(print_canonical(poly))
    return EXIT_OK


def _write_report_files(report, directory):
    import pathlib

    out = pathlib.Path(directory)
    out.mkdir(parents=True, exist_ok=True)
    csv_path = out / f"{report.suite}_report.csv"
    with open(csv_path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["suite", "check_id", "tag", "passed", "residual"])
        for c in report.checks:
            writer.writerow([report.suite, c.check_id, c.tag,
                             int(c.passed), c.residual])

    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    labels = [c.check_id for c in report.checks]
    values = [1 if c.passed else 0 for c in report.checks]
    colors = ["#2a7" if v else "#c33" for v in values]
    height = max(2.0, 0.4 * len(labels) + 1.2)
    fig, ax = plt.subplots(figsize=(8, height))
    ax.barh(range(len(labels)), [1] * len(labels), color=colors)
    ax.set_yticks(range(len(labels)))
    ax.set_yticklabels(labels, fontsize=8)
    ax.invert_yaxis()
    ax.set_xticks([])
    passed = sum(values)
    ax.set_title(f"suite {report.suite}: {passed}/{len(labels)} checks pass")
    fig.tight_layout()
    png_path = out / f"{report.suite}_report.png"
    fig.savefig(png_path)
    plt.close(fig)
    return csv_path, png_path


def _cmd_verify(args):
    valid = SUITE_NAMES + ("all",)
    if args.suite not in valid:
        print(f"error: unknown suite {args.suite!r}; choose from "
              f"{', '.join(valid)}", file=sys.stderr)
        return EXIT_USAGE
    report = run_suite(args.suite)
    if args.format == "json":
        print(_dump_json(report.to_json()))
    else:
        print(report.to_text())
    if args.report_dir:
        csv_path, png_path = _write_report_files(report, args.report_dir)
        print(f"report written: {csv_path}", file=sys.stderr)
        print(f"figure written: {png_path}", file=sys.stderr)
    return report.exit_status


def _parse_j(text):
    try:
        j = Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"invalid j {text!r}")
    if j < 0 or (2 * j).denominator != 1:
        raise argparse.ArgumentTypeError(
            f"j must be a non-negative half-integer, got {text}")
    return j


def _cmd_emit(args):
    q = args.q
    if args.kind == "dmatrix":
        j = args.j if args.j is not None else Fraction(1, 2)
        if j > DEFAULT_J_BOUND:
            print(f"error: j={j} exceeds the bound {DEFAULT_J_BOUND}",
                  file=sys.stderr)
            return EXIT_USAGE
        dm = derive_dmatrix(j)
        if args.format == "json":
            payload = dm.to_json()
            if q is not None:
                payload["entries"] = [
                    [_numeric_poly_text(e, q) for e in row]
                    for row in dm.entries]
                payload["norm_sq"] = [_numeric_scalar_text(n, q)
                                      for n in dm.norm_sq]
                payload["q"] = _fmt_float(q)
            print(_dump_json(payload))
        else:
            print(f"dmatrix j={j} (rows/cols m = +j .. -j)")
            for row in dm.entries:
                if q is None:
                    print("  ".join(poly_to_text(e) for e in row))
                else:
                    print("  ".join(_numeric_poly_text(e, q) for e in row))
        return EXIT_OK

    if args.kind == "eta":
        metric = eta_upper()
        if args.format == "json":
            print(_dump_json({
                "kind": "eta",
                "upper": _scalar_grid_payload(metric.upper, q),
                "lower": _scalar_grid_payload(metric.lower, q),
            }))
        else:
            print("eta upper:")
            print(_scalar_grid_text(metric.upper, q))
            print("eta lower:")
            print(_scalar_grid_text(metric.lower, q))
        return EXIT_OK

    if args.kind in ("sigma", "barsigma"):
        ss = build_bar_sigma()
        grids = ss.sigma if args.kind == "sigma" else ss.bar_sigma
        if args.format == "json":
            print(_dump_json({
                "kind": args.kind,
                "matrices": [_scalar_grid_payload(g, q) for g in grids],
            }))
        else:
            for idx, g in enumerate(grids):
                print(f"{args.kind}^{idx}:")
                print(_scalar_grid_text(g, q))
        return EXIT_OK

    print(f"error: unknown emit kind {args.kind!r}", file=sys.stderr)
    return EXIT_USAGE


# ---------------------------------------------------------------------------


def build_parser():
    parser = argparse.ArgumentParser(
        prog="qlorentz",
        description="Exact symbolic calculus for the q-deformed Lorentz "
                    "spinor algebra: normalization, identity suites, and "
                    "artifact export.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("normalize",
                       help="rewrite an expression into PBW normal form")
    p.add_argument("expr")
    p.add_argument("--spec", default="spinor",
                   help="relation set (%s)" % ", ".join(sorted(NAMED_SPECS)))
    p.add_argument("--reduce", action="store_true",
                   help="also apply the unit-determinant reduction")
    p.add_argument("--q", type=float, default=None,
                   help="render coefficients numerically at this q")
    p.set_defaults(func=_cmd_normalize)

    p = sub.add_parser("verify", help="run an identity suite")
    p.add_argument("suite")
    p.add_argument("--format", choices=("json", "text"), default="text")
    p.add_argument("--report-dir", default=None,
                   help="write a CSV table and PNG figure of the results")
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("emit", help="export an artifact")
    p.add_argument("kind", choices=("dmatrix", "eta", "sigma", "barsigma"))
    p.add_argument("--j", type=_parse_j, default=None,
                   help="half-integer spin for dmatrix (e.g. 3/2)")
    p.add_argument("--q", type=float, default=None,
                   help="specialize numerically at this q")
    p.add_argument("--format", choices=("json", "text"), default="text")
    p.set_defaults(func=_cmd_emit)

    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors already; normalize other codes
        return int(exc.code) if exc.code else EXIT_OK
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
