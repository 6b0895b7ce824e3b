"""Command-line front end.

Exit status is 0 on success, 1 when a solver rejects the problem and 2 for
usage or expression-syntax errors.  Every failure prints exactly one line of
the form ``E_<CODE>: message`` on stderr.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import analytic, implicit, lagrange, reproduce, universal
from .errors import ConditionError, ConvergenceError, ParseError, SeriesError
from .expr import elaborate, parse
from .series import canonical_lines, csv_lines, dumps

FORMATS = ("canonical", "records", "csv")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _emit_series(s, fmt, out):
    if fmt == "records":
        out.write(dumps(s))
    else:
        lines = canonical_lines(s) if fmt == "canonical" else csv_lines(s)
        out.write("".join(line + "\n" for line in lines))


def _variables(args):
    names = tuple(v.strip() for v in args.vars.split(",") if v.strip())
    if not names:
        raise UsageError("--vars needs at least one variable name")
    return names


def _zorder(args):
    return args.order if args.zorder is None else args.zorder


def _series(text, args, variables, w_order=None):
    return elaborate(
        parse(text, variables), _zorder(args), args.order if w_order is None else w_order, variables
    )


# ---------------------------------------------------------------------------
# subcommands


def cmd_solve(args, out):
    variables = _variables(args)
    if args.G is not None and (args.F is not None or args.gamma is not None):
        raise UsageError("give either --G or --F with --gamma, not both")
    if args.G is not None:
        G = _series(args.G, args, variables)
    elif args.F is not None and args.gamma is not None:
        G = implicit.gamma_transform(_series(args.F, args, variables), _series(args.gamma, args, variables))
    else:
        raise UsageError("solve needs --G, or --F together with --gamma")
    p = implicit.ImplicitProblem(G, args.order)
    H = _series(args.H, args, variables) if args.H else None

    if args.variant == "contraction":
        report = implicit.solve_contraction(p, args.tol_exp)
        if not report.agrees:
            raise ConvergenceError(
                f"floating sums deviate by {report.max_deviation:.3g} > {report.tolerance:.3g}",
                residual=report.max_deviation,
            )
        result = report.phi if H is None else implicit.compose_H(p, H, "contraction")
    elif H is None:
        result = implicit.solve(p, args.variant).phi
    else:
        result = implicit.compose_H(p, H, args.variant)
    _emit_series(result, args.format, out)


def cmd_invert(args, out):
    f = elaborate(parse(args.f, ()), _zorder(args), 0, ())
    if args.H:
        h = elaborate(parse(args.H, ()), _zorder(args), 0, ())
        result = lagrange.revert_compose(f, h, args.order)
    else:
        result = lagrange.revert(f, args.order)
    _emit_series(result, args.format, out)


def cmd_universal(args, out):
    rows = universal.universal_table(args.ell, args.vertices)
    if args.check:
        for ell in range(1, args.ell + 1):
            for v in range(1, args.vertices + 1):
                counts = universal.enumerate_forests(ell, v)
                for t, n in counts.items():
                    if universal.universal_coeff(t) != n:
                        raise ConditionError(
                            f"forest count {n} != formula {universal.universal_coeff(t)} for {t}"
                        )
    if args.format == "records":
        for ell, k, c in rows:
            out.write(json.dumps({"ell": ell, "k": list(k), "coeff": str(c)}) + "\n")
    elif args.format == "csv":
        out.write("ell,k,coeff\n")
        for ell, k, c in rows:
            out.write(f"{ell},{' '.join(map(str, k))},{c}\n")
    else:
        for ell, k, c in rows:
            out.write(f"{ell}; [{','.join(map(str, k))}]; {c}\n")


def _point(text):
    try:
        return tuple(complex(x.strip()) for x in text.split(","))
    except ValueError as exc:
        raise UsageError(f"bad w point {text!r}") from exc


def cmd_analytic(args, out):
    variables = _variables(args)
    if args.G is None:
        raise UsageError("analytic needs --G")
    if not args.at:
        raise UsageError("analytic needs at least one --at point")
    G = _series(args.G, args, variables)
    H = _series(args.H, args, variables) if args.H else None
    if args.format == "csv":
        out.write("w,phi_re,phi_im,residual,margin,rho,contour_re,contour_im\n")
    for text in args.at:
        p = analytic.AnalyticProblem(G, _point(text), rho=args.rho, q_points=args.qpoints)
        if not analytic.check_rouche(p).satisfied:
            p = analytic.select_radius(p, start=args.rho)
        margin = analytic.check_rouche(p).min_margin
        fp = analytic.fixed_point_iterate(p)
        Hs = H if H is not None else elaborate("z", _zorder(args), args.order, variables)
        value = analytic.contour_coefficients(p, Hs, 0).value
        if args.format == "csv":
            out.write(
                f"{text},{fp.value.real!r},{fp.value.imag!r},{fp.residual!r},{margin!r},{p.rho!r},"
                f"{value.real!r},{value.imag!r}\n"
            )
        else:
            out.write(json.dumps({
                "w": [[x.real, x.imag] for x in p.w],
                "phi": [fp.value.real, fp.value.imag],
                "residual": fp.residual,
                "margin": margin,
                "rho": p.rho,
                "contour": [value.real, value.imag],
                "iterations": fp.iterations,
            }) + "\n")


def cmd_reproduce(args, out):
    rows = reproduce.golden_report(order=args.order, sequence_length=args.length)
    for row in rows:
        out.write(row.line() + "\n")
    return 0 if all(r.passed for r in rows) else 1


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="implicit-series", description=__doc__.splitlines()[0], allow_abbrev=False)
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    def common(sp, order_default=8):
        sp.add_argument("--order", type=int, default=order_default, help="total w-degree")
        sp.add_argument("--zorder", type=int, help="z truncation (default: --order)")
        sp.add_argument("--format", choices=FORMATS, default="canonical")

    sp = sub.add_parser("solve", help="solve z = G(z, w) or F(z, w) = 0", allow_abbrev=False)
    sp.add_argument("--G")
    sp.add_argument("--F")
    sp.add_argument("--gamma")
    sp.add_argument("--H", help="output H(phi(w), w) instead of phi")
    sp.add_argument("--vars", default="w")
    sp.add_argument("--variant", choices=implicit.VARIANTS, default="finite")
    sp.add_argument("--tol-exp", type=int, default=-12)
    common(sp)
    sp.set_defaults(run=cmd_solve)

    sp = sub.add_parser("invert", help="reverse a series f(z)", allow_abbrev=False)
    sp.add_argument("--f", required=True)
    sp.add_argument("--H", help="output h(f^-1(w)) instead of f^-1(w)")
    common(sp)
    sp.set_defaults(run=cmd_invert)

    sp = sub.add_parser("universal", help="plane-forest coefficient table", allow_abbrev=False)
    sp.add_argument("--ell", type=int, default=2)
    sp.add_argument("--vertices", type=int, default=5)
    sp.add_argument("--check", action="store_true", help="compare with brute-force enumeration")
    sp.add_argument("--format", choices=FORMATS, default="canonical")
    sp.set_defaults(run=cmd_universal)

    sp = sub.add_parser("analytic", help="numeric fixed point and contour integral", allow_abbrev=False)
    sp.add_argument("--G")
    sp.add_argument("--H")
    sp.add_argument("--vars", default="w")
    sp.add_argument("--at", nargs="+", help="w points; comma-separate components")
    sp.add_argument("--rho", type=float, default=analytic.DEFAULT_RHO)
    sp.add_argument("--qpoints", type=int, default=256)
    common(sp, order_default=1)
    sp.set_defaults(run=cmd_analytic, zorder=None)

    sp = sub.add_parser("reproduce", help="regenerate the worked examples", allow_abbrev=False)
    sp.add_argument("--order", type=int, default=12)
    sp.add_argument("--length", type=int, default=20)
    sp.set_defaults(run=cmd_reproduce)
    return parser


def run(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        if args.command is None:
            raise UsageError("missing command: solve, invert, universal, analytic or reproduce")
        if getattr(args, "order", 0) < 0 or (getattr(args, "zorder", None) or 0) < 0:
            raise UsageError("orders must be non-negative")
        status = args.run(args, out)
        return status or 0
    except UsageError as exc:
        err.write(f"E_USAGE: {exc}\n")
        return 2
    except ParseError as exc:
        err.write(f"E_PARSE: {exc}\n")
        return 2
    except SeriesError as exc:
        err.write(f"E_{exc.code}: {str(exc).splitlines()[0]}\n")
        return 1
    except (ValueError, ArithmeticError) as exc:
        err.write(f"E_INPUT: {str(exc).splitlines()[0]}\n")
        return 1


def main() -> None:
    sys.exit(run())
