"""Command-line front end.

Exit status: 0 when every executed verification passes, 1 when any fails,
2 for malformed arguments.
"""

import argparse
import json
import math
import sys

from . import catalog
from .errors import CubeProdError, DomainError, UnknownIdentity
from .product import product_gamma_form, product_truncated
from .quadrature import QuadConfig
from .roots import find_roots_upper

DEFAULT_TOL = {"integral": 1e-8, "series": 1e-10}
EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


def _finite_float(text):
    try:
        v = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not math.isfinite(v):
        raise argparse.ArgumentTypeError(f"not a finite number: {text!r}")
    return v


def _finite_complex(text):
    try:
        v = complex(text.replace("i", "j"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not (math.isfinite(v.real) and math.isfinite(v.imag)):
        raise argparse.ArgumentTypeError(f"not a finite number: {text!r}")
    return v


def _positive_float(text):
    v = _finite_float(text)
    if v <= 0:
        raise argparse.ArgumentTypeError(f"must be positive: {text!r}")
    return v


def _positive_int(text):
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError(f"must be at least 1: {text!r}")
    return v


def _add_output(p, default_format="table"):
    p.add_argument("--format", choices=("table", "machine"), default=default_format)
    p.add_argument("--output", help="write to this path instead of standard output")
    p.add_argument("--timing", action="store_true", help="include wall times in machine output")


def build_parser():
    parser = argparse.ArgumentParser(prog="cubeprod", description="Verify identities for the reciprocal cubic product.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="verify one identity")
    p.add_argument("--id", required=True)
    p.add_argument("--b", type=_positive_float)
    p.add_argument("--a", type=_finite_complex, help="complex values as e.g. 0.1+0.1j")
    p.add_argument("--alpha", type=_finite_float)
    p.add_argument("--tol", type=_positive_float)
    _add_output(p)

    for name, help_text, fmt in (
        ("verify-all", "verify the whole catalog", "table"),
        ("report", "emit the report for the whole catalog", "machine"),
    ):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--filter", default="", help="identity id or tag")
        p.add_argument("--tol", type=_positive_float)
        p.add_argument("--workers", type=_positive_int, default=1)
        _add_output(p, fmt)

    p = sub.add_parser("eval-product", help="evaluate P_b(x + iy)")
    p.add_argument("--b", type=_positive_float, required=True)
    p.add_argument("--x", type=_finite_float, required=True)
    p.add_argument("--y", type=_finite_float, default=0.0)
    p.add_argument("--method", choices=("gamma", "truncated"), default="gamma")
    p.add_argument("--terms", type=_positive_int, default=10**6, help="factors kept by --method truncated")

    p = sub.add_parser("roots", help="zeros of exp(i sqrt3 z) + 2 cosh z in the upper half plane")
    p.add_argument("--count", type=_positive_int, required=True)
    p.add_argument("--tol", type=_positive_float, default=1e-11)
    _add_output(p)
    return parser


def _format_number(z):
    z = complex(z)
    if z.imag == 0:
        return f"{z.real:.17g}"
    return f"{z.real:.17g}{z.imag:+.17g}j"


def _emit(text, path):
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _tol_overrides(tol, kind):
    """(identity tol, quadrature config) for a command-line tolerance."""
    if tol is None:
        return DEFAULT_TOL[kind], QuadConfig()
    quad_tol = min(1e-10, 1e-2 * tol)
    return tol, QuadConfig(abs_tol=quad_tol, rel_tol=quad_tol)


def _run(jobs, tol, workers=1):
    def one(job):
        case, params = job
        ident_tol, cfg = _tol_overrides(tol, case.kind)
        return catalog.verify(case.id, params, cfg, ident_tol)

    if workers > 1:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(one, jobs))
    return [one(j) for j in jobs]


def _emit_reports(reports, args):
    if args.format == "machine":
        text = catalog.reports_to_json(reports, timing=args.timing)
    else:
        text = catalog.reports_to_table(reports, timing=args.timing)
    _emit(text, args.output)
    return EXIT_OK if all(r.passed for r in reports) else EXIT_FAIL


def _cmd_verify(args):
    case = catalog.get_case(args.id)
    overrides = {k: v for k, v in (("b", args.b), ("a", args.a), ("alpha", args.alpha)) if v is not None}
    if overrides:
        unknown = set(overrides) - set(case.grid[0])
        if unknown:
            raise DomainError(f"{case.id} takes no parameter(s) {', '.join(sorted(unknown))}")
        points = [{**case.grid[0], **overrides}]
    else:
        points = list(case.grid)
    for p in points:
        if case.domain is not None:
            case.domain(p)
    return _emit_reports(_run([(case, p) for p in points], args.tol), args)


def _cmd_all(args):
    jobs = [(case, p) for case in catalog.select(args.filter) for p in case.grid]
    return _emit_reports(_run(jobs, args.tol, args.workers), args)


def _cmd_eval_product(args):
    z = complex(args.x, args.y)
    if args.method == "truncated":
        r = product_truncated(args.b, z, args.terms)
        print(f"{_format_number(r.value)}  (relative tail bound {r.tail_estimate:.3g})")
    else:
        print(_format_number(product_gamma_form(args.b, z)))
    return EXIT_OK


def _cmd_roots(args):
    records = find_roots_upper(args.count, tol=args.tol)
    if args.format == "machine":
        rows = [
            {
                "index": r.index,
                "seed": {"re": r.seed.real, "im": r.seed.imag},
                "root": {"re": r.root.real, "im": r.root.imag},
                "residual": r.residual,
                "iterations": r.iterations,
            }
            for r in records
        ]
        _emit(json.dumps(rows, indent=2) + "\n", args.output)
    else:
        lines = [f"{'n':>3}  {'root':>40}  {'residual':>9}  {'|root - seed|':>13}  iters"]
        for r in records:
            lines.append(
                f"{r.index:>3}  {r.root.real:+.3e} {r.root.imag:+.17f}i  {r.residual:9.2e}"
                f"  {abs(r.root - r.seed):13.3e}  {r.iterations}"
            )
        _emit("\n".join(lines) + "\n", args.output)
    return EXIT_OK


_COMMANDS = {
    "verify": _cmd_verify,
    "verify-all": _cmd_all,
    "report": _cmd_all,
    "eval-product": _cmd_eval_product,
    "roots": _cmd_roots,
}


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        return _COMMANDS[args.command](args)
    except (UnknownIdentity, DomainError) as exc:
        print(f"cubeprod: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except CubeProdError as exc:
        print(f"cubeprod: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
