"""Command-line entry point: ``python -m crsphere <command> ...``.

Exact values are printed as ``p/q`` and floats at 17 significant digits.
``certify`` exits 0 for a certified stable form and 10 for a certified
unstable one; ``reproduce`` exits 0 when every item passes, 10 when an
instability shows up where stability was expected and 1 for any other
failed item.  Internal errors exit 2.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from fractions import Fraction
from pathlib import Path

from . import __version__
from .certify import jacobi_spectrum
from .forms import long_form, rayleigh_bound, short_form
from .integrals import factorial_oracle, integrate_monomial, phi2_unit
from .monomials import Polynomial, format_rational
from .pairings import cr_pair, cr_pair_oracle, dirichlet_pair_pointwise, dirichlet_pair_reduced
from .quadrature import quad_integrate
from .reproduce import ITEMS, certify_form, cmd_extend, cmd_reproduce, fmt_float

EXIT_OK, EXIT_FAIL, EXIT_ERROR, EXIT_UNSTABLE = 0, 1, 2, 10


def _dump(obj, path: str | None = None) -> None:
    text = json.dumps(obj, indent=2, sort_keys=False)
    if path:
        Path(path).write_text(text + "\n")
    else:
        print(text)


def _index(text: str) -> tuple[int, ...]:
    try:
        a = tuple(int(t) for t in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad multi-index {text!r}; use e.g. 2,0,0") from None
    if len(a) != 3 or min(a) < 0:
        raise argparse.ArgumentTypeError(f"need three nonnegative exponents, got {text!r}")
    return a


def _form(args):
    if getattr(args, "short", None):
        return short_form(args.short, args.degree)
    return long_form(args.degree)


def cmd_integrate(args) -> int:
    a = tuple(args.index)
    m = args.m
    if len(a) != m + 1:
        raise ValueError(f"need {m + 1} exponents for S^{m}")
    value = integrate_monomial(a, m)
    shown = value / phi2_unit(m) if args.units == "phi2" else value
    print(format_rational(shown))
    if args.oracle:
        if m != 2:
            raise ValueError("the quadrature oracle only covers m = 2")
        approx = quad_integrate(Polynomial.monomial(a), n=max(8, sum(a) // 2 + 2), k=max(16, sum(a) + 2))
        # quadrature works in absolute area; convert to the displayed unit
        unit = 4 * math.pi * (float(phi2_unit(m)) if args.units == "phi2" else 1.0)
        print(f"quadrature {fmt_float(approx / unit)}")
        print(f"difference {fmt_float(abs(approx / unit - float(shown)))}")
        if all(x % 2 == 0 for x in a):
            agree = factorial_oracle(a) == value
            print(f"factorial oracle {format_rational(factorial_oracle(a))} ({'agrees' if agree else 'DISAGREES'})")
    return EXIT_OK


def cmd_pairing(args) -> int:
    a, b = args.a, args.b
    if args.kind == "grad":
        value = dirichlet_pair_reduced(a, b)
        print(format_rational(value))
        if args.oracle:
            other = dirichlet_pair_pointwise(a, b)
            print(f"pointwise {format_rational(other)} ({'agrees' if other == value else 'DISAGREES'})")
    else:
        value = cr_pair(args.axis, a, b)
        print(format_rational(value))
        if args.oracle:
            other = cr_pair_oracle(args.axis, a, b)
            print(f"triple determinant {format_rational(other)} ({'agrees' if other == value else 'DISAGREES'})")
    return EXIT_OK


def cmd_form(args) -> int:
    if args.kind == "short":
        if args.axis is None:
            raise ValueError("form short needs --axis")
        Q = short_form(args.axis, args.degree)
    else:
        Q = long_form(args.degree)
    if args.out and args.out.endswith(".csv"):
        Path(args.out).write_text(Q.to_csv())
    elif args.out:
        _dump(Q.to_json(), args.out)
    else:
        _dump(Q.to_json())
    return EXIT_OK


def cmd_spectrum(args) -> int:
    Q = _form(args)
    w, _ = jacobi_spectrum(Q, tol=args.tol)
    if args.json:
        _dump({"form": Q.name, "dim": Q.dim, "eigenvalues": [fmt_float(x) for x in w]})
    else:
        for x in w:
            print(fmt_float(x))
    return EXIT_OK


def cmd_certify(args) -> int:
    Q = _form(args)
    result = certify_form(Q, max_scale=args.max_scale)
    if args.json:
        _dump({"form": Q.name, **result})
    else:
        ine = result["inertia"]
        print(f"form     {Q.name} (dim {Q.dim}, blocks {result['block_sizes']})")
        print(f"inertia  pos={ine['pos']} neg={ine['neg']} zero={ine['zero']}")
        print(f"verdict  {result['verdict']}")
        if result["witness"]:
            print(f"witness  {result['witness']['vector']}")
            print(f"value    {result['witness']['value']}")
    return EXIT_UNSTABLE if result["verdict"] == "unstable" else EXIT_OK


def cmd_bounds(args) -> int:
    rows = [rayleigh_bound(l, m=args.m, n=args.n, theta=Fraction(args.theta)) for l in range(1, args.max_degree + 1)]
    if args.json:
        _dump([r.to_json() for r in rows])
        return EXIT_OK
    print(f"m={args.m} n={args.n} theta={args.theta}")
    print("l  l(l+m-1)  m^2(n-2)^2  sufficient  coupling")
    for r in rows:
        print(f"{r.l:<2} {r.sufficiency_lhs:<9} {r.sufficiency_rhs:<11} {str(r.sufficient):<11} {fmt_float(r.coupling)}")
    return EXIT_OK


def cmd_reproduce_cli(args) -> int:
    report = cmd_reproduce(args.only)
    if args.json:
        _dump(report.to_json(timings=not args.no_timings))
    else:
        print(report.table())
    return report.exit_code()


def cmd_extend_cli(args) -> int:
    report = cmd_extend(args.degree, time_budget_s=args.budget, max_scale=args.max_scale)
    data = report.to_json(timings=not args.no_timings)
    if args.out:
        _dump(data, args.out)
    elif args.json:
        _dump(data)
    if not args.json or args.out:
        d = report.items[0].details
        ine = d["inertia"]
        print(f"long_form({args.degree}): dim {d['dim']}, blocks {d['block_sizes']}, "
              f"inertia ({ine['pos']}, {ine['neg']}, {ine['zero']}), {d['verdict']}")
    return report.exit_code()


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="crsphere", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("integrate", help="exact integral of a monomial over the sphere")
    s.add_argument("index", type=int, nargs="+", metavar="A")
    s.add_argument("--m", type=int, default=2)
    s.add_argument("--units", choices=("area", "phi2"), default="area",
                   help="area: total area is 1; phi2: the integral of phi_1^2 is 1")
    s.add_argument("--oracle", action="store_true", help="also report the quadrature value")
    s.set_defaults(func=cmd_integrate)

    s = sub.add_parser("pairing", help="Dirichlet or CR pairing of two monomials")
    psub = s.add_subparsers(dest="kind", required=True)
    g = psub.add_parser("grad")
    g.add_argument("a", type=_index, metavar="A", help="exponents, e.g. 2,0,0")
    g.add_argument("b", type=_index, metavar="B")
    g.add_argument("--oracle", action="store_true")
    g.set_defaults(func=cmd_pairing)
    c = psub.add_parser("cr")
    c.add_argument("axis", type=int, choices=(1, 2, 3))
    c.add_argument("a", type=_index, metavar="A", help="exponents, e.g. 2,0,0")
    c.add_argument("b", type=_index, metavar="B")
    c.add_argument("--oracle", action="store_true")
    c.set_defaults(func=cmd_pairing)

    s = sub.add_parser("form", help="assemble a stability form")
    s.add_argument("kind", choices=("long", "short"))
    s.add_argument("--degree", type=int, required=True)
    s.add_argument("--axis", type=int, choices=(1, 2, 3))
    s.add_argument("--out", help="write to a .json or .csv file")
    s.set_defaults(func=cmd_form)

    for name, func, helptext in (
        ("spectrum", cmd_spectrum, "floating-point eigenvalues (Jacobi)"),
        ("certify", cmd_certify, "exact stability verdict with certificate"),
    ):
        s = sub.add_parser(name, help=helptext)
        s.add_argument("--degree", type=int, required=True)
        s.add_argument("--short", type=int, choices=(1, 2, 3), metavar="I", help="use the short form on axis I")
        s.add_argument("--json", action="store_true")
        if name == "spectrum":
            s.add_argument("--tol", type=float, default=1e-14)
        else:
            s.add_argument("--max-scale", type=int, default=20)
        s.set_defaults(func=func)

    s = sub.add_parser("bounds", help="spectral sufficient conditions")
    s.add_argument("--m", type=int, default=2)
    s.add_argument("--n", type=int, default=5)
    s.add_argument("--theta", default="1")
    s.add_argument("--max-degree", type=int, default=6)
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_bounds)

    s = sub.add_parser("reproduce", help="run the reproduction suite")
    s.add_argument("--only", action="append", choices=list(ITEMS))
    s.add_argument("--json", action="store_true")
    s.add_argument("--no-timings", action="store_true", help="omit timings so output is byte-stable")
    s.set_defaults(func=cmd_reproduce_cli)

    s = sub.add_parser("extend", help="certify long forms of degree 4 and 5")
    s.add_argument("--degree", type=int, required=True, choices=(3, 4, 5))
    s.add_argument("--out", help="write the JSON report here")
    s.add_argument("--json", action="store_true")
    s.add_argument("--budget", type=float, default=1800.0, help="time budget in seconds")
    s.add_argument("--max-scale", type=int, default=20)
    s.add_argument("--no-timings", action="store_true")
    s.set_defaults(func=cmd_extend_cli)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except Exception as exc:  # report, never traceback, on the CLI
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
