"""perdyn command-line interface.

Exit codes: 0 = all pass / vacuous-pass, 1 = any fail, 2 = usage or
hypothesis error (including map-expression parse errors).
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from fractions import Fraction

from . import verify
from .errors import PerdynError
from .ffield import field_from_order, prime_field, extension_field
from .heights import function_field, n_eps, height_elem, place_poly, place_prime, rationals
from .ffield import irreducible_polys
from .family import phi_disjoint
from .mapexpr import build_map, parse_element, parse_point
from .padyn import graph_stats, successor_table
from .verify import Report, STATUS_FAIL, STATUS_OUT, write_csv
from .wreath import action_spec, fix_n


def _parse_field_name(name: str):
    """'Q' or 'F<q>(s)'."""
    if name.strip() == "Q":
        return rationals()
    m = re.fullmatch(r"F(\d+)\(s\)", name.strip())
    if m:
        return function_field(field_from_order(int(m.group(1))))
    raise PerdynError(f"unknown field {name!r}; use Q or F<q>(s)")


def _report_exit(report: Report) -> int:
    print(json.dumps(report.to_json_dict(), sort_keys=True))
    if report.status == STATUS_OUT:
        return 2
    return 1 if report.status == STATUS_FAIL else 0


def _frac_str(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def cmd_field(args) -> int:
    ctx = prime_field(args.p) if args.r == 1 else extension_field(args.p, args.r)
    mod = " + ".join(
        (f"x^{i}" if c == 1 else f"{c}x^{i}") if i > 1 else (("x" if c == 1 else f"{c}x") if i == 1 else str(c))
        for i, c in reversed(list(enumerate(ctx.modulus)))
        if c
    )
    print(json.dumps({"p": ctx.p, "r": ctx.r, "q": ctx.q, "modulus": mod}, sort_keys=True))
    return 0


def cmd_graph(args) -> int:
    ctx = field_from_order(args.q)
    phi = build_map(args.map, ctx)
    stats = graph_stats(successor_table(phi, ctx))
    prop = stats.periodic_proportion
    print(
        json.dumps(
            {
                "n_points": stats.n_points,
                "periodic_count": stats.periodic_count,
                "cycle_lengths": list(stats.cycle_lengths),
                "image_sizes": list(stats.image_sizes),
                "periodic_proportion": [prop.numerator, prop.denominator],
            },
            sort_keys=True,
        )
    )
    return 0


def cmd_wreath(args) -> int:
    spec = action_spec(args.family, args.d)
    if args.upper:
        print(fix_n(spec, args.n, mode="upper_float"))
    else:
        print(_frac_str(fix_n(spec, args.n)))
    return 0


def cmd_heights(args) -> int:
    hctx = _parse_field_name(args.field)
    elem = parse_element(args.elem, hctx.domain)
    print(_frac_str(height_elem(hctx, elem)))
    return 0


def cmd_neps(args) -> int:
    hctx = _parse_field_name(args.field)
    if hctx.kind != "FF" and args.place_deg is not None:
        raise PerdynError("--place-deg applies to function fields")
    phi = build_map(args.map, hctx.domain)
    crit = [parse_point(t, hctx.domain) for t in args.crit.split(",")]
    if hctx.kind == "FF":
        if args.place_deg is None:
            raise PerdynError("function fields need --place-deg")
        pi = next(irreducible_polys(hctx.coeff_field, args.place_deg))
        place = place_poly(hctx.coeff_field, pi)
    else:
        if args.place_p is None:
            raise PerdynError("Q needs --place-p")
        place = place_prime(args.place_p)
    print(n_eps(hctx, phi.num, phi.den, crit, args.eps, place))
    return 0


def cmd_disjoint(args) -> int:
    hctx = function_field(field_from_order(args.q))
    phi = build_map(args.map, hctx.domain)
    crit = [parse_point(t, hctx.domain) for t in args.crit.split(",")]
    ok, witness = phi_disjoint(phi, crit, args.n)
    out = {"disjoint": ok, "n": args.n}
    if witness is not None:
        g1, m1, g2, m2 = witness
        out["witness"] = [str(g1), m1, str(g2), m2]
    print(json.dumps(out, sort_keys=True))
    return 0


def cmd_check_image_size(args) -> int:
    ctx = field_from_order(args.q)
    c = parse_element(str(args.c), ctx)
    from .verify import _unicritical_map

    phi = _unicritical_map(ctx, args.d, c)
    report = verify.check_image_size(ctx, phi, args.n)
    if args.out:
        write_csv(args.out, [report])
    return _report_exit(report)


def cmd_check_thm12(args) -> int:
    result = verify.check_thm12(args.q, args.r, args.d, args.m)
    if args.out:
        write_csv(args.out, result.rows())
    return _report_exit(result.aggregate)


def cmd_check_thm13(args) -> int:
    report = verify.check_thm13(args.q, args.r)
    if args.out:
        write_csv(args.out, [report])
    return _report_exit(report)


def cmd_check_cor11(args) -> int:
    report = verify.check_cor11(args.p, args.r)
    if args.out:
        write_csv(args.out, [report])
    return _report_exit(report)


def cmd_check_thm64(args) -> int:
    report = verify.check_thm64(args.q, args.r, args.d, args.m)
    if args.out:
        write_csv(args.out, [report])
    return _report_exit(report)


def cmd_baseline(args) -> int:
    report = verify.random_map_baseline(args.points, args.trials, args.seed)
    if args.out:
        write_csv(args.out, [report])
    return _report_exit(report)


def build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(prog="perdyn", description=__doc__)
    sub = top.add_subparsers(dest="command", required=True)

    p = sub.add_parser("field", help="print a field context and its modulus")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--r", type=int, default=1)
    p.set_defaults(fn=cmd_field)

    p = sub.add_parser("graph", help="functional-graph statistics as JSON")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--map", required=True)
    p.set_defaults(fn=cmd_graph)

    p = sub.add_parser("wreath", help="fixed-point proportion fix_n")
    p.add_argument("--family", choices=["S", "A", "D", "C"], required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--exact", action="store_true", default=True)
    mode.add_argument("--upper", action="store_true")
    p.set_defaults(fn=cmd_wreath)

    p = sub.add_parser("heights", help="height of a global-field element")
    p.add_argument("--field", required=True, help='"Q" or "F3(s)"')
    p.add_argument("--elem", required=True)
    p.set_defaults(fn=cmd_heights)

    p = sub.add_parser("neps", help="iterate-depth n_eps at a place")
    p.add_argument("--field", required=True)
    p.add_argument("--map", required=True)
    p.add_argument("--crit", required=True, help="comma-separated points")
    p.add_argument("--eps", type=float, required=True)
    p.add_argument("--place-deg", type=int, dest="place_deg")
    p.add_argument("--place-p", type=int, dest="place_p")
    p.set_defaults(fn=cmd_neps)

    p = sub.add_parser("disjoint", help="phi-disjointness of a point set")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--map", required=True)
    p.add_argument("--crit", required=True)
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(fn=cmd_disjoint)

    check = sub.add_parser("check", help="theorem checkers")
    csub = check.add_subparsers(dest="checker", required=True)

    p = csub.add_parser("image-size")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--c", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--out")
    p.set_defaults(fn=cmd_check_image_size)

    p = csub.add_parser("thm12")
    for flag in ("--q", "--r", "--d", "--m"):
        p.add_argument(flag, type=int, required=True)
    p.add_argument("--out")
    p.set_defaults(fn=cmd_check_thm12)

    p = csub.add_parser("thm13")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--out")
    p.set_defaults(fn=cmd_check_thm13)

    p = csub.add_parser("cor11")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--out")
    p.set_defaults(fn=cmd_check_cor11)

    p = csub.add_parser("thm64")
    for flag in ("--q", "--r", "--d", "--m"):
        p.add_argument(flag, type=int, required=True)
    p.add_argument("--out")
    p.set_defaults(fn=cmd_check_thm64)

    p = sub.add_parser("baseline", help="random-map Monte Carlo baseline")
    p.add_argument("--points", type=int, required=True)
    p.add_argument("--trials", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--out")
    p.set_defaults(fn=cmd_baseline)

    return top


def main(argv=None) -> int:
    # exact fix_n values can have ~300k-digit denominators at the default
    # bit cap; lift CPython's int->str guard so they print
    if hasattr(sys, "set_int_max_str_digits"):
        sys.set_int_max_str_digits(max(700_000, sys.get_int_max_str_digits()))
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except PerdynError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
