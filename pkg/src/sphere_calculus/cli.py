"""Command-line front end for the sphere calculus.

Subcommands: series, embedded, immersed, finite-type, lens, verify.
Exit status 0 on success, 1 when a checked identity is falsified, and
2 for usage errors.  The default truncation order comes from the
SPHERE_CALCULUS_ORDER environment variable (minimum 8, default 32).
"""

from __future__ import annotations

import argparse
import os
import sys

from . import emit
from .elliptic import IdentityError, blowup_functions, verify_elliptic_identities
from .embedded import (
    DerivationError,
    FitError,
    derive_embedded,
    verify_corollary_24,
    verify_embedded_relation,
)
from .immersed import derive_immersed, finite_type_order
from .lens import (
    PosetError,
    build_poset,
    character_variety,
    verify_poset,
)

DEFAULT_ORDER = 32
MIN_ORDER = 8

FALSIFIED = (IdentityError, DerivationError, FitError, PosetError)


def default_order() -> int:
    raw = os.environ.get("SPHERE_CALCULUS_ORDER")
    if raw is None:
        return DEFAULT_ORDER
    try:
        order = int(raw)
    except ValueError:
        return DEFAULT_ORDER
    return max(order, MIN_ORDER)


def _parity(text: str) -> int:
    if text in ("even", "0"):
        return 0
    if text in ("odd", "1"):
        return 1
    raise argparse.ArgumentTypeError("parity must be even or odd")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sphere-calculus",
        description="Exact blowup-calculus engine: power series, "
        "structure equations, and lens-space charge posets.",
    )
    parser.add_argument("--order", type=int, default=None,
                        help="series truncation order (min %d)" % MIN_ORDER)
    parser.add_argument("--output", default=None,
                        help="write the document to this path")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--order", type=int, default=argparse.SUPPRESS,
                        help="series truncation order (min %d)" % MIN_ORDER)
    common.add_argument("--output", default=argparse.SUPPRESS,
                        help="write the document to this path")
    sub = parser.add_subparsers(dest="command", required=True)

    p_series = sub.add_parser("series", parents=[common],
                              help="emit a blowup power series")
    p_series.add_argument("--fn", required=True,
                          choices=["B", "S", "Delta", "Q", "q", "Qprime"])
    p_series.add_argument("--format", default="text",
                          choices=["text", "json", "latex"])

    p_emb = sub.add_parser("embedded", parents=[common], help="embedded-sphere structure equation")
    p_emb.add_argument("--n", type=int, required=True)
    p_emb.add_argument("--epsilon", type=int, required=True, choices=[0, 1])
    p_emb.add_argument("--format", default="text",
                       choices=["text", "json", "latex"])

    p_imm = sub.add_parser("immersed", parents=[common], help="immersed-sphere structure equation")
    p_imm.add_argument("--p", type=int, required=True)
    p_imm.add_argument("--s", type=int, required=True)
    p_imm.add_argument("--a", type=int, required=True)
    p_imm.add_argument("--format", default="text",
                       choices=["text", "json", "latex"])

    p_ft = sub.add_parser("finite-type", parents=[common], help="finite-type order of a sphere")
    p_ft.add_argument("--p", type=int, required=True)
    p_ft.add_argument("--a", type=int, required=True)
    p_ft.add_argument("--format", default="text", choices=["text", "json"])

    p_lens = sub.add_parser("lens", parents=[common], help="lens-space flat classes and posets")
    lens_sub = p_lens.add_subparsers(dest="lens_command", required=True)
    p_chi = lens_sub.add_parser("chi", help="flat character classes")
    p_chi.add_argument("--p", type=int, required=True)
    p_chi.add_argument("--parity", type=_parity, required=True)
    p_chi.add_argument("--format", default="text", choices=["text", "json"])
    p_poset = lens_sub.add_parser("poset", help="charge poset J_n")
    p_poset.add_argument("--p", type=int, required=True)
    p_poset.add_argument("--parity", type=_parity, required=True)
    p_poset.add_argument("--n", type=int, required=True)
    p_poset.add_argument("--format", default="dot",
                         choices=["dot", "ascii", "json"])

    p_verify = sub.add_parser("verify", parents=[common], help="run identity suites")
    p_verify.add_argument("--suite", default="all",
                          choices=["elliptic", "embedded", "immersed",
                                   "lens", "all"])
    return parser


def _verify_elliptic(order: int, lines):
    report = verify_elliptic_identities(blowup_functions(order))
    for name in sorted(report):
        lines.append("elliptic %s: ok through order %d" % (name, report[name]))


def _verify_embedded(order: int, lines):
    verify_corollary_24()
    lines.append("embedded low-n table: ok")
    for n in range(2, 11):
        for eps in (0, 1):
            rel = derive_embedded(n, eps)
            verify_embedded_relation(rel)
            lines.append("embedded n=%d epsilon=%d: ok" % (n, eps))


def _verify_immersed(order: int, lines):
    for p in range(0, 4):
        for s in range(0, p + 1):
            for a in range(4 * p - 2, 4 * p - 7, -1):
                derive_immersed(p, s, a)
                lines.append("immersed (%d, %d, %d): ok" % (p, s, a))


def _verify_lens(order: int, lines):
    for p in range(1, 10):
        for parity in (0, 1):
            character_variety(p, parity)
    lines.append("lens character varieties p<=9: ok")
    for parity in (0, 1):
        j = build_poset(6, parity, 10)
        verify_poset(j)
        lines.append("lens poset J_10 parity %d: %d vertices, %d edges"
                     % (parity, len(j.vertices), len(j.edges)))


def run(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    order = args.order if args.order is not None else default_order()
    if order < MIN_ORDER:
        parser.error("order must be at least %d" % MIN_ORDER)

    try:
        doc = _dispatch(args, order)
    except FALSIFIED as exc:
        print("falsified: %s" % exc, file=sys.stderr)
        return 1
    except ValueError as exc:
        parser.error(str(exc))

    if args.output:
        with open(args.output, "w") as fh:
            fh.write(doc)
    else:
        sys.stdout.write(doc)
    return 0


def _dispatch(args, order: int) -> str:
    if args.command == "series":
        bf = blowup_functions(order)
        f = getattr(bf, args.fn)
        if args.format == "json":
            return emit.series_json(args.fn, f)
        if args.format == "latex":
            return emit.series_latex(args.fn, f)
        return emit.series_text(args.fn, f)

    if args.command == "embedded":
        rel = derive_embedded(args.n, args.epsilon)
        if args.format == "json":
            return emit.embedded_json(rel)
        if args.format == "latex":
            return emit.embedded_latex(rel)
        return emit.embedded_text(rel)

    if args.command == "immersed":
        nf = derive_immersed(args.p, args.s, args.a)
        if args.format == "json":
            return emit.normal_form_json(nf)
        if args.format == "latex":
            return emit.normal_form_latex(nf)
        return emit.normal_form_text(nf)

    if args.command == "finite-type":
        r = finite_type_order(args.p, args.a)
        if args.format == "json":
            import json as _json
            return _json.dumps({
                "schema": emit.SCHEMA, "kind": "finite-type-order",
                "p": args.p, "a": args.a, "r": r,
            }, sort_keys=True, indent=2) + "\n"
        return "r = %d\n" % r

    if args.command == "lens":
        if args.lens_command == "chi":
            classes = character_variety(args.p, args.parity)
            if args.format == "json":
                return emit.chi_json(args.p, args.parity, classes)
            return emit.chi_text(args.p, args.parity, classes)
        j = build_poset(args.p, args.parity, args.n)
        return emit.poset_emit(j, args.format)

    if args.command == "verify":
        lines = []
        suites = {
            "elliptic": _verify_elliptic,
            "embedded": _verify_embedded,
            "immersed": _verify_immersed,
            "lens": _verify_lens,
        }
        chosen = suites if args.suite == "all" else {
            args.suite: suites[args.suite]}
        for name in sorted(chosen):
            chosen[name](order, lines)
        lines.append("all checks passed")
        return "\n".join(lines) + "\n"

    raise AssertionError("unreachable command")


def main():  # console-script entry point
    sys.exit(run())


if __name__ == "__main__":
    main()
