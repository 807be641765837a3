"""Command-line interface.

Exit codes: 0 success, 1 a verification check failed, 2 bad input.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys

from . import verify
from .chow import AUGMENTED, CHOW, ModelError, build_model, summary
from .matroid import CapacityError, MatroidError, boolean_matroid, from_json, uniform_matroid
from .poly import IntPolynomial
from .poset import (KernelError, PosetError, TheoryViolation, aug_chow_polynomial,
                    characteristic, chow_polynomial, kls_left, kls_right, poset_of_flats)


class InputError(Exception):
    pass


def _matroid_args(p):
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--boolean", type=int, metavar="N", help="boolean matroid on N elements")
    g.add_argument("--uniform", type=int, nargs=2, metavar=("R", "N"), help="uniform matroid U(R,N)")
    g.add_argument("matroid", nargs="?", help="matroid JSON file, or inline JSON text")


def _format_arg(p):
    p.add_argument("--format", choices=("pretty", "json", "csv"), default="pretty")


def load_matroid(args):
    if args.boolean is not None:
        return boolean_matroid(args.boolean), f"B{args.boolean}"
    if args.uniform is not None:
        r, n = args.uniform
        return uniform_matroid(r, n), f"U{r},{n}"
    spec = args.matroid
    if spec.lstrip().startswith("{"):
        return from_json(spec), "inline"
    try:
        with open(spec) as fh:
            text = fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {spec}: {exc.strerror}") from None
    return from_json(text), os.path.basename(spec)


def _csv(rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    for row in rows:
        w.writerow(row)
    return buf.getvalue().rstrip("\n")


def _emit_poly(name: str, label: str, p: IntPolynomial, fmt: str) -> str:
    if fmt == "json":
        return json.dumps({"matroid": name, label: p.to_list()}, sort_keys=True)
    if fmt == "csv":
        return _csv([["degree", "coefficient"]] + [[k, c] for k, c in enumerate(p.to_list())])
    return str(p)


def cmd_matroid_info(args) -> int:
    M, name = load_matroid(args)
    info = {"name": name, **M.describe()}
    if args.format == "json":
        print(json.dumps(info, sort_keys=True))
    elif args.format == "csv":
        print(_csv([["field", "value"]] + [[k, json.dumps(v)] for k, v in info.items()]))
    else:
        for k, v in info.items():
            print(f"{k}: {v}")
    return 0


def cmd_chow_poly(args) -> int:
    M, name = load_matroid(args)
    print(_emit_poly(name, "chow", chow_polynomial(M), args.format))
    return 0


def cmd_aug_chow_poly(args) -> int:
    M, name = load_matroid(args)
    print(_emit_poly(name, "augmented_chow", aug_chow_polynomial(M), args.format))
    return 0


def cmd_kls(args) -> int:
    M, name = load_matroid(args)
    P = poset_of_flats(M)
    chi = characteristic(P)
    s, t = P.bottom(), P.top()
    right, left = kls_right(chi)[s, t], kls_left(chi)[s, t]
    if args.format == "json":
        print(json.dumps({"matroid": name, "right": right.to_list(), "left": left.to_list()},
                         sort_keys=True))
    elif args.format == "csv":
        print(_csv([["side", "coefficients"], ["right", " ".join(map(str, right.to_list()))],
                    ["left", " ".join(map(str, left.to_list()))]]))
    else:
        print(f"right: {right}")
        print(f"left: {left}")
    return 0


def cmd_ring(args) -> int:
    M, name = load_matroid(args)
    model = build_model(M, args.kind)
    data = {"matroid": name, **summary(model, with_basis=args.basis)}
    if args.format == "json":
        print(json.dumps(data, sort_keys=True))
    elif args.format == "csv":
        print(_csv([["degree", "dimension"]] + [[k, model.dim(k)] for k in range(model.top + 1)]))
    else:
        print(f"{args.kind} ring of {name}: {model.hilbert()}")
        if args.basis:
            for k, monos in model.basis_dump().items():
                print(f"  degree {k}: {', '.join(monos)}")
    return 0


def cmd_euler(args) -> int:
    if args.max < 1:
        raise InputError("--max must be at least 1")
    rows = [(n, verify.eulerian(n)) for n in range(1, args.max + 1)]
    if args.format == "json":
        for n, p in rows:
            print(json.dumps({"n": n, "eulerian": p.to_list()}))
    elif args.format == "csv":
        print(_csv([["n", "coefficients"]] + [[n, " ".join(map(str, p.to_list()))] for n, p in rows]))
    else:
        for n, p in rows:
            print(f"A_{n} = {p}")
    return 0


def cmd_verify(args) -> int:
    corpus = verify.default_corpus() if args.corpus == "default" else verify.load_corpus(args.corpus)
    bound = args.max_rank if args.max_rank is not None else verify.max_rank()
    reports = verify.run_suite(args.suite, corpus, bound)
    for r in reports:
        d = r.to_dict()
        if not args.timing:
            d.pop("seconds")
        if args.format == "json":
            print(json.dumps(d, sort_keys=True))
        elif args.format == "csv":
            pass
        else:
            print(f"{'PASS' if r.passed else 'FAIL'} {r.identity} {r.instance}"
                  + (f" ({r.seconds:.3f}s)" if args.timing else ""))
    if args.format == "csv":
        header = ["identity", "instance", "pass"] + (["seconds"] if args.timing else [])
        body = [[r.identity, r.instance, int(r.passed)] + ([f"{r.seconds:.4f}"] if args.timing else [])
                for r in reports]
        print(_csv([header] + body))
    s = verify.summarize(reports)
    if args.format == "pretty":
        print(f"{s['checks']} checks, {s['failed']} failed")
    return 1 if s["failed"] else 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="chowlab", description=(
        "Chow functions, KLS functions and Chow-ring Hilbert series of matroids, "
        "and checks of the direct-sum decompositions."))
    sub = parser.add_subparsers(dest="command", required=True)

    m = sub.add_parser("matroid", help="matroid utilities")
    msub = m.add_subparsers(dest="action", required=True)
    info = msub.add_parser("info", help="ground set, rank, flat counts, coloops")
    _matroid_args(info)
    _format_arg(info)
    info.set_defaults(func=cmd_matroid_info)

    for name, func, hlp in (("chow-poly", cmd_chow_poly, "Hilbert series of the Chow ring"),
                            ("aug-chow-poly", cmd_aug_chow_poly, "Hilbert series of the augmented Chow ring"),
                            ("kls", cmd_kls, "Kazhdan-Lusztig polynomial (right and left)")):
        p = sub.add_parser(name, help=hlp)
        _matroid_args(p)
        _format_arg(p)
        p.set_defaults(func=func)

    p = sub.add_parser("ring", help="build an explicit ring model and print its graded dimensions")
    _matroid_args(p)
    _format_arg(p)
    p.add_argument("--kind", choices=(CHOW, AUGMENTED), default=CHOW)
    p.add_argument("--basis", action="store_true", help="also list quotient basis monomials")
    p.set_defaults(func=cmd_ring)

    p = sub.add_parser("euler", help="Eulerian polynomials by descent counting")
    p.add_argument("--max", type=int, required=True, metavar="N")
    _format_arg(p)
    p.set_defaults(func=cmd_euler)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("--suite", choices=verify.SUITES, default="all")
    p.add_argument("--corpus", default="default", help="'default' or a JSON corpus file")
    p.add_argument("--max-rank", type=int, default=None,
                   help="rank-sum bound for pairs (default: $CHOWLAB_MAX_RANK or 6)")
    p.add_argument("--timing", action="store_true", help="include timings (output is then not reproducible)")
    _format_arg(p)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (InputError, MatroidError, CapacityError, PosetError, KernelError,
            json.JSONDecodeError, ValueError) as exc:
        print(f"chowlab: error: {exc}", file=sys.stderr)
        return 2
    except (ModelError, TheoryViolation) as exc:
        print(f"chowlab: internal check failed: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
