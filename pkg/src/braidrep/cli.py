"""Command-line interface.

Subcommands: gram, rep, density, arithmeticity, horo, verify.  Exit codes:
0 success, 1 verification failure, 2 usage or validation error.  With
--json, machine-readable documents go to stdout; otherwise human tables.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import criteria, horo, suites
from .cyclo import to_strings
from .errors import BraidRepError
from .linalg import matrix_to_json
from .rep import (
    evaluate_word,
    make_context,
    parse_word,
    quotient_gram,
    quotient_matrix,
    radical_vector,
)


def _parse_kappa(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(part) for part in text.split(","))
    except ValueError as exc:
        raise BraidRepError(f"cannot parse kappa {text!r}: {exc}") from exc


def _emit(doc: dict, as_json: bool, human: str) -> None:
    if as_json:
        print(json.dumps(doc, sort_keys=True))
    else:
        print(human)


def cmd_gram(args: argparse.Namespace) -> int:
    ctx = make_context(args.d, _parse_kappa(args.kappa), args.k)
    r_q, s_q = criteria.signature(ctx)
    dim = criteria.eigenspace_dimension(ctx)
    doc = {
        "d": ctx.d,
        "n": ctx.n,
        "kappa": list(ctx.weights),
        "k": ctx.k,
        "eps0": ctx.eps0,
        "dimension": dim,
        "signature": [r_q, s_q],
        "mu": to_strings(ctx.mu),
        "gram": matrix_to_json(ctx.gram),
    }
    if ctx.eps0 == 1:
        doc["radical"] = [to_strings(x) for x in radical_vector(ctx)]
        doc["quotient_gram"] = matrix_to_json(quotient_gram(ctx))
    lines = [
        f"d={ctx.d} n={ctx.n} kappa={','.join(map(str, ctx.weights))} k={ctx.k}",
        f"eps0      = {ctx.eps0}",
        f"dimension = {dim}",
        f"signature = ({r_q}, {s_q})",
        "gram:",
        str(ctx.gram),
    ]
    _emit(doc, args.json, "\n".join(lines))
    return 0


def cmd_rep(args: argparse.Namespace) -> int:
    ctx = make_context(args.d, _parse_kappa(args.kappa), args.k)
    word = parse_word(args.word)
    matrix = evaluate_word(ctx, word)
    det = matrix.det()
    if args.quotient:
        matrix = quotient_matrix(ctx, matrix)
    doc = {
        "word": str(word),
        "det": to_strings(det),
        "quotient": bool(args.quotient),
        "matrix": matrix_to_json(matrix),
    }
    human = f"word: {word if word.letters else '(empty)'}\ndet = {det}\n{matrix}"
    _emit(doc, args.json, human)
    return 0


def cmd_density(args: argparse.Namespace) -> int:
    verdict = criteria.density_verdict(args.d, _parse_kappa(args.kappa))
    doc = verdict.to_json()
    human = f"verdict: {verdict.verdict}"
    if not args.json:
        bad = [k for k, rec in verdict.diagnostics["per_k"].items() if not rec["good"]]
        if bad:
            human += f"\nnon-good exponents k: {', '.join(bad)}"
        human += f"\ndimension {verdict.diagnostics['dimension']}" \
                 f" (condition {'met' if verdict.diagnostics['dimension_condition'] else 'not met'})"
    _emit(doc, args.json, human)
    return 0


def cmd_arithmeticity(args: argparse.Namespace) -> int:
    verdict = criteria.arithmeticity_verdict(args.d, _parse_kappa(args.kappa))
    doc = verdict.to_json()
    human = f"verdict: {verdict.verdict}"
    if verdict.witness:
        human += f"\nwitness subset I = {verdict.witness}"
    _emit(doc, args.json, human)
    return 0


def cmd_horo(args: argparse.Namespace) -> int:
    ctx = make_context(args.d, _parse_kappa(args.kappa), args.k)
    fc = horo.make_flag(ctx, args.m)
    report, rep = suites.horo_report(fc, maxlen=args.maxlen, seed=args.seed)
    if args.json:
        print(json.dumps(report, sort_keys=True))
    else:
        print(f"d={ctx.d} kappa={','.join(map(str, ctx.weights))} k={ctx.k} m={fc.m}")
        print(f"witnesses: lower={report['witnesses']['lower']}  upper={report['witnesses']['upper']}")
        print(f"ranks: {report['ranks']}")
        print(f"checks: {rep.passed} passed, {rep.failed} failed")
        for f in rep.failures:
            print(f"  FAIL {f}")
    return 0 if rep.ok else 1


def cmd_verify(args: argparse.Namespace) -> int:
    names = list(suites.SUITE_NAMES) if args.suite == "all" else [args.suite]
    reports = suites.run_suites(names, seed=args.seed, size=args.size)
    total_pass = sum(r.passed for r in reports)
    total_fail = sum(r.failed for r in reports)
    for r in reports:
        status = "PASS" if r.ok else "FAIL"
        print(f"{r.suite:10s} {status}  {r.passed} passed, {r.failed} failed")
        for f in r.failures:
            print(f"  FAIL {f}")
    print(f"total: {total_pass} passed, {total_fail} failed (seed={args.seed}, size={args.size})")
    return 0 if total_fail == 0 else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="braidrep",
        description="Exact braid-group representations from cyclic covers: "
                    "Gram matrices, twist operators, density and arithmeticity criteria.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_context_flags(p: argparse.ArgumentParser, with_k: bool = True) -> None:
        p.add_argument("--d", type=int, required=True, help="cyclic cover degree (>= 3)")
        p.add_argument("--kappa", type=str, required=True, help="comma-separated weights k_1,...,k_n")
        if with_k:
            p.add_argument("--k", type=int, default=1, help="eigenvalue exponent, coprime to d (default 1)")
        p.add_argument("--json", action="store_true", help="emit JSON on stdout")

    p = sub.add_parser("gram", help="Gram matrix, eps0, dimension and signature")
    add_context_flags(p)
    p.set_defaults(func=cmd_gram)

    p = sub.add_parser("rep", help="evaluate a braid word to its exact matrix")
    add_context_flags(p)
    p.add_argument("--word", type=str, default="", help='e.g. "A(1,2) T(3)^-1 FT(2,5)"')
    p.add_argument("--quotient", action="store_true", help="push to the eps0=1 quotient")
    p.set_defaults(func=cmd_rep)

    p = sub.add_parser("density", help="maximal Zariski closure criterion")
    add_context_flags(p, with_k=False)
    p.set_defaults(func=cmd_density)

    p = sub.add_parser("arithmeticity", help="arithmetic lattice criterion")
    add_context_flags(p, with_k=False)
    p.set_defaults(func=cmd_arithmeticity)

    p = sub.add_parser("horo", help="horospherical battery for one flag index")
    add_context_flags(p)
    p.add_argument("--m", type=int, required=True, help="flag index with d | k_1+...+k_m")
    p.add_argument("--maxlen", type=int, default=6, help="orbit word-length budget")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_horo)

    p = sub.add_parser("verify", help="run the seeded verification suites")
    p.add_argument("--suite", choices=list(suites.SUITE_NAMES) + ["all"], default="all")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--size", type=int, default=1, help="sample-size multiplier")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except BraidRepError as exc:
        print(f"error: {exc.name}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
