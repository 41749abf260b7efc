"""Command-line interface: ``qcc <subcommand> ...``.

Exit status: 0 success, 1 usage error, 2 validation failure (including a
decode that does not recover the hidden error), 3 distance budget exceeded.
With ``--json`` every record is printed as one JSON object per line.
"""

from __future__ import annotations

import argparse
import json
import logging
import random
import sys
from dataclasses import replace
from pathlib import Path

import numpy as np

from . import descriptor as desc_io
from .cyclic_code import DEFAULT_BUDGET, exact_distance
from .cyclotomic import cyclotomic_cosets, factor_xn_minus_1
from .decoder import SyndromeOracle, correct, random_error
from .errors import BudgetExceeded, DecodingFailure, QCCError
from .fourm import (
    FourMCode,
    construct,
    construct_from_cosets,
    enumerate_codes,
    length,
    transversals,
)
from .poly import BinaryPoly, QuartPoly, format_poly, parse_poly, to_hex

EXIT_OK, EXIT_USAGE, EXIT_INVALID, EXIT_BUDGET = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


class Output:
    """Human lines or JSON records, chosen once per invocation."""

    def __init__(self, as_json: bool, stream=None):
        self.as_json = as_json
        self.stream = stream or sys.stdout

    def emit(self, human: str | None, record: dict) -> None:
        if self.as_json:
            print(json.dumps(record), file=self.stream)
        elif human is not None:
            print(human, file=self.stream)


def _fmt(u) -> str:
    coeffs = u.coeffs() if isinstance(u, (BinaryPoly, QuartPoly)) else u
    return format_poly(coeffs)


def factorisation_string(n: int, field: str) -> str:
    fs = factor_xn_minus_1(n, field)
    return f"x^{n}-1 = " + "".join(f"({_fmt(f)})" for f in fs.factors)


# ---------------------------------------------------------------------------
# subcommands


def _odd(n: int) -> None:
    if n < 1 or n % 2 == 0:
        raise UsageError(f"n must be a positive odd integer, got {n}")


def cmd_factor(args, out: Output) -> int:
    _odd(args.n)
    fs = factor_xn_minus_1(args.n, args.field)
    out.emit(factorisation_string(args.n, args.field), {
        "n": args.n, "field": args.field,
        "factors": [_fmt(f) for f in fs.factors],
        "hex": [to_hex(f) for f in fs.factors],
        "cosets": [list(c) for c in fs.cosets],
    })
    return EXIT_OK


def cmd_cosets(args, out: Output) -> int:
    _odd(args.n)
    part = cyclotomic_cosets(args.n, args.q)
    for c in part.cosets:
        out.emit(f"C_{c[0]} = {{{', '.join(map(str, c))}}}",
                 {"n": args.n, "q": args.q, "leader": c[0], "coset": list(c)})
    return EXIT_OK


def _best_transversal(m: int, g: BinaryPoly) -> FourMCode:
    n = length(m)
    best = None
    for choice in transversals(n, g):
        code = construct(m, g, choice)
        if best is None or code.bch_d > best.bch_d:
            best = code
    if best is None:
        raise UsageError("g admits no valid h")
    return best


def cmd_construct(args, out: Output) -> int:
    g = parse_poly(args.g)
    if not isinstance(g, BinaryPoly):
        raise UsageError("--g must be a polynomial over F2")
    if args.h_cosets is None:
        code = _best_transversal(args.m, g)
    else:
        code = construct_from_cosets(args.m, g, args.h_cosets)
    d = code.exact_distance(budget=args.budget).d if args.distance else None
    desc = desc_io.from_fourm(code, d)
    record = {"label": desc.label(), "n": code.n, "k": code.k, "bch": list(code.bch),
              "h": _fmt(code.h), "h_cosets": list(code.h_cosets), "d": d}
    if args.output:
        desc.write(args.output)
        record["path"] = str(args.output)
        out.emit(f"{desc.label()} h = {_fmt(code.h)} written to {args.output}", record)
    else:
        record["descriptor"] = desc.dumps()
        out.emit(desc.dumps().rstrip("\n"), record)
    return EXIT_OK


def cmd_search(args, out: Output) -> int:
    codes = enumerate_codes(args.m)
    if not out.as_json:
        print(f"{'n':>4} {'k':>3} {'bch':>4} {'d':>4}  g / h cosets")
    if args.out_dir:
        Path(args.out_dir).mkdir(parents=True, exist_ok=True)
    for idx, code in enumerate(codes):
        d = None
        if args.distance:
            try:
                d = code.exact_distance(budget=args.budget).d
            except BudgetExceeded:
                d = None
        record = {"n": code.n, "k": code.k, "bch": code.bch_d, "d": d,
                  "g": _fmt(code.g), "h_cosets": list(code.h_cosets)}
        if args.out_dir:
            path = Path(args.out_dir) / f"code_{code.n}_{code.k}_{idx:03d}.desc"
            desc_io.from_fourm(code, d).write(path)
            record["path"] = str(path)
        dtext = "-" if d is None else str(d)
        out.emit(f"{code.n:>4} {code.k:>3} {code.bch_d:>4} {dtext:>4}  "
                 f"{_fmt(code.g)} / {list(code.h_cosets)}", record)
    return EXIT_OK


def cmd_distance(args, out: Output) -> int:
    desc = desc_io.read(args.file, verify_distance=False)
    code = desc.code()
    try:
        res = exact_distance(code, budget=args.budget, threads=args.threads,
                             checkpoint=args.checkpoint)
    except BudgetExceeded as exc:
        out.emit(f"budget exceeded: d >= {exc.lower_bound}",
                 {"error": "budget", "lower_bound": exc.lower_bound, "message": str(exc)})
        return EXIT_BUDGET
    a, b = res.witness.polys()
    witness = "".join(map(str, res.witness.a)) + "|" + "".join(map(str, res.witness.b))
    out.emit(f"d = {res.d}\nwitness = {witness}\nenumerated = {res.enumerated} ({res.method})",
             {"d": res.d, "witness_a": to_hex(a), "witness_b": to_hex(b),
              "enumerated": res.enumerated, "method": res.method})
    if args.update:
        Path(args.file).write_text(replace(desc, d=res.d).dumps())
    return EXIT_OK


def _bits(text: str, n: int) -> BinaryPoly:
    if len(text) != n or set(text) - {"0", "1"}:
        raise UsageError(f"error vectors must be {n} characters of 0/1")
    return BinaryPoly.from_coeffs(int(c) for c in text)


def cmd_decode(args, out: Output) -> int:
    desc = desc_io.read(args.file, verify_distance=False)
    code = desc.fourm_code()
    n = code.n
    if args.a is not None or args.b is not None:
        a = _bits(args.a or "0" * n, n)
        b = _bits(args.b or "0" * n, n)
    else:
        if args.weight is None:
            raise UsageError("give --a/--b or --weight (with optional --seed)")
        if not 0 <= args.weight <= n:
            raise UsageError(f"--weight must lie in 0..{n}")
        a, b = random_error(n, args.weight, random.Random(args.seed))
    oracle = SyndromeOracle(a, b, n)
    try:
        est = correct(code, oracle)
        ok = est.a == a and est.b == b
        failure = None
    except DecodingFailure as exc:
        est, ok, failure = None, False, str(exc)

    def bits(u: BinaryPoly) -> str:
        return "".join(map(str, u.coeffs(n)))

    record = {"n": n, "t": code.t, "a": bits(a), "b": bits(b), "queries": oracle.queries,
              "pass": ok}
    lines = [f"error     a={bits(a)} b={bits(b)}"]
    if est is not None:
        record.update(a_hat=bits(est.a), b_hat=bits(est.b), e=_fmt(est.e))
        lines.append(f"recovered a={bits(est.a)} b={bits(est.b)}  e(x) = {_fmt(est.e)}")
    else:
        record["failure"] = failure
        lines.append(f"decoding failed: {failure}")
    lines.append(f"queries = {oracle.queries}")
    lines.append("PASS" if ok else "FAIL")
    out.emit("\n".join(lines), record)
    return EXIT_OK if ok else EXIT_INVALID


def cmd_simulate(args, out: Output) -> int:
    from . import weyl_sim

    desc = desc_io.read(args.file, verify_distance=False)
    if desc.n > 6:
        raise UsageError("simulation is limited to n <= 6")
    S = desc.code().S
    P = weyl_sim.stabiliser_projector(S)
    trace = float(np.trace(P).real)
    cyclic = weyl_sim.check_cyclic(P)
    kl = weyl_sim.kl_distance(P, max_check=args.max_check)
    out.emit(f"trace = {trace:.10g}\ncyclic = {cyclic}\nkl_distance = {kl}",
             {"trace": trace, "cyclic": cyclic, "kl_distance": kl,
              "projector": weyl_sim.is_projector(P)})
    return EXIT_OK


def cmd_search562(args, out: Output) -> int:
    from . import weyl_sim

    S = weyl_sim.laflamme_subspace()
    if args.extended:
        S = weyl_sim.cyclic_logical_extension(S)
    res = weyl_sim.search_562(S, cyclic_only=args.extended)
    out.emit(f"{len(res.found)} code(s) found among {res.scanned} scanned subsets",
             {"extended": args.extended, "scanned": res.scanned,
              "candidates": res.candidates, "found": len(res.found)})
    for code in res.found:
        chars = " ".join("".join("+" if s > 0 else "-" for s in c) for c in code.characters)
        out.emit(f"subset {list(code.subset)}  trace={code.trace:.6g} "
                 f"kl_distance={code.distance} cyclic={code.cyclic}  chars: {chars}",
                 {"subset": list(code.subset), "trace": code.trace,
                  "kl_distance": code.distance, "cyclic": code.cyclic,
                  "characters": [list(c) for c in code.characters]})
    return EXIT_OK


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(add_help=False)
    top.add_argument("--json", action="store_true", help="JSON-lines output")
    top.add_argument("-v", "--verbose", action="store_true")
    # accepted after the subcommand too, without resetting a flag given before it
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS,
                        help="JSON-lines output")
    common.add_argument("-v", "--verbose", action="store_true", default=argparse.SUPPRESS)

    parser = _Parser(prog="qcc", description="Quantum cyclic stabiliser codes.",
                     parents=[top])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("factor", parents=[common], help="factor x^n-1 over f2 or f4")
    p.add_argument("n", type=int)
    p.add_argument("field", choices=("f2", "f4"))
    p.set_defaults(func=cmd_factor)

    p = sub.add_parser("cosets", parents=[common], help="q-cyclotomic cosets mod n")
    p.add_argument("n", type=int)
    p.add_argument("q", type=int, choices=(2, 4))
    p.set_defaults(func=cmd_cosets)

    p = sub.add_parser("construct", parents=[common], help="build a 4^m+1 code descriptor")
    p.add_argument("m", type=int)
    p.add_argument("--g", default="x-1", help="binary divisor of x^n-1, e.g. 'x-1'")
    p.add_argument("--h-cosets", type=int, nargs="+",
                   help="root exponents naming the chosen F4 factors (default: best BCH)")
    p.add_argument("--distance", action="store_true", help="also compute the exact distance")
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    p.add_argument("-o", "--output", type=Path)
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("search", parents=[common], help="sweep all codes of length 4^m+1")
    p.add_argument("m", type=int)
    p.add_argument("--distance", action="store_true")
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    p.add_argument("--out-dir", type=Path)
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("distance", parents=[common], help="exact distance of a descriptor")
    p.add_argument("file", type=Path)
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    p.add_argument("--threads", type=int)
    p.add_argument("--checkpoint", type=Path)
    p.add_argument("--update", action="store_true", help="store d in the descriptor")
    p.set_defaults(func=cmd_distance)

    p = sub.add_parser("decode", parents=[common], help="decode an error through the oracle")
    p.add_argument("file", type=Path)
    p.add_argument("--a", help="X part as a 0/1 string, position 0 first")
    p.add_argument("--b", help="Z part as a 0/1 string, position 0 first")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--weight", type=int)
    p.set_defaults(func=cmd_decode)

    p = sub.add_parser("simulate", parents=[common], help="dense projector checks (n <= 6)")
    p.add_argument("file", type=Path)
    p.add_argument("--max-check", type=int, default=3)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("search562", parents=[common],
                       help="pseudo-stabiliser ((5,6,2)) search over the five-qubit code")
    p.add_argument("--extended", action="store_true",
                   help="search the shift-closed subsets of the group enlarged by a cyclic logical")
    p.set_defaults(func=cmd_search562)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    out = Output(args.json)
    try:
        return args.func(args, out)
    except UsageError as exc:
        print(f"qcc: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BudgetExceeded as exc:
        print(f"qcc: budget exceeded: {exc} (d >= {exc.lower_bound})", file=sys.stderr)
        return EXIT_BUDGET
    except (QCCError, ValueError, OSError) as exc:
        print(f"qcc: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
