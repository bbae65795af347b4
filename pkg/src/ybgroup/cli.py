"""Command-line interface.

Exit codes: 0 success, 1 mathematical refusal or failed check, 2 input error.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import perm as P
from .census import (BudgetExceeded, census_counts, classify, enumerate_solutions, write_census)
from .frozen import (QuotientTooLarge, TrivialSolutionError, conjugation_check, coxeter_like_quotient,
                     frozen_data, load_witness, save_witness, torsion_witness, verify_witness)
from .grouprep import emit_presentation, format_word, parse_word, pretty_word
from .orders import (CMP_NAMES, NotRetractable, OrderOracle, find_right_invariance_violation,
                     test_conradian, test_direct_agreement, test_kernel_convexity, test_left_invariance,
                     unique_product_check)
from .perm import MalformedPermutation
from .solution import InvalidSolution, Solution, is_decomposable, retract_tower, validate


class InputError(Exception):
    pass


class Refusal(Exception):
    pass


def _tables(raw, n):
    return [P.to_one_line(P.parse_cycles(n, row)) if isinstance(row, str) else row for row in raw]


def read_tables(path):
    """Raw (f, g-or-None) tables of a solution file; rows may be cycle strings like "(1,2)"."""
    try:
        d = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as e:
        raise InputError(f"cannot read solution file {path}: {e}") from None
    if not isinstance(d, dict) or not isinstance(d.get("n"), int) or d["n"] < 1 or "f" not in d:
        raise InputError(f"{path}: expected fields 'n' (positive integer) and 'f'")
    n = d["n"]
    try:
        f = _tables(d["f"], n)
        g = _tables(d["g"], n) if d.get("g") is not None else None
        if len(f) != n or (g is not None and len(g) != n):
            raise MalformedPermutation(f"expected {n} tables")
        # surface shape errors here, axiom failures are left to validate()
        for row in f + (g or []):
            P.from_one_line(row)
    except (MalformedPermutation, TypeError) as e:
        raise InputError(f"{path}: malformed permutation: {e}") from None
    return f, g


def read_solution(path) -> Solution:
    f, g = read_tables(path)
    try:
        return validate(f, g)
    except MalformedPermutation as e:
        raise InputError(f"{path}: {e}") from None
    except InvalidSolution as e:
        raise InputError(f"{path}: {e}") from None


def _word(text, n):
    try:
        return parse_word(text, n)
    except ValueError as e:
        raise InputError(str(e)) from None


def _word_list(text, n):
    return [_word(t, n) for t in text.split(",")]


def cmd_validate(args):
    f, g = read_tables(args.solution)
    try:
        validate(f, g)
    except MalformedPermutation as e:
        raise InputError(f"malformed permutation: {e}") from None
    except InvalidSolution as e:
        raise Refusal("\n".join(["invalid:"] + [f"  {v}" for v in e.violations])) from None
    print("valid: non-degenerate, involutive, braided")


def cmd_present(args):
    s = read_solution(args.solution)
    print(emit_presentation(s))


def cmd_classify(args):
    s = read_solution(args.solution)
    tower = retract_tower(s)
    dec = is_decomposable(s)
    print(f"n: {s.n}")
    print(f"f: {' '.join(P.to_cycles(p) for p in s.f)}")
    print(f"g: {' '.join(P.to_cycles(p) for p in s.g)}")
    print(f"trivial: {s.is_trivial()}")
    if dec is None:
        print("decomposable: no (indecomposable)")
    else:
        Y, Z = dec
        print(f"decomposable: yes {sorted(y + 1 for y in Y)} | {sorted(z + 1 for z in Z)}")
    print(f"retract tower sizes: {[t.n for t in tower.solutions]}")
    print(f"status: {tower.status}")
    cl = classify(s)
    print(f"frozen class m: {cl['frozen_class_m']}")
    print(f"presentation digest: {cl['presentation_digest']}")


def cmd_frozen(args):
    s = read_solution(args.solution)
    fd = frozen_data(s)
    print(f"pred: {P.to_cycles(fd.pred)}")
    print(f"m: {fd.m} (first candidate {fd.base})")
    for x, w in enumerate(fd.theta):
        print(f"theta_{x + 1}: {format_word(w)}    # {pretty_word(w)}")
    report = conjugation_check(s, fd)
    bad = [k for k, ok in report.items() if not ok]
    print(f"conjugation check x_k theta_i x_k^-1 = theta_(f_k^-1(i)): {len(report) - len(bad)}/{len(report)} pass")
    if bad:
        raise Refusal(f"conjugation check failed at {bad}")


def cmd_witness(args):
    if args.verify:
        try:
            wit = load_witness(args.verify)
        except (OSError, json.JSONDecodeError, KeyError, ValueError) as e:
            raise InputError(f"cannot read certificate {args.verify}: {e}") from None
        if not verify_witness(wit):
            raise Refusal("certificate FAILED verification")
        print("certificate verified: c != 1 and the conjugate product is 1")
        return
    if not args.solution:
        raise InputError("witness needs a solution file or --verify CERT")
    s = read_solution(args.solution)
    try:
        wit = torsion_witness(s)
    except TrivialSolutionError as e:
        raise Refusal(str(e)) from None
    print(f"generalized torsion element c = [x_{wit.k}, theta_{wit.i}]  (f_{wit.k} has order p = {wit.p})")
    print(f"c: {format_word(wit.c)}")
    for h in wit.conjugators:
        print(f"conjugator: {format_word(h) or '(empty)'}")
    print("verified: c != 1 and prod h c h^-1 = 1")
    if args.out:
        save_witness(wit, args.out)
        print(f"certificate written to {args.out}")


def cmd_quotient(args):
    s = read_solution(args.solution)
    fd = frozen_data(s)
    try:
        W = coxeter_like_quotient(s, cap=args.cap, fd=fd)
    except QuotientTooLarge as e:
        raise Refusal(str(e)) from None
    print(f"m: {W.m}")
    print(f"m^n: {W.m ** s.n}")
    print(f"verified order: {W.order}")


def _oracle(args, s):
    lex_perm = lex_signs = None
    try:
        if args.lex_perm:
            lex_perm = [int(t) for t in args.lex_perm.replace(",", " ").split()]
        if args.lex_signs:
            lex_signs = []
            for t in args.lex_signs.replace(",", " ").split():
                if t in ("+", "+1", "1"):
                    lex_signs.append(1)
                elif t in ("-", "-1"):
                    lex_signs.append(-1)
                else:
                    raise ValueError(f"bad sign {t!r}")
        return OrderOracle(s, lex_perm=lex_perm, lex_signs=lex_signs)
    except NotRetractable as e:
        raise Refusal(f"{e}; only up-check is available for non-retractable solutions") from None
    except ValueError as e:
        raise InputError(str(e)) from None


def cmd_order(args):
    s = read_solution(args.solution)
    o = _oracle(args, s)
    if args.action == "compare":
        w1, w2 = _word(args.word1, s.n), _word(args.word2, s.n)
        print(CMP_NAMES[o.compare(w1, w2)])
        return
    kw = dict(samples=args.samples, radius=args.radius, seed=args.seed)
    reports = [test_left_invariance(o, **kw), test_conradian(o, n_max=args.n_max, **kw)]
    if all(p == s.f[0] for p in s.f):
        reports += [test_kernel_convexity(o, **kw), test_direct_agreement(o, **kw)]
    for r in reports:
        print(r.summary())
        for fail in r.failures[:10]:
            print(f"  counterexample: {json.dumps(fail)}")
    if not s.is_trivial():
        v = find_right_invariance_violation(o, samples=10 * args.samples, radius=args.radius, seed=args.seed)
        if v is None:
            print("right-invariance falsifier: inconclusive (no violation found)")
        else:
            g, h, f = v
            print(f"right-invariance violation: g={format_word(g)!r} < h={format_word(h)!r} "
                  f"but not g f < h f for f={format_word(f)!r}")
    if not all(r.passed for r in reports):
        raise Refusal("order property tests failed")


def cmd_census(args):
    workers = args.workers or int(os.environ.get("YBGROUP_THREADS", "1"))
    try:
        entries = enumerate_solutions(args.n, pruned=not args.unpruned, workers=workers, budget=args.budget)
    except BudgetExceeded as e:
        raise InputError(str(e)) from None
    counts = census_counts(entries)
    print(json.dumps({"n": args.n, **counts}))
    for i, e in enumerate(entries):
        print(f"{i:3d} {e.solution}  {json.dumps(e.classification())}")
    if args.out:
        path = write_census(entries, args.out, args.n)
        print(f"manifest written to {path}")


def cmd_up_check(args):
    s = read_solution(args.solution)
    A, B = _word_list(args.A, s.n), _word_list(args.B, s.n)
    r = unique_product_check(s, A, B)
    for fs in r.repeated:
        print("multiply factorized: " + " = ".join(f"({format_word(a)})({format_word(b)})" for a, b in fs))
    if r.witness is None:
        raise Refusal("no unique product for this pair (A, B)")
    a, b = r.witness
    print(f"unique product: ({format_word(a)})({format_word(b)})")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="ybgroup", description=__doc__)
    sub = ap.add_subparsers(dest="command", required=True)

    def with_solution(name, fn, help):
        p = sub.add_parser(name, help=help)
        p.add_argument("solution", help="solution file (JSON with fields n, f, optional g)")
        p.set_defaults(fn=fn)
        return p

    with_solution("validate", cmd_validate, "check the solution axioms")
    with_solution("present", cmd_present, "print the structure group presentation")
    with_solution("classify", cmd_classify, "decomposability, retract tower, frozen class")
    with_solution("frozen", cmd_frozen, "frozen elements and the conjugation check")
    p = sub.add_parser("witness", help="generalized torsion certificate")
    p.add_argument("solution", nargs="?")
    p.add_argument("--out", help="write a replayable certificate")
    p.add_argument("--verify", metavar="CERT", help="re-verify a certificate file")
    p.set_defaults(fn=cmd_witness)
    p = with_solution("quotient-w", cmd_quotient, "order of the finite quotient G/N")
    p.add_argument("--cap", type=int, default=65536)
    p = sub.add_parser("order", help="left order oracle for retractable solutions")
    osub = p.add_subparsers(dest="action", required=True)
    for name in ("compare", "test"):
        q = osub.add_parser(name)
        q.add_argument("solution")
        if name == "compare":
            q.add_argument("word1")
            q.add_argument("word2")
        else:
            q.add_argument("--samples", type=int, default=1000)
            q.add_argument("--radius", type=int, default=6)
            q.add_argument("--seed", type=int, default=0)
            q.add_argument("--n-max", type=int, default=4)
        q.add_argument("--lex-perm", help="coordinate order on Z^X, e.g. '2 1 3'")
        q.add_argument("--lex-signs", help="per-coordinate signs, e.g. '+ - +'")
        q.set_defaults(fn=cmd_order)
    p = sub.add_parser("census", help="enumerate solutions up to isomorphism")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--out", help="directory for entry files and manifest.json")
    p.add_argument("--budget", action="store_true", help="allow n=5 (pruned search)")
    p.add_argument("--unpruned", action="store_true", help="plain scan of all f-families")
    p.add_argument("--workers", type=int, default=0)
    p.set_defaults(fn=cmd_census)
    p = with_solution("up-check", cmd_up_check, "unique product check for finite A, B")
    p.add_argument("--A", required=True, help="comma-separated words, e.g. '1, 2'")
    p.add_argument("--B", required=True)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return 0 if e.code == 0 else 2
    try:
        args.fn(args)
    except InputError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except Refusal as e:
        print(str(e))
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
