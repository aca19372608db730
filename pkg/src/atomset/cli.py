"""Command-line entry point.

Every command prints JSON.  By default only the result object is printed;
``--json`` prints the full envelope::

    {"command": ..., "input": ..., "result": ..., "certificate": ...}

with atoms rendered as strings.  Exit codes: 0 success, 1 property violation
(or a failed precondition on the input object), 2 usage or parse error
(including a window too small for the object).
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from atomset import facts, oracle
from atomset.card import CardClass
from atomset.dsl import compile_text, load_map, parse_atom_set, print_obj
from atomset.errors import AtomSetError, ParseError, PreconditionError, WindowTooSmall
from atomset.functions import DefinableMap, check_theorem_instance, map_eval, map_trajectory
from atomset.notions import inexhaustible_finite_check, parse_table, wdstar_transform
from atomset.relations import (
    LeftWitness,
    Relation,
    rel_card,
    rel_count_window,
    rel_equal,
    refute_disjoint_family,
    rkl_decide,
)
from atomset.subset_algebra import (
    KSubsetSet,
    PQBasis,
    kss_card,
    kss_count_window,
    kss_equal,
    kss_normal_form,
    kss_support,
    pq_card,
    pq_count_window,
    pq_to_kss,
)
from atomset.tuple_algebra import (
    Fresh,
    TupleSet,
    ts_card,
    ts_count_window,
    ts_equal,
    ts_normal_form,
    ts_support,
)


class UsageError(AtomSetError):
    pass


class Violation(AtomSetError):
    """A checked property failed; carries the result payload."""

    def __init__(self, message, result=None, certificate=None):
        super().__init__(message)
        self.result = result
        self.certificate = certificate


# -- JSON rendering --------------------------------------------------------


def names(xs) -> list[str]:
    return [a.name for a in xs]


def obj_to_json(obj) -> dict:
    if isinstance(obj, PQBasis):
        return {"kind": "basis", "p": names(obj.p), "q": names(obj.q), "k": obj.k, "text": print_obj(obj)}
    if isinstance(obj, KSubsetSet):
        return {
            "kind": "subsets",
            "k": obj.k,
            "context": names(obj.context),
            "H": [{"p": names(p), "q": names(q)} for p, q in obj.components()],
            "text": print_obj(obj),
        }
    if isinstance(obj, TupleSet):
        def label(lab):
            return {"fresh": lab.j} if isinstance(lab, Fresh) else lab.name

        return {
            "kind": "tuples",
            "arity": obj.arity,
            "context": names(obj.context),
            "cells": [[label(x) for x in c.pattern] for c in obj.sorted_cells()],
            "text": print_obj(obj),
        }
    if isinstance(obj, Relation):
        return {
            "kind": "relation",
            "n1": obj.n1,
            "n2": obj.n2,
            "context": names(obj.context),
            "orbits": [
                {"ps": names(o.ps), "pt": names(o.pt), "m": o.m} for o in obj.sorted_orbits()
            ],
            "text": print_obj(obj),
        }
    if isinstance(obj, DefinableMap):
        return {
            "kind": "map",
            "P": names(obj.P),
            "rank": obj.rank,
            "rules": [
                {"p": names(r.p), "k": r.k, "out": names(r.out), "fresh": r.fresh} for r in obj.rules
            ],
        }
    raise TypeError(f"cannot render {type(obj).__name__}")


# -- dispatch helpers -------------------------------------------------------


def _card(obj) -> CardClass:
    if isinstance(obj, PQBasis):
        return pq_card(obj)
    if isinstance(obj, KSubsetSet):
        return kss_card(obj)
    if isinstance(obj, TupleSet):
        return ts_card(obj)
    if isinstance(obj, Relation):
        return rel_card(obj)
    raise UsageError(f"cannot classify a {type(obj).__name__}")


def _count(obj, N: int) -> int:
    if isinstance(obj, PQBasis):
        return pq_count_window(obj, N)
    if isinstance(obj, KSubsetSet):
        return kss_count_window(obj, N)
    if isinstance(obj, TupleSet):
        return ts_count_window(obj, N)
    if isinstance(obj, Relation):
        return rel_count_window(obj, N)
    raise UsageError(f"cannot count a {type(obj).__name__}")


def _set_expr(text: str):
    obj = compile_text(text)
    if isinstance(obj, Relation):
        raise UsageError("expected a set of tuples or of finite sets, got a relation")
    return obj


def _relation(text: str) -> Relation:
    obj = compile_text(text)
    if not isinstance(obj, Relation):
        raise UsageError("expected a relation literal rel(n1,n2) {...}")
    return obj


def _read(path: str) -> str:
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as e:
        raise UsageError(f"cannot read {path}: {e.strerror}") from None


def _windows(N: int) -> list[int]:
    return [N, N + 2, N + 4]


def _witness_json(v) -> dict:
    side = "left" if isinstance(v, LeftWitness) else "right"
    x = v.p if side == "left" else v.q
    return {
        "side": side,
        "x": names(x),
        "orbit": {"ps": names(v.orbit.ps), "pt": names(v.orbit.pt), "m": v.orbit.m},
        "fiber": obj_to_json(v.fiber),
        "fiber_card": kss_card(v.fiber).to_json(),
    }


# -- commands --------------------------------------------------------------


def cmd_classify(args):
    return _card(compile_text(args.expr)).to_json(), None


def cmd_support(args):
    obj = _set_expr(args.expr)
    if isinstance(obj, PQBasis):
        obj = pq_to_kss(obj)
    supp = kss_support(obj) if isinstance(obj, KSubsetSet) else ts_support(obj)
    return {"support": names(supp)}, None


def cmd_nf(args):
    obj = _set_expr(args.expr)
    if isinstance(obj, PQBasis):
        obj = pq_to_kss(obj)
    nf = kss_normal_form(obj) if isinstance(obj, KSubsetSet) else ts_normal_form(obj)
    return obj_to_json(nf), None


def cmd_count(args):
    obj = compile_text(args.expr)
    return {"window": args.window, "count": _count(obj, args.window)}, None


def cmd_equal(args):
    x, y = compile_text(args.left), compile_text(args.right)
    if isinstance(x, PQBasis):
        x = pq_to_kss(x)
    if isinstance(y, PQBasis):
        y = pq_to_kss(y)
    if type(x) is not type(y):
        raise UsageError(f"cannot compare a {type(x).__name__} with a {type(y).__name__}")
    if isinstance(x, KSubsetSet):
        eq = x.k == y.k and kss_equal(x, y)
    elif isinstance(x, TupleSet):
        eq = x.arity == y.arity and ts_equal(x, y)
    else:
        eq = rel_equal(x, y)
    return {"equal": eq}, None


def cmd_rkl(args):
    R = _relation(args.rel)
    v = rkl_decide(R)
    w = _witness_json(v)
    return {"side": w["side"], "x": w["x"], "fiber_card": w["fiber_card"]}, w


def cmd_refute_family(args):
    R = _relation(args.rel)
    cert = refute_disjoint_family(R, args.k)
    problems = cert.verify(R)
    result = {"refuted": not problems, "case": cert.case, "problems": problems}
    if problems:
        raise Violation("certificate failed verification: " + "; ".join(problems), result, cert.to_json())
    return result, cert.to_json()


def cmd_map_check(args):
    f = load_map(_read(args.file))
    rep = check_theorem_instance(f)
    out = rep.to_json()
    result = {k: out[k] for k in ("status", "vacuous")}
    result["surjective"] = rep.surjective.holds
    result["injective"] = rep.injective.holds
    if rep.status != "PASS":
        raise Violation("surjective map that is not injective or has a non-periodic point", result, out)
    return result, out


def cmd_map_orbit(args):
    f = load_map(_read(args.file))
    s = parse_atom_set(args.set)
    if len(s) > f.rank:
        raise UsageError(f"{args.set} has more than rank={f.rank} elements")
    pre, period = map_trajectory(f, s)
    path = [s]
    for _ in range(pre + period):
        path.append(map_eval(f, path[-1]))
    return {"start": names(s), "preperiod": pre, "period": period, "path": [names(x) for x in path]}, None


def cmd_oracle_classify(args):
    obj = compile_text(args.expr)
    g = oracle.growth_classify(obj, _windows(args.window))
    card = _card(obj)
    result = {**g.to_json(), "windows": _windows(args.window), "symbolic": card.to_json(), "agrees": g.agrees_with(card)}
    if not result["agrees"]:
        raise Violation("oracle and symbolic classification disagree", result)
    return result, None


def cmd_oracle_count(args):
    obj = compile_text(args.expr)
    w = oracle.default_window(obj, args.window)
    n = oracle.oracle_count(obj, w)
    sym = _count(obj, args.window)
    result = {"window": args.window, "count": n, "symbolic": sym, "agrees": n == sym}
    if n != sym:
        raise Violation("oracle and symbolic counts disagree", result)
    return result, None


def cmd_oracle_rkl(args):
    R = _relation(args.rel)
    v = rkl_decide(R)
    left = isinstance(v, LeftWitness)
    x = v.p if left else v.q
    counts = [
        oracle.fiber_count(R, x, left, oracle.Window.for_atoms(N, R.context | x))
        for N in _windows(args.window)
    ]
    growing = all(a < b for a, b in zip(counts, counts[1:]))
    result = {"side": "left" if left else "right", "x": names(x), "windows": _windows(args.window),
              "fiber_counts": counts, "growing": growing}
    if not growing:
        raise Violation("oracle fiber counts do not grow", result, _witness_json(v))
    return result, _witness_json(v)


def cmd_wdstar(args):
    table = parse_table(_read(args.file))
    unions = wdstar_transform(table)
    return {"unions": [{"n": n, "set": names(a)} for n, a in enumerate(unions)]}, None


def cmd_inexhaustible(args):
    ok, d, count = inexhaustible_finite_check(args.n)
    result = {"n": args.n, "inexhaustible": ok, "blocking_decompositions": count}
    cert = {"B": sorted(d.B), "C": sorted(d.C)} if d is not None else None
    if ok:
        raise Violation(f"{args.n}-element set reported inexhaustible", result)
    return result, cert


def cmd_verify_facts(args):
    t0 = time.perf_counter()
    results = facts.run_all(seed=args.seed, cases=args.cases)
    total = time.perf_counter() - t0
    report = []
    for ident, r in results:
        entry = {"id": ident, **r.to_json()}
        if not args.timings:
            entry.pop("seconds")
        report.append(entry)
    result = {"seed": args.seed, "passed": all(r.passed for _, r in results), "facts": report}
    if args.timings:
        result["seconds"] = round(total, 3)
    if not args.json:
        lines = []
        for ident, r in results:
            status = "PASS" if r.passed else "FAIL"
            lines.append(f"{status} [{ident:>2}] {r.key:<22} {r.cases:>5} cases  {r.seconds:7.2f}s  {r.title}")
            for msg in r.failures[: facts.MAX_REPORTED]:
                lines.append(f"       {msg}")
        lines.append(f"{'all facts verified' if result['passed'] else 'FAILURES'} in {total:.1f}s (seed {args.seed})")
        result["_text"] = "\n".join(lines)
    if not result["passed"]:
        raise Violation("some facts failed", result)
    return result, None


# -- argument parsing ------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="print the full JSON envelope")

    def window(p):
        p.add_argument("--window", type=_positive, required=True, metavar="N", help="window size")

    ap = argparse.ArgumentParser(prog="atomset", description="Definable sets over an infinite set of atoms.")
    sub = ap.add_subparsers(dest="command", required=True, metavar="COMMAND")

    p = sub.add_parser("classify", parents=[common], help="empty / finite(n) / infinite")
    p.add_argument("expr")
    p.set_defaults(fn=cmd_classify)

    p = sub.add_parser("support", parents=[common], help="least support of a set")
    p.add_argument("expr")
    p.set_defaults(fn=cmd_support)

    p = sub.add_parser("nf", parents=[common], help="normal form over the least support")
    p.add_argument("expr")
    p.set_defaults(fn=cmd_nf)

    p = sub.add_parser("count", parents=[common], help="members inside a window of N atoms")
    window(p)
    p.add_argument("expr")
    p.set_defaults(fn=cmd_count)

    p = sub.add_parser("equal", parents=[common], help="extensional equality")
    p.add_argument("left")
    p.add_argument("right")
    p.set_defaults(fn=cmd_equal)

    p = sub.add_parser("rkl", parents=[common], help="infinite fiber of a disjoint relation")
    p.add_argument("rel")
    p.set_defaults(fn=cmd_rkl)

    p = sub.add_parser("refute-family", parents=[common], help="common element of two basis sets in a family")
    p.add_argument("rel")
    p.add_argument("--k", type=_positive, required=True)
    p.set_defaults(fn=cmd_refute_family)

    p = sub.add_parser("map", help="definable maps on finite sets")
    msub = p.add_subparsers(dest="map_command", required=True, metavar="SUBCOMMAND")
    q = msub.add_parser("check", parents=[common], help="surjective implies injective")
    q.add_argument("file")
    q.set_defaults(fn=cmd_map_check)
    q = msub.add_parser("orbit", parents=[common], help="trajectory of a set under iteration")
    q.add_argument("file")
    q.add_argument("set")
    q.set_defaults(fn=cmd_map_orbit)

    p = sub.add_parser("oracle", help="brute-force checks on finite windows")
    osub = p.add_subparsers(dest="oracle_command", required=True, metavar="SUBCOMMAND")
    q = osub.add_parser("classify", parents=[common], help="growth across windows N, N+2, N+4")
    window(q)
    q.add_argument("expr")
    q.set_defaults(fn=cmd_oracle_classify)
    q = osub.add_parser("count", parents=[common], help="brute-force count in a window")
    window(q)
    q.add_argument("expr")
    q.set_defaults(fn=cmd_oracle_count)
    q = osub.add_parser("rkl", parents=[common], help="fiber counts across windows N, N+2, N+4")
    window(q)
    q.add_argument("rel")
    q.set_defaults(fn=cmd_oracle_rkl)

    p = sub.add_parser("wdstar-transform", parents=[common], help="union the fibers of a finite-to-one table")
    p.add_argument("file")
    p.set_defaults(fn=cmd_wdstar)

    p = sub.add_parser("inexhaustible-check", parents=[common], help="search decompositions of {1..n}")
    p.add_argument("n", type=_at_least_two)
    p.set_defaults(fn=cmd_inexhaustible)

    p = sub.add_parser("verify-facts", parents=[common], help="run the full reproducibility suite")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--cases", type=_positive, default=None, help="override every randomized case count")
    p.add_argument("--timings", action="store_true", help="include run times in the JSON report")
    p.set_defaults(fn=cmd_verify_facts)
    return ap


def _positive(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not an integer") from None
    if n <= 0:
        raise argparse.ArgumentTypeError(f"{n} is not positive")
    return n


def _at_least_two(text: str) -> int:
    n = _positive(text)
    if n < 2:
        raise argparse.ArgumentTypeError("inexhaustibility needs n >= 2")
    return n


def _input_of(args) -> dict:
    skip = {"fn", "json", "command", "map_command", "oracle_command"}
    return {k: v for k, v in vars(args).items() if k not in skip}


def _command_name(args) -> str:
    parts = [args.command, getattr(args, "map_command", None), getattr(args, "oracle_command", None)]
    return " ".join(p for p in parts if p)


def _emit(args, result, certificate, error=None):
    text = result.pop("_text", None) if isinstance(result, dict) else None
    if args.json:
        env = {"command": _command_name(args), "input": _input_of(args), "result": result}
        if certificate is not None:
            env["certificate"] = certificate
        if error is not None:
            env["error"] = error
        print(json.dumps(env, sort_keys=False))
    elif text is not None:
        print(text)
    elif result is not None:
        print(json.dumps(result))
    if error is not None and not args.json:
        print(f"error: {error['message']}", file=sys.stderr)


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return 2 if e.code else 0
    try:
        result, certificate = args.fn(args)
    except Violation as e:
        _emit(args, e.result, e.certificate, {"type": "violation", "message": str(e)})
        return 1
    except ParseError as e:
        _emit(args, None, None, {"type": "parse", "message": str(e), "line": e.line, "column": e.column})
        return 2
    except (UsageError, WindowTooSmall) as e:
        _emit(args, None, None, {"type": "usage", "message": str(e)})
        return 2
    except PreconditionError as e:
        _emit(args, None, None, {"type": "precondition", "message": str(e)})
        return 1
    _emit(args, result, certificate)
    return 0


if __name__ == "__main__":
    sys.exit(main())
