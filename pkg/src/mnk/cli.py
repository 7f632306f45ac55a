"""Command line front end.

    mnk present 5 3
    mnk betti 3 1 --json
    mnk lefschetz 3 2 -1
    mnk count-lifts 3 1 2
    mnk verify P1_4 5 3 --timeout-sec 600

Exit codes: 0 verified or computed, 1 refuted or undecided, 2 usage error.
"""
from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction

from . import coho, endo, zerocheck
from .polykernel import UsageError

DEFAULT_CACHE = ".mnk-cache"
THEOREMS = ("T1_2", "T1_3")


def _num(x):
    x = Fraction(x)
    return x.numerator if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _parse_m(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"m must be a rational number, got {text!r}")


class Outcome:
    def __init__(self, command, params, result, ok=True, cache=None, lines=()):
        self.command = command
        self.params = params
        self.result = result
        self.ok = ok
        self.cache = cache or {}
        self.lines = list(lines)

    def to_json(self, elapsed=None):
        out = {
            "command": self.command,
            "params": self.params,
            "result": self.result,
            "status": "ok" if self.ok else "failed",
            "cache_hits": self.cache,
        }
        if elapsed is not None:
            out["timing_sec"] = round(elapsed, 3)
        return out


def _check_n(args, n, k=None):
    if n > args.max_n:
        raise UsageError(f"n={n} exceeds --max-n={args.max_n}")
    if k is not None and not 1 <= k < n:
        raise UsageError(f"need 1 <= k < n, got n={n}, k={k}")


def _partial(args, n, k):
    _check_n(args, n, k)
    return coho.build_partial(n, k, cache_dir=args.cache_dir)


def cmd_present(args) -> Outcome:
    pres = _partial(args, args.n, args.k)
    ring = pres.ring
    gens = [{"name": x, "degree": w} for x, w in zip(ring.names, ring.weights)]
    rels = []
    for i, r in enumerate(pres.generators, start=1):
        label = f"R{i}" if i < len(pres.generators) else "ce"
        rels.append({"label": label, "degree": r.degree(), "relation": str(r)})
    lines = ["generators: " + ", ".join(f"{g['name']} (deg {g['degree']})" for g in gens)]
    lines += [f"{r['label']:>3}  deg {r['degree']:>2}:  {r['relation']} = 0" for r in rels]
    result = {"generators": gens, "relations": rels, "N": pres.N}
    return Outcome("present", {"n": args.n, "k": args.k}, result, True, {"partial": pres.cache_hit}, lines)


def cmd_betti(args) -> Outcome:
    pres = _partial(args, args.n, args.k)
    d = coho.betti_from(pres)
    oracle = coho.hilbert_oracle(args.n, args.k)
    chi = sum(d)
    ok = d == oracle and chi == coho.weyl_index(args.n, args.k)
    result = {"betti": d, "euler_characteristic": chi, "N": pres.N, "oracle_agrees": d == oracle,
              "weyl_index": coho.weyl_index(args.n, args.k)}
    lines = [f"betti: {d}", f"chi = {chi}, N = {pres.N}", f"oracle agrees: {d == oracle}"]
    return Outcome("betti", {"n": args.n, "k": args.k}, result, ok, {"partial": pres.cache_hit}, lines)


def cmd_lefschetz(args) -> Outcome:
    pres = _partial(args, args.n, args.k)
    m = _parse_m(args.m)
    rep = endo.lefschetz_forms(args.n, args.k, m, coho.betti_from(pres))
    result = {"lefschetz": _num(rep.direct), "direct": _num(rep.direct), "split": _num(rep.split),
              "remark": None if rep.remark is None else _num(rep.remark), "N": rep.N, "betti": list(rep.betti)}
    lines = [f"L = {_num(rep.direct)}  (N = {rep.N}, split form {_num(rep.split)})"]
    params = {"n": args.n, "k": args.k, "m": _num(m)}
    return Outcome("lefschetz", params, result, True, {"partial": pres.cache_hit}, lines)


def _lift_check(args, n, k, m):
    _check_n(args, n, k)
    flag = coho.build_flag(n, cache_dir=args.cache_dir)
    pres = coho.build_partial(n, k, cache_dir=args.cache_dir)
    count = endo.count_lifts(n, k, m)
    targets = {s: endo.classified_endo(n, k, m, s, pres) for s in (1, -1)}
    bad = []
    for L in endo.enumerate_classified_lifts(n, k, m):
        g = endo.gram_report(L.H)
        fine = (endo.lift_is_endomorphism(L.H, n, flag) and g.is_scalar and g.D == m * m
                and endo.lift_restricts_to(L.H, targets[L.sign], flag))
        if not fine:
            bad.append([[_num(x) for x in row] for row in L.H])
    ok = (not bad and count.total == count.expected and count.per_sign[1] == count.per_sign[-1])
    result = {"total": count.total, "expected": count.expected,
              "per_sign": {"+1": count.per_sign[1], "-1": count.per_sign[-1]},
              "all_lifts_valid": not bad, "invalid": bad}
    cache = {"flag": flag.cache_hit, "partial": pres.cache_hit}
    return result, ok, cache


def cmd_count_lifts(args) -> Outcome:
    m = _parse_m(args.m)
    if m == 0:
        raise UsageError("m must be nonzero")
    result, ok, cache = _lift_check(args, args.n, args.k, m)
    lines = [f"lifts: {result['total']} (expected {result['expected']}), "
             f"per sign +1: {result['per_sign']['+1']}, -1: {result['per_sign']['-1']}",
             f"all valid: {result['all_lifts_valid']}"]
    return Outcome("count-lifts", {"n": args.n, "k": args.k, "m": _num(m)}, result, ok, cache, lines)


def cmd_verify(args) -> Outcome:
    target = args.target
    n, k = args.n, args.k
    params = {"target": target, "n": n, "k": k}
    if target in THEOREMS:
        if args.m is None:
            raise UsageError(f"{target} needs m")
        m = _parse_m(args.m)
        if m == 0:
            raise UsageError("m must be nonzero")
        params["m"] = _num(m)
        if target == "T1_3":
            result, ok, cache = _lift_check(args, n, k, m)
        else:
            pres = _partial(args, n, k)
            signs = {("+1" if s == 1 else "-1"): endo.is_ring_endomorphism(endo.classified_endo(n, k, m, s, pres))
                     for s in (1, -1)}
            result, ok, cache = {"is_ring_endomorphism": signs}, all(signs.values()), {"partial": pres.cache_hit}
        return Outcome("verify", params, result, ok, cache, [f"{target}: {'verified' if ok else 'REFUTED'}"])
    if target not in zerocheck.PROPOSITIONS:
        raise UsageError(f"unknown target {target!r}; choose from {THEOREMS + zerocheck.PROPOSITIONS}")
    if args.m is not None:
        raise UsageError(f"{target} takes no m")
    _check_n(args, n, k)
    cache = {"partial": coho.build_partial(n, k, cache_dir=args.cache_dir).cache_hit}
    if target in ("P1_5", "P6_4", "P6_5"):
        cache["flag"] = coho.build_flag(n, cache_dir=args.cache_dir).cache_hit
    rep = zerocheck.verify_proposition(target, n, k, timeout=args.timeout_sec,
                                       complex_budget=args.complex_budget)
    result = rep.to_json()
    lines = [f"{target} at n={n}, k={k}: {rep.outcome}",
             f"over C: {rep.complex_verdict}, over R: {rep.real_verdict}, via {rep.stage}",
             f"{rep.unknown_count} unknowns, {rep.constraint_count} equations"]
    lines += [f"  real step: {s}" for s in rep.real_constraints]
    lines += [f"  note: {s}" for s in rep.notes]
    return Outcome("verify", params, result, rep.forced_zero, cache, lines)


def _common(top: bool) -> argparse.ArgumentParser:
    # flags are accepted before or after the subcommand; only the top level sets defaults
    common = argparse.ArgumentParser(add_help=False)
    d = (lambda v: v) if top else (lambda v: argparse.SUPPRESS)
    common.add_argument("--json", action="store_true", default=d(False), help="emit a JSON report")
    common.add_argument("--cache-dir", default=d(DEFAULT_CACHE), help="Groebner basis cache directory")
    common.add_argument("--no-cache", action="store_true", default=d(False), help="do not read or write the cache")
    common.add_argument("--max-n", type=int, default=d(6), help="refuse n above this")
    common.add_argument("--timeout-sec", type=float, default=d(600.0), help="time limit for zero checks")
    common.add_argument("--complex-budget", type=float, default=d(10.0),
                        help="seconds for per-unknown checks over C once a real verdict is in")
    common.add_argument("--timing", action="store_true", default=d(False), help="include wall time in the report")
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _common(False)
    p = argparse.ArgumentParser(prog="mnk", description=__doc__.splitlines()[0], parents=[_common(True)])
    sub = p.add_subparsers(dest="command", required=True)
    for name, fn, extra in [("present", cmd_present, ()), ("betti", cmd_betti, ()),
                            ("lefschetz", cmd_lefschetz, ("m",)), ("count-lifts", cmd_count_lifts, ("m",))]:
        sp = sub.add_parser(name, parents=[common])
        sp.add_argument("n", type=int)
        sp.add_argument("k", type=int)
        for e in extra:
            sp.add_argument(e, help="rational, e.g. 2, -1 or 1/2")
        sp.set_defaults(func=fn)
    sp = sub.add_parser("verify", parents=[common], help="check a theorem or proposition instance")
    sp.add_argument("target", help="T1_2, T1_3, P1_4, P6_2, P1_5, P6_4, P6_5, EX7_1 or EX7_2")
    sp.add_argument("n", type=int)
    sp.add_argument("k", type=int)
    sp.add_argument("m", nargs="?", default=None)
    sp.set_defaults(func=cmd_verify)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.no_cache:
        args.cache_dir = None
    t0 = time.monotonic()
    try:
        out = args.func(args)
    except UsageError as exc:
        print(f"mnk: error: {exc}", file=sys.stderr)
        return 2
    elapsed = time.monotonic() - t0 if args.timing else None
    if args.json:
        print(json.dumps(out.to_json(elapsed), sort_keys=True, indent=2))
    else:
        for line in out.lines:
            print(line)
        if elapsed is not None:
            print(f"({elapsed:.2f}s)")
    return 0 if out.ok else 1


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
