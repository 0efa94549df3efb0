"""Command-line interface: ``klmatch compute | enumerate | verify | export``.

Exit codes: 0 all checks passed, 1 mathematical disagreement, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .coxeter import CoxeterMatrix, new_system
from .engine import POLICIES, MatchingDisagreement, NoHSpecialMatching, R_via_matchings
from .export import to_dot
from .klpoly import X_MODES, ParabolicKL
from .matchings import Matching, enumerate_H_special, enumerate_special_matchings, is_H_special
from .poset import DEFAULT_CAP, AbstractPoset, IntervalTooLarge, build_interval
from .sweep import SweepConfig, run_sweep
from .systems import check_system, find_system_for_matching, system_report_json

EXIT_OK, EXIT_DISAGREE, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _read_json(path: str):
    try:
        return json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read {path}: {exc}") from exc


def _write_json(path: str | None, data) -> None:
    if path:
        Path(path).write_text(json.dumps(data, indent=2) + "\n")


def _parse_gens(text: str, rank: int) -> frozenset[int]:
    try:
        gens = [int(t) - 1 for t in text.replace(",", " ").split()]
    except ValueError as exc:
        raise UsageError(f"bad generator list {text!r}") from exc
    for g in gens:
        if not 0 <= g < rank:
            raise UsageError(f"generator {g + 1} out of range 1..{rank}")
    return frozenset(gens)


def _modes(x: str) -> tuple[str, ...]:
    return X_MODES if x == "both" else (x,)


def _load_group_job(args):
    """(system, interval, H) from --matrix, --w and --h."""
    try:
        matrix = CoxeterMatrix.from_json(_read_json(args.matrix))
    except (KeyError, TypeError, ValueError) as exc:
        raise UsageError(f"invalid Coxeter matrix: {exc}") from exc
    cs = new_system(matrix)
    H = _parse_gens(args.h, cs.rank)
    try:
        w = cs.parse_word(args.w or "")
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    if w.right_descents & H:
        raise UsageError(f"w = {w} is not a minimal coset representative for the given H")
    try:
        interval = build_interval(cs, w, H, cap=args.cap)
    except IntervalTooLarge as exc:
        raise UsageError(str(exc)) from exc
    return cs, interval, H


def _load_poset(args) -> AbstractPoset:
    try:
        return AbstractPoset.from_json(_read_json(args.poset))
    except (KeyError, TypeError, ValueError) as exc:
        raise UsageError(f"invalid poset: {exc}") from exc


def _label(poset, v: int) -> str:
    return repr(poset.elements[v]) if hasattr(poset, "elements") else str(v)


def cmd_compute(args) -> int:
    out = {"results": []}
    agree = True
    if args.poset:
        P = _load_poset(args)
        us = [int(args.u)] if args.u else [v for v in range(P.n) if P.h[v]]
        for x in _modes(args.x):
            table = R_via_matchings(P, x, args.policy)
            for u in us:
                if not (0 <= u < P.n and P.h[u]):
                    raise UsageError(f"vertex {u} is not a flagged vertex of the poset")
                poly = table[u]
                print(f"R[x={x}]({u}, {P.top}) = {poly}   [poset-only, {table.realizability}]")
                out["results"].append({"x": x, "u": u, "poly": poly.to_json(), "source": "poset-only"})
        _write_json(args.json, out)
        return EXIT_OK

    cs, interval, H = _load_group_job(args)
    w = interval.top_element
    print(f"w = {w} (length {w.length}), H = {sorted(h + 1 for h in H)}, |[e,w]| = {interval.n}")
    if args.u:
        try:
            u_el = cs.parse_word(args.u)
        except ValueError as exc:
            raise UsageError(str(exc)) from exc
        if u_el.right_descents & H:
            raise UsageError(f"u = {u_el} is not a minimal coset representative for the given H")
        us = [u_el]
    else:
        us = [interval.elements[v] for v in range(interval.n) if interval.h[v]]
    abstract = interval.to_abstract()
    for x in _modes(args.x):
        ctx = ParabolicKL(cs, H, x)
        table = R_via_matchings(interval if args.policy == "prefer-left-mult" else abstract, x, args.policy)
        for u in us:
            word = ctx.R(u, w)
            poset_val = table[interval.index[u]] if u in interval.index else word
            same = word == poset_val
            agree &= same
            line = f"R[x={x}]({u}, {w}) = {word}"
            if not same:
                line += f"   MISMATCH: matchings give {poset_val}"
            print(line)
            rec = {"x": x, "u": repr(u), "poly": word.to_json(), "matching_poly": poset_val.to_json()}
            if args.p:
                p = ctx.P(u, w)
                print(f"P[x={x}]({u}, {w}) = {p}")
                rec["P"] = p.to_json()
            out["results"].append(rec)
    out["agree"] = agree
    _write_json(args.json, out)
    if not agree:
        print("word-based and matching-based values disagree", file=sys.stderr)
        return EXIT_DISAGREE
    return EXIT_OK


def cmd_enumerate(args) -> int:
    if args.poset:
        P = _load_poset(args)
        special = enumerate_special_matchings(P)
        hs = [M for M in special if is_H_special(P, M)]
        interval = None
    else:
        cs, interval, H = _load_group_job(args)
        P = interval
        special = enumerate_special_matchings(P)
        hs = enumerate_H_special(P)
    print(f"special matchings: {len(special)}")
    print(f"H-special matchings: {len(hs)}")
    records = []
    for k, M in enumerate(special):
        flag = "H-special" if M in hs else "special"
        pairs = " ".join(f"{_label(P, v)}<->{_label(P, M(v))}" for v in range(P.n) if P.rank[v] < P.rank[M(v)])
        print(f"[{k}] {flag}: {pairs}")
        rec = {"partner": list(M.partner), "h_special": M in hs}
        if args.systems and interval is not None:
            found = find_system_for_matching(interval, M)
            if found is None:
                print("    no right or left system found", file=sys.stderr)
                rec["system"] = None
                records.append(rec)
                _write_json(args.json, {"matchings": records})
                return EXIT_DISAGREE
            report = check_system(interval.system, found, interval)
            rec["system"] = system_report_json(found, report)
            print(f"    {found.kind} system: J={sorted(j + 1 for j in found.J)}, s={found.s + 1}, t={found.t + 1}")
        records.append(rec)
    _write_json(args.json, {"matchings": records})
    return EXIT_OK


def cmd_verify(args) -> int:
    cfg = SweepConfig(
        max_rank=args.max_rank,
        max_length=args.max_length,
        cap=args.cap,
        inject_fault=args.inject_fault,
        corrected_d0=args.corrected_d0,
        relabel_seed=args.seed,
    )

    def progress(msg):
        if not args.quiet:
            print(msg, file=sys.stderr, flush=True)

    rep = run_sweep(cfg, progress)
    for line in rep.summary():
        print(line)
    _write_json(args.json, {"counts": dict(rep.counts), "failures": rep.failures})
    print("PASS" if rep.ok else "FAIL")
    return EXIT_OK if rep.ok else EXIT_DISAGREE


def cmd_export(args) -> int:
    if args.poset:
        P = _load_poset(args)
        matchings = enumerate_H_special(P)
    else:
        _, P, _ = _load_group_job(args)
        matchings = enumerate_H_special(P)
    M: Matching | None = None
    if args.matching is not None:
        if not 0 <= args.matching < len(matchings):
            raise UsageError(f"matching index out of range; there are {len(matchings)} H-special matchings")
        M = matchings[args.matching]
    dot = to_dot(P, M)
    if args.dot:
        Path(args.dot).write_text(dot)
    else:
        sys.stdout.write(dot)
    data = P.to_json()
    if M is not None:
        data["matching"] = M.to_json()
    _write_json(args.json, data)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="klmatch", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    def inputs(p, need_group=False):
        src = p.add_mutually_exclusive_group(required=True)
        src.add_argument("--matrix", help="Coxeter matrix JSON file")
        if not need_group:
            src.add_argument("--poset", help="flagged abstract poset JSON file")
        p.add_argument("--h", default="", help='generators of H, 1-based, e.g. "2"')
        p.add_argument("--w", default="", help='word for w, 1-based, e.g. "1 2 3 1"')
        p.add_argument("--cap", type=int, default=DEFAULT_CAP, help="maximum interval size")
        p.add_argument("--json", help="write a JSON report here")

    p = sub.add_parser("compute", help="parabolic R-polynomials by both pipelines")
    inputs(p)
    p.add_argument("--u", default="", help="word for u (or vertex index with --poset); default all")
    p.add_argument("--x", choices=X_MODES + ("both",), default="both")
    p.add_argument("--policy", choices=POLICIES, default="first")
    p.add_argument("--p", action="store_true", help="also print parabolic P-polynomials")
    p.set_defaults(func=cmd_compute)

    p = sub.add_parser("enumerate", help="list special and H-special matchings")
    inputs(p)
    p.add_argument("--systems", action="store_true", help="find a right or left system for each matching")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("verify", help="run the verification sweep")
    p.add_argument("--max-rank", type=int, default=3)
    p.add_argument("--max-length", type=int, default=7)
    p.add_argument("--cap", type=int, default=2000, help="skip intervals larger than this")
    p.add_argument("--seed", type=int, default=0, help="seed for random vertex relabelling")
    p.add_argument("--inject-fault", action="store_true", help="corrupt one recursion branch (harness self-test)")
    p.add_argument("--corrected-d0", action="store_true", help="use the corrected chain D0 branch in fast paths")
    p.add_argument("--quiet", action="store_true")
    p.add_argument("--json", help="write a JSON report here")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("export", help="DOT and JSON of an interval with an optional matching")
    inputs(p)
    p.add_argument("--matching", type=int, help="index into the H-special matchings to overlay")
    p.add_argument("--dot", help="write DOT here (default stdout)")
    p.set_defaults(func=cmd_export)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except MatchingDisagreement as exc:
        print(f"disagreement: {exc}", file=sys.stderr)
        print(json.dumps(exc.dump), file=sys.stderr)
        return EXIT_DISAGREE
    except NoHSpecialMatching as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DISAGREE


if __name__ == "__main__":
    sys.exit(main())
