"""Exhaustive verification sweeps over small Coxeter systems."""

from __future__ import annotations

import itertools
import random
from collections import Counter
from dataclasses import dataclass, field
from typing import Callable, Iterable

from .coxeter import INFINITY, CoxeterMatrix, new_system
from .engine import R_via_matchings, StepCase, apply_step, verify_calculating
from .klpoly import X_MODES, ParabolicKL, fast_path_R
from .matchings import _h_condition, brute_force_special_matchings, enumerate_special_matchings
from .poly import Q
from .poset import IntervalTooLarge, build_interval

LABELS = (2, 3, 4, 5, INFINITY)
CHECKS = ("calculating", "pipeline", "deodhar", "fast-path")


def coxeter_matrices(max_rank: int = 3, labels: Iterable = LABELS) -> list[CoxeterMatrix]:
    """Coxeter matrices of rank <= max_rank with the given labels, one per relabelling class."""
    labels = list(labels)
    out = []
    for n in range(1, max_rank + 1):
        pairs = list(itertools.combinations(range(n), 2))
        seen = set()
        for choice in itertools.product(range(len(labels)), repeat=len(pairs)):
            table = dict(zip(pairs, choice))
            key = min(
                tuple(table[tuple(sorted((p[a], p[b])))] for a, b in pairs)
                for p in itertools.permutations(range(n))
            )
            if key in seen:
                continue
            seen.add(key)
            m = [[1] * n for _ in range(n)]
            for (a, b), c in table.items():
                m[a][b] = m[b][a] = labels[c]
            out.append(CoxeterMatrix(m))
    return out


def faulty_step(case: StepCase, x: str, r_u, r_mu):
    """apply_step with the unflagged branch deliberately wrong, for harness self-tests."""
    if case is StepCase.UP_NOT_IN_WH:
        return (Q - 1) * r_u
    return apply_step(case, x, r_u, r_mu)


@dataclass
class SweepConfig:
    max_rank: int = 3
    labels: tuple = LABELS
    max_length: int = 7
    cap: int = 2000
    modes: tuple = X_MODES
    checks: tuple = CHECKS
    p_limit: int = 120  # largest [e, w]^H for which P-columns are computed
    matrices: list | None = None
    inject_fault: bool = False
    corrected_d0: bool = False
    relabel_seed: int | None = 0  # None disables the relabelled pipeline run


@dataclass
class SweepReport:
    counts: Counter = field(default_factory=Counter)
    failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def fail(self, check: str, **info):
        self.failures.append({"check": check, **info})

    def summary(self) -> list[str]:
        lines = [f"{k}: {v}" for k, v in sorted(self.counts.items())]
        lines.append(f"failures: {len(self.failures)}")
        return lines


def run_sweep(cfg: SweepConfig, progress: Callable[[str], None] | None = None) -> SweepReport:
    rep = SweepReport()
    step = faulty_step if cfg.inject_fault else apply_step
    rng = random.Random(cfg.relabel_seed) if cfg.relabel_seed is not None else None
    matrices = cfg.matrices if cfg.matrices is not None else coxeter_matrices(cfg.max_rank, cfg.labels)
    for B in matrices:
        cs = new_system(B)
        name = B.to_json()["labels"]
        if progress:
            progress(f"system {name}")
        rep.counts["systems"] += 1
        gens = list(cs.generators)
        subsets = [frozenset(c) for k in range(len(gens) + 1) for c in itertools.combinations(gens, k)]
        ctxs = {(H, x): ParabolicKL(cs, H, x) for H in subsets for x in cfg.modes}
        for w in cs.elements_up_to(cfg.max_length)[1:]:
            try:
                interval = build_interval(cs, w, (), cap=cfg.cap)
            except IntervalTooLarge:
                rep.counts["skipped (cap)"] += 1
                continue
            specials = enumerate_special_matchings(interval)
            for H in subsets:
                if w.right_descents & H:
                    continue
                I = interval.with_flags(H)
                hs = [M for M in specials if _h_condition(I, M)]
                rep.counts["instances (w, H)"] += 1
                for x in cfg.modes:
                    ctx = ctxs[H, x]
                    if "calculating" in cfg.checks:
                        for M in hs:
                            rep.counts["calculating checks"] += 1
                            if not _calculates(ctx, I, M, step):
                                rep.fail("calculating", system=name, w=repr(w), H=sorted(H), x=x, partner=list(M.partner))
                    if "pipeline" in cfg.checks:
                        _pipeline(rep, ctx, I, x, name, rng)
                    if "deodhar" in cfg.checks and sum(I.h) <= cfg.p_limit:
                        _deodhar(rep, ctx, I, name)
                    if "fast-path" in cfg.checks:
                        _fast_paths(rep, ctx, I, name, cfg.corrected_d0)
    return rep


def _calculates(ctx, I, M, step) -> bool:
    return verify_calculating(ctx, I, M, step=step)


def _pipeline(rep, ctx, I, x, name, rng=None):
    """Matching-only values against the word recursion, optionally on a shuffled copy too."""
    abstract = I.to_abstract()
    table = R_via_matchings(abstract, x, "first")
    w = I.top_element
    for u, poly in table.entries.items():
        rep.counts["pipeline entries"] += 1
        if poly != ctx.R(I.elements[u], w):
            rep.fail("pipeline", system=name, w=repr(w), H=sorted(I.H), x=x, u=repr(I.elements[u]))
    if rng is None:
        return
    perm = list(range(I.n))
    rng.shuffle(perm)
    shuffled = R_via_matchings(abstract.relabel(perm), x, "first")
    rep.counts["relabelled tables"] += 1
    if any(shuffled[perm[u]] != poly for u, poly in table.entries.items()):
        rep.fail("relabel", system=name, w=repr(w), H=sorted(I.H), x=x, perm=perm)


def _deodhar(rep, ctx, I, name):
    w = I.top_element
    for u in ctx.P_column(w):
        rep.counts["P checks"] += 1
        if not (ctx.inversion_identity_holds(u, w) and ctx.degree_bound_holds(u, w)):
            rep.fail("deodhar", system=name, w=repr(w), H=sorted(I.H), x=ctx.x, u=repr(u))


def _fast_paths(rep, ctx, I, name, corrected_d0=False):
    cs = I.system
    w = I.top_element
    pairs = list(itertools.combinations(cs.generators, 2))
    for v in range(I.n):
        if not I.h[v]:
            continue
        u = I.elements[v]
        for s, t in pairs:
            got = fast_path_R(ctx, u, w, s, t, corrected_d0)
            if got is None:
                continue
            label, value = got
            rep.counts[f"fast-path {label}"] += 1
            if value != ctx.R(u, w):
                rep.fail("fast-path", system=name, w=repr(w), u=repr(u), H=sorted(I.H), x=ctx.x, pair=[s, t], case=label)


def enumeration_oracle_sweep(max_vertices: int = 24, max_length: int = 6, matrices=None) -> SweepReport:
    """Backtracking enumeration versus brute-force filtering on every interval with few vertices."""
    rep = SweepReport()
    if matrices is None:
        matrices = coxeter_matrices(3, LABELS)
    for B in matrices:
        cs = new_system(B)
        for w in cs.elements_up_to(max_length):
            try:
                I = build_interval(cs, w, (), cap=max_vertices)
            except IntervalTooLarge:
                continue
            rep.counts["intervals"] += 1
            fast = sorted(M.partner for M in enumerate_special_matchings(I))
            slow = [M.partner for M in brute_force_special_matchings(I)]
            if fast != slow:
                rep.fail("enumeration", system=B.to_json()["labels"], w=repr(w))
    return rep


__all__ = [
    "CHECKS",
    "LABELS",
    "SweepConfig",
    "SweepReport",
    "coxeter_matrices",
    "enumeration_oracle_sweep",
    "faulty_step",
    "run_sweep",
]
