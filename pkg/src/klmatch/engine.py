"""Parabolic R-polynomials computed from a flagged poset and its H-special matchings alone.

Given a graded poset with unique minimum and maximum in which each vertex
carries a flag (membership in W^H), the table {R_{u,w}} for flagged u is
obtained recursively: pick an H-special matching M of the current top w and
use, for flagged u <= w,

    R_{u,w} = R_{M(u),M(w)}                         if M(u) is covered by u
            = (q-1) R_{u,M(w)} + q R_{M(u),M(w)}    if M(u) covers u and is flagged
            = (q-1-x) R_{u,M(w)}                    if M(u) covers u and is unflagged

No group data is used unless the "prefer-left-mult" policy is chosen.
Memo tables are per call; the engine is single-threaded.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from enum import Enum

from .klpoly import ParabolicKL, check_mode, unflagged_factor
from .matchings import Matching, enumerate_H_special
from .poly import ONE, Q, ZERO, PolyZ
from .poset import AbstractPoset, BruhatInterval, GradedPoset, find_isomorphism

POLICIES = ("first", "all-agree", "prefer-left-mult")


class StepCase(str, Enum):
    DOWN = "down"
    UP_IN_WH = "up-in-WH"
    UP_NOT_IN_WH = "up-not-in-WH"


class NoHSpecialMatching(ValueError):
    pass


class MatchingDisagreement(ArithmeticError):
    """Two H-special matchings produced different R-polynomials.

    ``dump`` holds the poset JSON, both matchings and both polynomials.
    """

    def __init__(self, message: str, dump: dict):
        super().__init__(message)
        self.dump = dump


def matching_step(poset: GradedPoset, M: Matching, u: int) -> StepCase:
    """Which branch of the matching recursion applies at the flagged vertex u."""
    if not poset.h[u]:
        raise ValueError(f"vertex {u} is not flagged")
    mu = M(u)
    if poset.rank[mu] < poset.rank[u]:
        if not poset.h[mu]:
            raise ValueError(f"matching sends flagged {u} down to unflagged {mu}; it is not H-special")
        return StepCase.DOWN
    return StepCase.UP_IN_WH if poset.h[mu] else StepCase.UP_NOT_IN_WH


def apply_step(case: StepCase, x: str, r_u: PolyZ, r_mu: PolyZ) -> PolyZ:
    """Combine R_{u,M(w)} and R_{M(u),M(w)} according to ``case``."""
    if case is StepCase.DOWN:
        return r_mu
    if case is StepCase.UP_IN_WH:
        return (Q - 1) * r_u + Q * r_mu
    return unflagged_factor(x) * r_u


@dataclass
class RTable:
    """R_{u,top} for every flagged u below ``top``."""

    top: int
    x: str
    entries: dict[int, PolyZ]
    realizability: str = "unverified realizability"
    policy: str = "first"

    def __getitem__(self, u: int) -> PolyZ:
        return self.entries.get(u, ZERO)

    def to_json(self) -> dict:
        return {
            "top": self.top,
            "x": self.x,
            "realizability": self.realizability,
            "entries": [{"u": u, "poly": p.to_json()} for u, p in sorted(self.entries.items())],
        }


@dataclass
class _Engine:
    poset: GradedPoset
    x: str
    policy: str
    memo: dict = field(default_factory=dict)
    matchings: dict = field(default_factory=dict)

    def hspecial(self, top: int) -> list[tuple[int, ...]]:
        """H-special matchings of [bottom, top] as partner arrays in the original indices.

        Entries outside the lower interval of ``top`` are -1.
        """
        got = self.matchings.get(top)
        if got is None:
            P = self.poset
            verts, _, covers = P._sub_parts(top)
            sub = AbstractPoset([P.rank[v] for v in verts], covers, [P.h[v] for v in verts])
            got = []
            for M in enumerate_H_special(sub):
                part = [-1] * P.n
                for i, v in enumerate(verts):
                    part[v] = verts[M(i)]
                got.append(tuple(part))
            self.matchings[top] = got
        return got

    def left_mult(self, top: int) -> tuple[int, ...]:
        P = self.poset
        elems = P.elements
        s = min(elems[top].left_descents)
        part = [-1] * P.n
        for v in P.down_set(top):
            part[v] = P.index[elems[v].left(s)]
        return tuple(part)

    def choices(self, top: int) -> list[tuple[int, ...]]:
        if self.policy == "prefer-left-mult":
            return [self.left_mult(top)]
        ms = self.hspecial(top)
        if not ms:
            raise NoHSpecialMatching(f"vertex {top} has no H-special matching of its lower interval")
        return ms if self.policy == "all-agree" else ms[:1]

    def step(self, part, u: int, top: int) -> PolyZ:
        P = self.poset
        mtop, mu = part[top], part[u]
        if P.rank[mu] < P.rank[u]:
            if not P.h[mu]:
                raise ValueError(f"matching sends flagged {u} down to unflagged {mu}")
            case = StepCase.DOWN
        else:
            case = StepCase.UP_IN_WH if P.h[mu] else StepCase.UP_NOT_IN_WH
        r_u = self.R(u, mtop) if case is not StepCase.DOWN else ZERO
        r_mu = self.R(mu, mtop) if case is not StepCase.UP_NOT_IN_WH else ZERO
        return apply_step(case, self.x, r_u, r_mu)

    def R(self, u: int, top: int) -> PolyZ:
        P = self.poset
        if u == top:
            return ONE
        if not P.leq(u, top):
            return ZERO
        key = (u, top)
        val = self.memo.get(key)
        if val is not None:
            return val
        parts = self.choices(top)
        val = self.step(parts[0], u, top)
        for part in parts[1:]:
            other = self.step(part, u, top)
            if other != val:
                dump = {
                    "poset": P.to_json(),
                    "top": top,
                    "u": u,
                    "x": self.x,
                    "matchings": [list(parts[0]), list(part)],
                    "polys": [val.to_json(), other.to_json()],
                }
                raise MatchingDisagreement(
                    f"H-special matchings disagree at u={u}, top={top}: {val} vs {other}", dump
                )
        self.memo[key] = val
        return val


def R_via_matchings(poset: GradedPoset, x: str = "q", policy: str = "first") -> RTable:
    """The table R_{u,w} (w the maximum) for every flagged u, from matchings alone."""
    check_mode(x)
    if policy not in POLICIES:
        raise ValueError(f"policy must be one of {POLICIES}")
    if policy == "prefer-left-mult" and not isinstance(poset, BruhatInterval):
        raise ValueError("prefer-left-mult needs an interval with group data")
    if not (poset.h[poset.bottom] and poset.h[poset.top]):
        raise ValueError("the minimum and maximum must both be flagged")
    eng = _Engine(poset, x, policy)
    top = poset.top
    entries = {u: eng.R(u, top) for u in range(poset.n) if poset.h[u]}
    label = "realized" if isinstance(poset, BruhatInterval) else "unverified realizability"
    return RTable(top, x, entries, label, policy)


def word_based_table(interval: BruhatInterval, x: str = "q") -> RTable:
    """The same table computed by the descent recursion, for comparison."""
    ctx = ParabolicKL(interval.system, interval.H, x)
    w = interval.top_element
    entries = {u: ctx.R(interval.elements[u], w) for u in range(interval.n) if interval.h[u]}
    return RTable(interval.top, x, entries, "realized", "word")


def verify_calculating(ctx: ParabolicKL, interval: BruhatInterval, M: Matching, step=apply_step) -> bool:
    """Whether M reproduces R_{u,w} from word-based values on [e, M(w)] for all flagged u.

    ``step`` combines the two R-values; it is replaceable only so the harness
    can check that a corrupted recursion is caught.
    """
    if interval.H != ctx.H:
        raise ValueError("interval flags and context H differ")
    els = interval.elements
    w = interval.top_element
    mw = els[M(interval.top)]
    for u in range(interval.n):
        if not interval.h[u]:
            continue
        case = matching_step(interval, M, u)
        mu = M(u)
        r_u = ctx.R(els[u], mw) if case is not StepCase.DOWN else ZERO
        r_mu = ctx.R(els[mu], mw) if case is not StepCase.UP_NOT_IN_WH else ZERO
        if step(case, ctx.x, r_u, r_mu) != ctx.R(els[u], w):
            return False
    return True


def transfer_check(p: GradedPoset, q: GradedPoset, x: str = "q", policy: str = "first") -> bool:
    """Whether the matching tables of two flag-isomorphic posets correspond under the isomorphism."""
    psi = find_isomorphism(p, q, respect_flags=True)
    if psi is None:
        raise ValueError("the posets are not isomorphic as flagged posets")
    tp = R_via_matchings(p, x, policy)
    tq = R_via_matchings(q, x, policy)
    return all(tq[psi[u]] == poly for u, poly in tp.entries.items())


def dump_counterexample(err: MatchingDisagreement, path) -> None:
    with open(path, "w") as fh:
        json.dump(err.dump, fh, indent=2)
