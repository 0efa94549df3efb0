"""Matchings of lower intervals: special and H-special tests, enumeration, multiplication matchings."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable

from .poset import BruhatInterval, GradedPoset


@dataclass(frozen=True)
class Matching:
    """A fixed-point-free involution on the vertices ``0 .. n-1`` of a poset."""

    partner: tuple[int, ...]

    def __post_init__(self):
        p = self.partner
        for v, x in enumerate(p):
            if not 0 <= x < len(p) or p[x] != v or x == v:
                raise ValueError("partner array is not a fixed-point-free involution")

    def __call__(self, v: int) -> int:
        return self.partner[v]

    def __len__(self):
        return len(self.partner)

    def seed(self, poset: GradedPoset) -> int:
        """The atom matched with the bottom vertex."""
        return self.partner[poset.bottom]

    def to_json(self) -> dict:
        return {"partner": list(self.partner)}

    @classmethod
    def from_json(cls, data) -> "Matching":
        return cls(tuple(data["partner"]))


def _along_edges(poset: GradedPoset, M: Matching) -> bool:
    if len(M) != poset.n:
        return False
    return all(M(v) in poset.lower[v] or M(v) in poset.upper[v] for v in range(poset.n))


def is_special(poset: GradedPoset, M: Matching) -> bool:
    """Hasse-edge involution with u < v cover, M(u) != v  =>  M(u) <= M(v)."""
    if not _along_edges(poset, M):
        return False
    for v in range(poset.n):
        for u in poset.lower[v]:
            if M(u) != v and not poset.leq(M(u), M(v)):
                return False
    return True


def _h_condition(poset: GradedPoset, M: Matching) -> bool:
    h, rank = poset.h, poset.rank
    return all(not h[u] or rank[M(u)] > rank[u] or h[M(u)] for u in range(poset.n))


def is_H_special(poset: GradedPoset, M: Matching) -> bool:
    """Special, and never matches a flagged vertex down to an unflagged one."""
    return is_special(poset, M) and _h_condition(poset, M)


def enumerate_special_matchings(poset: GradedPoset, h_special: bool = False) -> list[Matching]:
    """All special (or H-special) matchings, by backtracking in rank order.

    When a vertex is reached unmatched, every vertex below it is already
    matched, so its partner must be one of its free upper covers. Each cover
    relation is checked as soon as both of its endpoints have partners.
    """
    n = poset.n
    if n == 1:
        return []
    order = sorted(range(n), key=lambda v: (poset.rank[v], v))
    lower, upper, down, h, rank = poset.lower, poset.upper, poset.down, poset.h, poset.rank
    partner = [-1] * n
    out: list[Matching] = []

    def ok_cover(u, v):
        mu = partner[u]
        return mu == v or (down[partner[v]] >> mu) & 1

    def consistent(a):
        for b in upper[a]:
            if partner[b] >= 0 and not ok_cover(a, b):
                return False
        for b in lower[a]:
            if partner[b] >= 0 and not ok_cover(b, a):
                return False
        return True

    def search(k):
        while k < n and partner[order[k]] >= 0:
            k += 1
        if k == n:
            out.append(Matching(tuple(partner)))
            return
        v = order[k]
        for x in upper[v]:
            if partner[x] >= 0:
                continue
            # x is matched downward to v
            if h_special and h[x] and not h[v]:
                continue
            partner[v], partner[x] = x, v
            if consistent(v) and consistent(x):
                search(k + 1)
            partner[v] = partner[x] = -1

    search(0)
    return out


def enumerate_H_special(poset: GradedPoset) -> list[Matching]:
    return enumerate_special_matchings(poset, h_special=True)


def brute_force_special_matchings(poset: GradedPoset, h_special: bool = False) -> list[Matching]:
    """Reference enumerator: every perfect matching of the Hasse graph, then filter.

    Intended for small posets only; the number of perfect matchings grows fast.
    """
    n = poset.n
    nbrs = [sorted(set(poset.lower[v]) | set(poset.upper[v])) for v in range(n)]
    partner = [-1] * n
    found = []

    def search(v):
        while v < n and partner[v] >= 0:
            v += 1
        if v == n:
            found.append(Matching(tuple(partner)))
            return
        for x in nbrs[v]:
            if partner[x] < 0:
                partner[v], partner[x] = x, v
                search(v + 1)
                partner[v] = partner[x] = -1

    if n > 1:
        search(0)
    test = is_H_special if h_special else is_special
    return sorted((M for M in found if test(poset, M)), key=lambda M: M.partner)


def multiplication_matching(interval: BruhatInterval, s: int, side: str = "left") -> Matching:
    """lambda_s (side='left') or rho_s (side='right') on [e, w]."""
    w = interval.top_element
    if side == "left":
        if s not in w.left_descents:
            raise ValueError(f"s{s + 1} is not a left descent of {w}")
        return Matching(tuple(interval.index[x.left(s)] for x in interval.elements))
    if side == "right":
        if s not in w.right_descents:
            raise ValueError(f"s{s + 1} is not a right descent of {w}")
        return Matching(tuple(interval.index[x.right(s)] for x in interval.elements))
    raise ValueError("side must be 'left' or 'right'")


def multiplication_matchings(interval: BruhatInterval, side: str = "left") -> dict[int, Matching]:
    w = interval.top_element
    desc = w.left_descents if side == "left" else w.right_descents
    return {s: multiplication_matching(interval, s, side) for s in sorted(desc)}


def commute(M: Matching, N: Matching, domain: Iterable[int]) -> bool:
    """True iff M and N commute on ``domain``; both must map it into itself."""
    dom = set(domain)
    for x in dom:
        if M(x) not in dom or N(x) not in dom:
            raise ValueError(f"vertex {x} is mapped outside the domain")
    return all(M(N(x)) == N(M(x)) for x in dom)


def commutes_on_dihedral_intervals(interval: BruhatInterval, M: Matching, N: Matching) -> bool:
    """Commutation on the lower dihedral intervals of [e, w] containing M(e) and N(e)."""
    system = interval.system
    w = interval.top_element
    a = interval.elements[M.seed(interval)].word[0]
    b = interval.elements[N.seed(interval)].word[0]
    pairs = {(a, b)} if a != b else {(a, r) for r in system.generators if r != a}
    for s, t in pairs:
        top = system.max_parabolic_below(w, (s, t))
        dom = interval.down_set(interval.index[top])
        if any(M(x) not in set(dom) or N(x) not in set(dom) for x in dom):
            return False
        if not commute(M, N, dom):
            return False
    return True


def stabilizes_parabolic(interval: BruhatInterval, M: Matching, J: Iterable[int]) -> bool | None:
    """Whether M maps [e, w_0(J)] into itself; None when that interval is a single vertex."""
    top = interval.system.max_parabolic_below(interval.top_element, J)
    dom = interval.down_set(interval.index[top])
    if len(dom) == 1:
        return None
    ds = set(dom)
    return all(M(x) in ds for x in dom)


def is_left_multiplication(interval: BruhatInterval, M: Matching) -> bool:
    """Whether M equals lambda_s for s = M(e)."""
    s = interval.elements[M.seed(interval)].word[0]
    if s not in interval.top_element.left_descents:
        return False
    return M == multiplication_matching(interval, s, "left")


def is_right_multiplication(interval: BruhatInterval, M: Matching) -> bool:
    s = interval.elements[M.seed(interval)].word[0]
    if s not in interval.top_element.right_descents:
        return False
    return M == multiplication_matching(interval, s, "right")


def is_left_mult_on_dihedral(interval: BruhatInterval, M: Matching, p: int) -> tuple[bool, bool]:
    """Evaluate the dihedral left-multiplication criterion on [e, g].

    Returns ``(hypothesis, conclusion)``: the hypothesis is that M commutes
    with rho_p and differs from rho_p at every x whose length avoids
    {0, 1} (and {m - 1, m} when the rank-2 group is finite); the conclusion
    is that M is a left multiplication matching. The criterion asserts
    hypothesis => conclusion.
    """
    g = interval.top_element
    gens = {s for x in interval.elements for s in x.word}
    if len(gens) > 2:
        raise ValueError("interval is not contained in a rank-2 parabolic subgroup")
    if p not in g.right_descents:
        raise ValueError(f"s{p + 1} is not a right descent of the top")
    rho = multiplication_matching(interval, p, "right")
    # with fewer than two letters every length is 0 or 1, so m is irrelevant
    m = interval.system.m(*sorted(gens)) if len(gens) == 2 else math.inf
    skip = {0, 1} if m == math.inf else {0, 1, m - 1, m}
    hyp = commute(M, rho, range(interval.n)) and all(
        M(v) != rho(v) for v in range(interval.n) if interval.rank[v] not in skip
    )
    return hyp, is_left_multiplication(interval, M)
