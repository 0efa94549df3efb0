"""Graded posets: abstract (group-free) ones and materialised lower Bruhat intervals."""

from __future__ import annotations

import json
import sys
from collections import Counter
from typing import Iterable, Sequence

from .coxeter import CoxeterSystem, Element

DEFAULT_CAP = 20000


class IntervalTooLarge(ValueError):
    pass


class GradedPoset:
    """A finite graded poset with unique minimum and maximum and a boolean flag per vertex.

    Vertices are ``0 .. n-1``. The order is stored as down-set bitmasks, so
    ``leq(a, b)`` is a single bit test.
    """

    def __init__(self, rank: Sequence[int], covers: Iterable[tuple[int, int]], h: Sequence[bool]):
        n = len(rank)
        if n == 0:
            raise ValueError("a poset needs at least one vertex")
        if len(h) != n:
            raise ValueError("flag list has the wrong length")
        self.n = n
        self.rank = tuple(rank)
        self.h = tuple(bool(x) for x in h)
        lower = [[] for _ in range(n)]
        upper = [[] for _ in range(n)]
        for a, b in covers:
            if not (0 <= a < n and 0 <= b < n):
                raise ValueError(f"cover ({a}, {b}) out of range")
            if self.rank[b] != self.rank[a] + 1:
                raise ValueError(f"cover ({a}, {b}) does not raise the rank by one")
            lower[b].append(a)
            upper[a].append(b)
        self.lower = tuple(tuple(sorted(set(x))) for x in lower)
        self.upper = tuple(tuple(sorted(set(x))) for x in upper)
        bottoms = [v for v in range(n) if not self.lower[v]]
        tops = [v for v in range(n) if not self.upper[v]]
        if len(bottoms) != 1 or len(tops) != 1:
            raise ValueError("poset must have a unique minimum and a unique maximum")
        self.bottom, self.top = bottoms[0], tops[0]
        if self.rank[self.bottom] != 0:
            raise ValueError("the minimum must have rank 0")
        down = [0] * n
        for v in sorted(range(n), key=lambda v: self.rank[v]):
            bits = 1 << v
            for c in self.lower[v]:
                bits |= down[c]
            down[v] = bits
        self.down = down

    @property
    def covers(self) -> list[tuple[int, int]]:
        return [(a, b) for b in range(self.n) for a in self.lower[b]]

    @property
    def height(self) -> int:
        return self.rank[self.top]

    def leq(self, a: int, b: int) -> bool:
        return (self.down[b] >> a) & 1 == 1

    def down_set(self, v: int) -> list[int]:
        bits = self.down[v]
        return [i for i in range(self.n) if (bits >> i) & 1]

    def to_abstract(self) -> "AbstractPoset":
        return AbstractPoset(self.rank, self.covers, self.h)

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "rank": list(self.rank),
            "covers": [list(c) for c in self.covers],
            "h": list(self.h),
        }

    def _sub_parts(self, v: int):
        verts = self.down_set(v)
        pos = {x: i for i, x in enumerate(verts)}
        covers = [(pos[a], pos[b]) for b in verts for a in self.lower[b]]
        return verts, pos, covers


class AbstractPoset(GradedPoset):
    """A flagged graded poset carrying no group data."""

    def __repr__(self):
        return f"AbstractPoset(n={self.n}, height={self.height}, unflagged={self.h.count(False)})"

    @classmethod
    def from_json(cls, data) -> "AbstractPoset":
        if isinstance(data, str):
            data = json.loads(data)
        n = data["n"]
        covers = [tuple(c) for c in data["covers"]]
        h = data.get("h", [True] * n)
        rank = data.get("rank")
        if rank is None:
            rank = _ranks_from_covers(n, covers)
        if len(rank) != n:
            raise ValueError("rank list has the wrong length")
        return cls(rank, covers, h)

    def subposet(self, v: int) -> tuple["AbstractPoset", list[int]]:
        """The lower interval below ``v``, re-indexed; also returns the old indices."""
        verts, _, covers = self._sub_parts(v)
        return AbstractPoset([self.rank[x] for x in verts], covers, [self.h[x] for x in verts]), verts

    def relabel(self, perm: Sequence[int]) -> "AbstractPoset":
        """Rename vertex i to perm[i]."""
        n = self.n
        rank = [0] * n
        h = [False] * n
        for i in range(n):
            rank[perm[i]] = self.rank[i]
            h[perm[i]] = self.h[i]
        return AbstractPoset(rank, [(perm[a], perm[b]) for a, b in self.covers], h)


def _ranks_from_covers(n, covers):
    lower = [[] for _ in range(n)]
    for a, b in covers:
        lower[b].append(a)
    rank = [None] * n

    def r(v):
        if rank[v] is None:
            rank[v] = 0 if not lower[v] else r(lower[v][0]) + 1
        return rank[v]

    return [r(v) for v in range(n)]


class BruhatInterval(GradedPoset):
    """The lower Bruhat interval [e, w] with W^H membership flags.

    ``elements[i]`` is the group element at vertex ``i``; vertices are sorted
    by (length, ShortLex word), so vertex 0 is e and the last vertex is w.
    """

    def __init__(self, system: CoxeterSystem, elements: list[Element], H: Iterable[int], covers):
        self.system = system
        self.H = frozenset(H)
        self.elements = elements
        self.index = {x: i for i, x in enumerate(elements)}
        super().__init__(
            [x.length for x in elements],
            covers,
            [system.is_min_coset_rep(x, self.H) for x in elements],
        )
        self.top_element = elements[self.top]

    def __repr__(self):
        return f"BruhatInterval([e, {self.top_element}], H={sorted(self.H)}, n={self.n})"

    def __len__(self):
        return self.n

    def vertex(self, x: Element) -> int:
        return self.index[x]

    def subinterval(self, v: int | Element) -> "BruhatInterval":
        if isinstance(v, Element):
            v = self.index[v]
        verts, _, covers = self._sub_parts(v)
        return BruhatInterval(self.system, [self.elements[x] for x in verts], self.H, covers)

    def with_flags(self, H: Iterable[int]) -> "BruhatInterval":
        """The same interval with W^H flags for a different H."""
        return BruhatInterval(self.system, self.elements, H, self.covers)


def coatoms(x: Element) -> set[Element]:
    """Elements covered by ``x`` in Bruhat order (single-letter deletions of a reduced word)."""
    word = x.word
    k = len(word)
    prefixes = [x.system.identity]
    for s in word:
        prefixes.append(prefixes[-1].right(s))
    out = set()
    for i in range(k):
        y = prefixes[i]
        for s in word[i + 1:]:
            y = y.right(s)
        if y.length == k - 1:
            out.add(y)
    return out


def build_interval(system: CoxeterSystem, w: Element, H: Iterable[int] = (), cap: int = DEFAULT_CAP) -> BruhatInterval:
    """Materialise [e, w] by downward breadth-first search over coatoms."""
    found = {w: None}
    layer = [w]
    lower_of = {}
    while layer:
        nxt = {}
        for x in layer:
            cs = coatoms(x)
            lower_of[x] = cs
            for c in cs:
                if c not in found:
                    found[c] = None
                    nxt[c] = None
                    if len(found) > cap:
                        raise IntervalTooLarge(f"[e, {w}] has more than {cap} elements")
        layer = list(nxt)
    elements = sorted(found)
    index = {x: i for i, x in enumerate(elements)}
    covers = [(index[c], index[x]) for x in elements for c in lower_of[x]]
    return BruhatInterval(system, elements, H, covers)


def find_isomorphism(p: GradedPoset, q: GradedPoset, respect_flags: bool = True) -> list[int] | None:
    """A rank-preserving poset isomorphism p -> q as a list, or None.

    Backtracking over p's vertices in rank order; a vertex's candidates are the
    upper covers of the image of one of its lower covers, filtered by rank,
    up/down degree and (optionally) flag, and then checked to map the whole
    lower-cover set onto the candidate's lower-cover set.
    """
    if p.n != q.n or sorted(p.rank) != sorted(q.rank):
        return None

    def sig(P, v):
        return (P.rank[v], len(P.lower[v]), len(P.upper[v]), P.h[v] if respect_flags else None)

    if Counter(sig(p, v) for v in range(p.n)) != Counter(sig(q, v) for v in range(q.n)):
        return None
    order = sorted(range(p.n), key=lambda v: (p.rank[v], v))
    image = [-1] * p.n
    used = [False] * q.n

    def candidates(v):
        if not p.lower[v]:
            return [q.bottom]
        return q.upper[image[p.lower[v][0]]]

    def fits(v, x):
        if used[x] or sig(p, v) != sig(q, x):
            return False
        return sorted(image[c] for c in p.lower[v]) == list(q.lower[x])

    def search(k):
        if k == len(order):
            return True
        v = order[k]
        for x in candidates(v):
            if fits(v, x):
                image[v] = x
                used[x] = True
                if search(k + 1):
                    return True
                used[x] = False
        image[v] = -1
        return False

    limit = sys.getrecursionlimit()
    if p.n + 100 > limit:
        sys.setrecursionlimit(p.n + 1000)
    try:
        return image if search(0) else None
    finally:
        sys.setrecursionlimit(limit)
