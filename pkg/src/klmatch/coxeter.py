"""Coxeter systems and their elements.

Elements are realised exactly through the geometric (Tits) representation
over Z[2cos(pi/N)], N the lcm of the finite Coxeter labels. Each element
stores the images of the simple roots under w and under w^-1; descents are
read off from root signs, and elements are interned per system so that equal
group elements are the same Python object.

A system is not thread-safe: the intern store and the memo tables are plain
dicts that are filled lazily. Share systems between threads only after
warming them up, or give each thread its own system.

Generators are numbered 0 .. rank-1 throughout the Python API.
"""

from __future__ import annotations

import json
import math
from collections import deque
from dataclasses import dataclass
from functools import reduce
from typing import Iterable, Iterator, Sequence

from .field import CyclotomicRealField

INFINITY = math.inf


def _parse_label(x):
    if x == 0 or x is None or x == INFINITY or x == "inf":
        return INFINITY
    if isinstance(x, float) and x.is_integer():
        x = int(x)
    if not isinstance(x, int):
        raise ValueError(f"invalid Coxeter label {x!r}")
    return x


@dataclass(frozen=True)
class CoxeterMatrix:
    """Symmetric matrix of Coxeter labels; ``math.inf`` stands for an infinite label."""

    labels: tuple

    def __post_init__(self):
        rows = tuple(tuple(_parse_label(x) for x in row) for row in self.labels)
        object.__setattr__(self, "labels", rows)
        n = len(rows)
        if n == 0:
            raise ValueError("a Coxeter matrix must have rank >= 1")
        for i, row in enumerate(rows):
            if len(row) != n:
                raise ValueError("Coxeter matrix must be square")
            if row[i] != 1:
                raise ValueError("diagonal entries of a Coxeter matrix must be 1")
            for j, m in enumerate(row):
                if m != rows[j][i]:
                    raise ValueError("Coxeter matrix must be symmetric")
                if i != j and m < 2:
                    raise ValueError("off-diagonal Coxeter labels must be >= 2")

    @property
    def rank(self) -> int:
        return len(self.labels)

    def __getitem__(self, ij):
        i, j = ij
        return self.labels[i][j]

    @classmethod
    def from_json(cls, data) -> "CoxeterMatrix":
        """Parse ``{"rank": n, "labels": [[...]]}``, where 0 encodes an infinite label."""
        if isinstance(data, str):
            data = json.loads(data)
        labels = data["labels"]
        if "rank" in data and data["rank"] != len(labels):
            raise ValueError("rank does not match the label table")
        return cls(tuple(tuple(row) for row in labels))

    def to_json(self) -> dict:
        return {
            "rank": self.rank,
            "labels": [[0 if m == INFINITY else m for m in row] for row in self.labels],
        }

    @classmethod
    def from_dihedral(cls, m) -> "CoxeterMatrix":
        return cls(((1, m), (m, 1)))

    @classmethod
    def type_a(cls, n: int) -> "CoxeterMatrix":
        return cls(tuple(tuple(1 if i == j else 3 if abs(i - j) == 1 else 2 for j in range(n)) for i in range(n)))

    @classmethod
    def type_b(cls, n: int) -> "CoxeterMatrix":
        rows = [[1 if i == j else 3 if abs(i - j) == 1 else 2 for j in range(n)] for i in range(n)]
        if n >= 2:
            rows[0][1] = rows[1][0] = 4
        return cls(tuple(map(tuple, rows)))


class Element:
    """An element of a Coxeter group, interned in its :class:`CoxeterSystem`.

    Compare elements with ``==`` (identity) and use them as dict keys.
    """

    __slots__ = (
        "system", "index", "length", "_cols", "_inv_cols",
        "_rdesc", "_ldesc", "_right", "_left", "_word", "_inverse",
    )

    def __init__(self, system, index, length, cols, inv_cols):
        self.system = system
        self.index = index
        self.length = length
        self._cols = cols
        self._inv_cols = inv_cols
        self._rdesc = None
        self._ldesc = None
        self._right = [None] * system.rank
        self._left = [None] * system.rank
        self._word = None
        self._inverse = None

    def __hash__(self):
        return self.index

    def __eq__(self, other):
        return self is other

    def __lt__(self, other):
        return (self.length, self.word) < (other.length, other.word)

    def __repr__(self):
        if self.length == 0:
            return "e"
        return "s" + "s".join(str(i + 1) for i in self.word)

    def __mul__(self, other: "Element") -> "Element":
        w = self
        for s in other.word:
            w = w.right(s)
        return w

    @property
    def right_descents(self) -> frozenset:
        if self._rdesc is None:
            self._rdesc = self.system._negative_roots(self._cols)
        return self._rdesc

    @property
    def left_descents(self) -> frozenset:
        if self._ldesc is None:
            self._ldesc = self.system._negative_roots(self._inv_cols)
        return self._ldesc

    @property
    def word(self) -> tuple:
        """The ShortLex-minimal reduced word, as a tuple of generator indices."""
        if self._word is None:
            letters = []
            w = self
            while w.length:
                s = min(w.left_descents)
                letters.append(s)
                w = w.left(s)
            self._word = tuple(letters)
        return self._word

    def right(self, s: int) -> "Element":
        """The product w * s."""
        r = self._right[s]
        if r is None:
            r = self.system._multiply(self, s, "right")
        return r

    def left(self, s: int) -> "Element":
        """The product s * w."""
        r = self._left[s]
        if r is None:
            r = self.system._multiply(self, s, "left")
        return r

    def inverse(self) -> "Element":
        if self._inverse is None:
            self._inverse = self.system._intern(self._inv_cols, self._cols, self.length)
            self._inverse._inverse = self
        return self._inverse

    def root_image(self, s: int) -> tuple:
        """Coordinates of w(alpha_s) in the basis of simple roots (field elements)."""
        return self._cols[s]


class CoxeterSystem:
    """A Coxeter system (W, S) built from its Coxeter matrix.

    >>> A3 = CoxeterSystem(CoxeterMatrix.type_a(3))
    >>> w = A3.element([0, 1, 2, 0])
    >>> w.length, sorted(w.right_descents)
    (4, [0, 2])
    """

    def __init__(self, matrix):
        if not isinstance(matrix, CoxeterMatrix):
            matrix = CoxeterMatrix(tuple(tuple(r) for r in matrix))
        self.matrix = matrix
        self.rank = n = matrix.rank
        finite = [matrix[i, j] for i in range(n) for j in range(n) if i != j and matrix[i, j] != INFINITY]
        self.field = F = CyclotomicRealField(reduce(math.lcm, finite, 1))
        # sigma_s(alpha_t) = alpha_t + c[s][t] alpha_s
        self._c = [
            [
                F.from_int(-2) if s == t
                else F.from_int(2) if matrix[s, t] == INFINITY
                else F.two_cos(matrix[s, t])
                for t in range(n)
            ]
            for s in range(n)
        ]
        self._store: dict = {}
        self._elements: list[Element] = []
        unit = tuple(tuple(F.one if i == j else F.zero for i in range(n)) for j in range(n))
        self.identity = self._intern(unit, unit, 0)
        self._leq_memo: dict = {}

    def __repr__(self):
        return f"CoxeterSystem({self.matrix.to_json()['labels']})"

    @property
    def generators(self) -> range:
        return range(self.rank)

    def m(self, s: int, t: int):
        return self.matrix[s, t]

    # -- element store ------------------------------------------------------

    def _intern(self, cols, inv_cols, length) -> Element:
        el = self._store.get(cols)
        if el is None:
            el = Element(self, len(self._elements), length, cols, inv_cols)
            self._store[cols] = el
            self._elements.append(el)
        return el

    def _negative_roots(self, cols) -> frozenset:
        out = []
        sign = self.field.sign
        for s, col in enumerate(cols):
            for coord in col:
                sg = sign(coord)
                if sg:
                    if sg < 0:
                        out.append(s)
                    break
        return frozenset(out)

    def _apply_left(self, cols, s):
        """sigma_s applied to every column vector."""
        F, c = self.field, self._c[s]
        out = []
        for col in cols:
            acc = col[s]
            for t, v in enumerate(col):
                if any(v):
                    acc = F.add(acc, F.mul(c[t], v))
            out.append(col[:s] + (acc,) + col[s + 1:])
        return tuple(out)

    def _apply_right(self, cols, s):
        """Columns of A * sigma_s."""
        F, c = self.field, self._c[s]
        cs = cols[s]
        out = []
        for t, col in enumerate(cols):
            k = c[t]
            if any(k):
                col = tuple(F.add(a, F.mul(k, b)) for a, b in zip(col, cs))
            out.append(col)
        return tuple(out)

    def _multiply(self, w: Element, s: int, side: str) -> Element:
        if side == "right":
            down = s in w.right_descents
            cols = self._apply_right(w._cols, s)
            inv = self._apply_left(w._inv_cols, s)
        else:
            down = s in w.left_descents
            cols = self._apply_left(w._cols, s)
            inv = self._apply_right(w._inv_cols, s)
        r = self._intern(cols, inv, w.length - 1 if down else w.length + 1)
        if side == "right":
            w._right[s] = r
            r._right[s] = w
        else:
            w._left[s] = r
            r._left[s] = w
        return r

    # -- public operations ----------------------------------------------------

    def mult_gen(self, w: Element, s: int, side: str = "right") -> Element:
        """Multiply ``w`` by the generator ``s`` on the given side."""
        if not 0 <= s < self.rank:
            raise ValueError(f"generator index {s} out of range")
        if side == "right":
            return w.right(s)
        if side == "left":
            return w.left(s)
        raise ValueError("side must be 'left' or 'right'")

    def generator(self, s: int) -> Element:
        return self.mult_gen(self.identity, s)

    def element(self, word: Iterable[int]) -> Element:
        """The element represented by a word (not necessarily reduced)."""
        w = self.identity
        for s in word:
            w = self.mult_gen(w, s)
        return w

    def bruhat_leq(self, u: Element, w: Element) -> bool:
        """Bruhat order via the left-descent recursion."""
        if u is w:
            return True
        if u.length >= w.length:
            return False
        if u.length == 0:
            return True
        key = (u.index, w.index)
        memo = self._leq_memo
        r = memo.get(key)
        if r is None:
            s = min(w.left_descents)
            if s in u.left_descents:
                r = self.bruhat_leq(u.left(s), w.left(s))
            else:
                r = self.bruhat_leq(u, w.left(s))
            memo[key] = r
        return r

    def decompose_right(self, w: Element, J: Iterable[int]) -> tuple[Element, Element]:
        """Return (w^J, w_J) with w = w^J . w_J, w^J in W^J and w_J in W_J."""
        J = frozenset(J)
        v = w
        while True:
            d = v.right_descents & J
            if not d:
                break
            v = v.right(min(d))
        return v, v.inverse() * w

    def decompose_left(self, w: Element, J: Iterable[int]) -> tuple[Element, Element]:
        """Return (_J w, ^J w) with w = _J w . ^J w, _J w in W_J and ^J w in ^J W."""
        J = frozenset(J)
        v = w
        while True:
            d = v.left_descents & J
            if not d:
                break
            v = v.left(min(d))
        return w * v.inverse(), v

    def max_parabolic_below(self, w: Element, J: Iterable[int]) -> Element:
        """The maximum w_0(J) of the finite set W_J intersected with [e, w]."""
        J = sorted(set(J))
        seen = {self.identity}
        queue = deque([self.identity])
        while queue:
            v = queue.popleft()
            for r in J:
                x = v.right(r)
                if x.length > v.length and x not in seen and self.bruhat_leq(x, w):
                    seen.add(x)
                    queue.append(x)
        top = max(seen, key=lambda v: v.length)
        if not all(self.bruhat_leq(v, top) for v in seen):
            raise ArithmeticError(f"W_J meets [e, {w}] without a unique maximal element")
        return top

    def is_min_coset_rep(self, w: Element, H: Iterable[int]) -> bool:
        """True iff w lies in W^H, i.e. no right descent of w is in H."""
        return not (w.right_descents & frozenset(H))

    def is_left_min_coset_rep(self, w: Element, J: Iterable[int]) -> bool:
        """True iff w lies in ^J W."""
        return not (w.left_descents & frozenset(J))

    # -- enumeration helpers --------------------------------------------------

    def elements_up_to(self, max_length: int, J: Iterable[int] | None = None) -> list[Element]:
        """All elements of W (or of W_J) of length <= max_length, ordered by length then word."""
        gens = sorted(set(J)) if J is not None else list(self.generators)
        layer = [self.identity]
        out = [self.identity]
        for _ in range(max_length):
            nxt = {}
            for v in layer:
                for s in gens:
                    x = v.right(s)
                    if x.length > v.length:
                        nxt[x] = None
            layer = sorted(nxt)
            out.extend(layer)
            if not layer:
                break
        return out

    def reduced_words(self, w: Element) -> Iterator[tuple]:
        """All reduced words of ``w`` (exponentially many; for testing)."""
        if w.length == 0:
            yield ()
            return
        for s in sorted(w.right_descents):
            for word in self.reduced_words(w.right(s)):
                yield word + (s,)

    def is_finite_parabolic(self, J: Iterable[int]) -> bool:
        """Whether W_J is finite (positive definite cosine form)."""
        import numpy as np

        J = sorted(set(J))
        if not J:
            return True
        if any(self.m(s, t) == INFINITY for s in J for t in J):
            return False
        gram = np.array([[-math.cos(math.pi / self.m(s, t)) if s != t else 1.0 for t in J] for s in J])
        return bool(np.linalg.eigvalsh(gram).min() > 1e-9)

    def longest_parabolic(self, J: Iterable[int]) -> Element:
        """The longest element of a finite standard parabolic subgroup W_J."""
        J = frozenset(J)
        if not self.is_finite_parabolic(J):
            raise ValueError(f"W_J is infinite for J = {sorted(J)}")
        w = self.identity
        while True:
            up = J - w.right_descents
            if not up:
                return w
            w = w.right(min(up))

    def parse_word(self, text: str | Sequence[int], one_based: bool = True) -> Element:
        """Parse a word like ``"1 2 3 1"`` (1-based generator indices)."""
        if isinstance(text, str):
            letters = [int(t) for t in text.replace(",", " ").split()]
        else:
            letters = list(text)
        if one_based:
            letters = [t - 1 for t in letters]
        for s in letters:
            if not 0 <= s < self.rank:
                raise ValueError(f"generator {s + one_based} out of range for rank {self.rank}")
        return self.element(letters)


def new_system(matrix) -> CoxeterSystem:
    return CoxeterSystem(matrix)
