"""Exact arithmetic in Z[y] / (f), where y = 2cos(pi/N) and f is its minimal polynomial.

All entries of the geometric representation of a Coxeter group with finite
labels dividing N are algebraic integers in this ring, so elements are stored
as plain tuples of Python ints (coefficients of 1, y, y^2, ..., low to high).
Tuples are used instead of a wrapper class because the word-problem engine
performs millions of these operations.

Signs are decided exactly: a nonzero element of degree < deg(f) cannot vanish
at y, and its sign is certified by evaluating at the midpoint of a dyadic
isolating interval for y together with a derivative bound.
"""

from __future__ import annotations

import math
from functools import lru_cache

import sympy

FieldElem = tuple  # tuple[int, ...] of length ``degree``


@lru_cache(maxsize=None)
def minimal_polynomial_2cos(n: int) -> tuple[int, ...]:
    """Integer coefficients (low to high, monic) of the minimal polynomial of 2cos(pi/n)."""
    if n < 1:
        raise ValueError("n must be positive")
    x = sympy.Symbol("x")
    poly = sympy.Poly(sympy.minimal_polynomial(2 * sympy.cos(sympy.pi / n), x), x)
    coeffs = [int(c) for c in reversed(poly.all_coeffs())]
    if coeffs[-1] != 1:
        raise ArithmeticError(f"minimal polynomial of 2cos(pi/{n}) is not monic")
    return tuple(coeffs)


def chebyshev_2cos(k: int) -> list[int]:
    """Coefficients of C_k with 2cos(k*theta) = C_k(2cos(theta)), low to high."""
    prev, cur = [2], [0, 1]
    if k == 0:
        return prev
    for _ in range(k - 1):
        nxt = [0] + cur
        for i, c in enumerate(prev):
            nxt[i] -= c
        prev, cur = cur, nxt
    return cur


class CyclotomicRealField:
    """The ring Z[2cos(pi/N)] with exact sign decisions.

    Elements are tuples of ints of length ``degree``.
    """

    def __init__(self, n: int):
        self.n = n
        self.minpoly = minimal_polynomial_2cos(n)
        d = len(self.minpoly) - 1
        self.degree = d
        self.zero = (0,) * d
        self.one = (1,) + (0,) * (d - 1)
        # y^k mod f for k = d .. 2d-2, used to reduce products
        self._reduce = {}
        cur = [-c for c in self.minpoly[:-1]]  # y^d
        for k in range(d, 2 * d - 1):
            self._reduce[k] = tuple(cur)
            # multiply by y
            top = cur[-1]
            cur = [0] + cur[:-1]
            for i in range(d):
                cur[i] -= top * self.minpoly[i]
        # dyadic isolating interval [lo, hi] / 2**scale for y
        self._init_interval()

    def __repr__(self):
        return f"CyclotomicRealField(2cos(pi/{self.n}), degree={self.degree})"

    # -- construction -------------------------------------------------------

    def from_int(self, a: int) -> FieldElem:
        return (a,) + (0,) * (self.degree - 1)

    def from_poly(self, coeffs) -> FieldElem:
        """Reduce an arbitrary integer polynomial in y modulo the minimal polynomial."""
        coeffs = list(coeffs)
        d = self.degree
        if len(coeffs) <= d:
            return tuple(coeffs) + (0,) * (d - len(coeffs))
        out = [0] * d
        f = self.minpoly
        # long division by the monic f, highest degree first
        coeffs = coeffs[:]
        for k in range(len(coeffs) - 1, d - 1, -1):
            c = coeffs[k]
            if c:
                for i in range(d + 1):
                    coeffs[k - d + i] -= c * f[i]
        out[:] = coeffs[:d]
        return tuple(out)

    def two_cos(self, m: int) -> FieldElem:
        """2cos(pi/m) for a divisor m of N."""
        if self.n % m:
            raise ValueError(f"{m} does not divide {self.n}")
        return self.from_poly(chebyshev_2cos(self.n // m))

    # -- arithmetic ---------------------------------------------------------

    def add(self, a: FieldElem, b: FieldElem) -> FieldElem:
        return tuple(x + y for x, y in zip(a, b))

    def sub(self, a: FieldElem, b: FieldElem) -> FieldElem:
        return tuple(x - y for x, y in zip(a, b))

    def neg(self, a: FieldElem) -> FieldElem:
        return tuple(-x for x in a)

    def mul(self, a: FieldElem, b: FieldElem) -> FieldElem:
        d = self.degree
        if d == 1:
            return (a[0] * b[0],)
        prod = [0] * (2 * d - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        prod[i + j] += x * y
        out = prod[:d]
        for k in range(d, 2 * d - 1):
            c = prod[k]
            if c:
                red = self._reduce[k]
                for i in range(d):
                    out[i] += c * red[i]
        return tuple(out)

    def value(self, a: FieldElem) -> float:
        y = 2 * math.cos(math.pi / self.n)
        return sum(c * y**i for i, c in enumerate(a))

    # -- signs --------------------------------------------------------------

    def _init_interval(self):
        d = self.degree
        if d == 1:
            y = -self.minpoly[0]
            self._scale, self._lo, self._hi = 0, y, y
            return
        scale = 64
        approx = 2 * math.cos(math.pi / self.n)
        lo = math.floor(approx * 2**scale) - 2**16
        hi = lo + 2**17
        if self._fsign(lo, scale) * self._fsign(hi, scale) >= 0:
            raise ArithmeticError("failed to isolate 2cos(pi/N)")
        # the other roots 2cos(k pi/N) lie much farther away than 2**-47
        if self.n > 1:
            gap = 2 * math.cos(math.pi / self.n) - 2 * math.cos(3 * math.pi / self.n)
            if gap <= (hi - lo) / 2**scale:
                raise ArithmeticError("isolating interval is not narrow enough")
        self._scale, self._lo, self._hi = scale, lo, hi

    def _fsign(self, num: int, scale: int) -> int:
        """Sign of the minimal polynomial at num / 2**scale."""
        f = self.minpoly
        deg = len(f) - 1
        val = sum(c * num**i << (scale * (deg - i)) for i, c in enumerate(f))
        return (val > 0) - (val < 0)

    def refine(self, steps: int = 1):
        """Halve the isolating interval ``steps`` times."""
        if self.degree == 1:
            return
        for _ in range(steps):
            lo, hi, scale = 2 * self._lo, 2 * self._hi, self._scale + 1
            mid = (lo + hi) // 2
            s_mid = self._fsign(mid, scale)
            if s_mid == 0:
                raise ArithmeticError("minimal polynomial vanished at a dyadic rational")
            if s_mid == self._fsign(lo, scale):
                lo = mid
            else:
                hi = mid
            self._lo, self._hi, self._scale = lo, hi, scale

    @property
    def interval(self) -> tuple[float, float]:
        return self._lo / 2**self._scale, self._hi / 2**self._scale

    def sign(self, a: FieldElem, max_steps: int = 4096) -> int:
        """Exact sign of ``a`` evaluated at y = 2cos(pi/N)."""
        k = len(a) - 1
        while k >= 0 and a[k] == 0:
            k -= 1
        if k < 0:
            return 0
        if k == 0:
            return 1 if a[0] > 0 else -1
        if self.degree == 1:
            v = sum(c * self._lo**i for i, c in enumerate(a))
            return (v > 0) - (v < 0)
        # |p'(y)| <= sum i |c_i| 2^(i-1) for |y| <= 2
        dbound = sum(i * abs(c) * (1 << (i - 1)) for i, c in enumerate(a[: k + 1]) if i)
        for _ in range(max_steps):
            scale = self._scale + 1
            mid = self._lo + self._hi  # midpoint numerator at scale+1
            half_width = self._hi - self._lo  # half width numerator at scale+1
            # p(mid) * 2^(scale*k)
            val = sum(c * mid**i << (scale * (k - i)) for i, c in enumerate(a[: k + 1]))
            # error <= dbound * half_width / 2^scale, scaled by 2^(scale*k)
            err = dbound * half_width * (1 << (scale * (k - 1)))
            if abs(val) > err:
                return 1 if val > 0 else -1
            self.refine(8)
        raise ArithmeticError("sign refinement did not terminate")
