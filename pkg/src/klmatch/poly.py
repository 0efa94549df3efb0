"""Dense polynomials in q with integer coefficients."""

from __future__ import annotations

import re
from typing import Iterable


class PolyZ:
    """Immutable integer polynomial; ``coeffs[i]`` is the coefficient of q^i.

    The canonical form has no trailing zeros, so the zero polynomial has an
    empty coefficient tuple and degree ``None``.

    >>> q = PolyZ.q()
    >>> str((q - 1) ** 2)
    'q^2 - 2q + 1'
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[int] = ()):
        c = [int(x) for x in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.coeffs = tuple(c)

    @classmethod
    def const(cls, a: int) -> "PolyZ":
        return cls((a,))

    @classmethod
    def q(cls) -> "PolyZ":
        return cls((0, 1))

    @classmethod
    def monomial(cls, k: int, a: int = 1) -> "PolyZ":
        return cls((0,) * k + (a,))

    @property
    def degree(self) -> int | None:
        """Degree, or None for the zero polynomial (minus infinity)."""
        return len(self.coeffs) - 1 if self.coeffs else None

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, int):
            other = PolyZ.const(other)
        if not isinstance(other, PolyZ):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __getitem__(self, k: int) -> int:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else 0

    @staticmethod
    def _coerce(x) -> "PolyZ":
        return x if isinstance(x, PolyZ) else PolyZ.const(x)

    def __add__(self, other):
        other = self._coerce(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        return PolyZ(x + (b[i] if i < len(b) else 0) for i, x in enumerate(a))

    __radd__ = __add__

    def __neg__(self):
        return PolyZ(-x for x in self.coeffs)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return PolyZ()
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return PolyZ(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative powers are not polynomials")
        out, base = PolyZ.const(1), self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def shift(self, k: int) -> "PolyZ":
        """Multiply by q^k (k >= 0)."""
        return PolyZ((0,) * k + self.coeffs) if self.coeffs else self

    def reflect(self, n: int) -> "PolyZ":
        """q^n * P(1/q); requires n >= degree."""
        if not self.coeffs:
            return self
        if n < self.degree:
            raise ValueError(f"q^{n} P(1/q) is not a polynomial for degree {self.degree}")
        out = [0] * (n + 1)
        for i, c in enumerate(self.coeffs):
            out[n - i] = c
        return PolyZ(out)

    def truncate(self, k: int) -> "PolyZ":
        """Terms of degree <= k."""
        return PolyZ(self.coeffs[: max(k + 1, 0)])

    def __repr__(self):
        return f"PolyZ({list(self.coeffs)})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if not c:
                continue
            mag = abs(c)
            if k == 0:
                body = str(mag)
            else:
                body = ("" if mag == 1 else str(mag)) + ("q" if k == 1 else f"q^{k}")
            if not parts:
                parts.append(("-" if c < 0 else "") + body)
            else:
                parts.append(("- " if c < 0 else "+ ") + body)
        return " ".join(parts)

    _TERM = re.compile(r"([+-]?)\s*(\d*)\s*(q(?:\^(\d+))?)?")

    @classmethod
    def parse(cls, text: str) -> "PolyZ":
        """Inverse of ``str``: accepts sums like ``"3q^2 - q + 1"``."""
        s = text.replace(" ", "")
        if s in ("", "0"):
            return cls()
        coeffs: dict[int, int] = {}
        pos = 0
        while pos < len(s):
            m = cls._TERM.match(s, pos)
            if not m or m.end() == pos:
                raise ValueError(f"cannot parse polynomial {text!r}")
            sign, num, qpart, exp = m.groups()
            if not num and not qpart:
                raise ValueError(f"cannot parse polynomial {text!r}")
            c = int(num) if num else 1
            if sign == "-":
                c = -c
            k = (int(exp) if exp else 1) if qpart else 0
            coeffs[k] = coeffs.get(k, 0) + c
            pos = m.end()
        top = max(coeffs)
        return cls(coeffs.get(i, 0) for i in range(top + 1))

    def to_json(self) -> list[int]:
        return list(self.coeffs)

    @classmethod
    def from_json(cls, data) -> "PolyZ":
        return cls(data)


ZERO = PolyZ()
ONE = PolyZ.const(1)
Q = PolyZ.q()
