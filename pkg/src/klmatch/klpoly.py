"""Ordinary and parabolic Kazhdan-Lusztig R- and P-polynomials from the descent recursion.

A :class:`ParabolicKL` context fixes the parabolic subgroup generators ``H``
and the mode ``x`` ("q" or "minus1"). Memo tables live on the context and
are not thread-safe; use one context per thread.
"""

from __future__ import annotations

from typing import Iterable

from .coxeter import CoxeterSystem, Element
from .poly import ONE, Q, ZERO, PolyZ
from .poset import build_interval

X_MODES = ("q", "minus1")


def check_mode(x: str) -> str:
    if x not in X_MODES:
        raise ValueError(f"x-mode must be one of {X_MODES}, got {x!r}")
    return x


def unflagged_factor(x: str) -> PolyZ:
    """The factor q - 1 - x: equal to -1 when x = q and to q when x = -1."""
    return PolyZ.const(-1) if check_mode(x) == "q" else Q


def r_sequence(i: int) -> PolyZ:
    """The dihedral R-polynomial R_i for a length difference i >= 1 (closed form).

    >>> print(r_sequence(3))
    q^3 - 2q^2 + 2q - 1
    """
    if i < 1:
        raise ValueError("i must be at least 1")
    if i % 2:
        return (Q - 1) * PolyZ([(-1) ** k for k in range(i)])
    return (Q - 1) ** 2 * PolyZ([1 if k % 2 == 0 else 0 for k in range(i - 1)])


class ParabolicKL:
    """Word-based R^{H,x} and P^{H,x} for one system, one H and one x-mode."""

    def __init__(self, system: CoxeterSystem, H: Iterable[int] = (), x: str = "q", descent: str = "low"):
        self.system = system
        self.H = frozenset(H)
        for h in self.H:
            if not 0 <= h < system.rank:
                raise ValueError(f"generator {h} out of range")
        self.x = check_mode(x)
        if descent not in ("low", "high"):
            raise ValueError("descent must be 'low' or 'high'")
        self._pick = min if descent == "low" else max
        self.factor = unflagged_factor(x)
        self._R: dict[tuple[int, int], PolyZ] = {}
        self._P: dict[int, dict[Element, PolyZ]] = {}
        self._below: dict[int, list[Element]] = {}

    def __repr__(self):
        return f"ParabolicKL(H={sorted(self.H)}, x={self.x})"

    def in_quotient(self, w: Element) -> bool:
        return not (w.right_descents & self.H)

    def _require(self, *elems: Element):
        for w in elems:
            if not self.in_quotient(w):
                raise ValueError(f"{w} is not a minimal coset representative for H = {sorted(self.H)}")

    def R(self, u: Element, w: Element) -> PolyZ:
        """R^{H,x}_{u,w}."""
        self._require(u, w)
        return self._r(u, w)

    def _r(self, u: Element, w: Element) -> PolyZ:
        if u is w:
            return ONE
        if u.length >= w.length or not self.system.bruhat_leq(u, w):
            return ZERO
        key = (u.index, w.index)
        val = self._R.get(key)
        if val is not None:
            return val
        s = self._pick(w.left_descents)
        sw = w.left(s)
        su = u.left(s)
        if s in u.left_descents:
            val = self._r(su, sw)
        elif self.in_quotient(su):
            val = (Q - 1) * self._r(u, sw) + Q * self._r(su, sw)
        else:
            val = self.factor * self._r(u, sw)
        self._R[key] = val
        return val

    def quotient_below(self, w: Element) -> list[Element]:
        """Elements of [e, w] lying in W^H, sorted by length then word."""
        got = self._below.get(w.index)
        if got is None:
            interval = build_interval(self.system, w, self.H)
            got = [x for x, f in zip(interval.elements, interval.h) if f]
            self._below[w.index] = got
        return got

    def P_column(self, w: Element) -> dict[Element, PolyZ]:
        """P^{H,x}_{u,w} for every u in [e, w]^H, by downward induction on u."""
        self._require(w)
        col = self._P.get(w.index)
        if col is not None:
            return col
        below = self.quotient_below(w)
        leq = self.system.bruhat_leq
        col = {}
        for u in reversed(below):
            if u is w:
                col[u] = ONE
                continue
            d = w.length - u.length
            rhs = ZERO
            for z in below:
                if z.length > u.length and z in col and leq(u, z):
                    rhs = rhs + self._r(u, z) * col[z]
            # q^d P(1/q) - P = rhs with deg P <= (d-1)/2
            p = -rhs.truncate((d - 1) // 2)
            if rhs != p.reflect(d) - p:
                raise ArithmeticError(f"inversion identity has no solution at ({u}, {w})")
            col[u] = p
        self._P[w.index] = col
        return col

    def P(self, u: Element, w: Element) -> PolyZ:
        """P^{H,x}_{u,w}."""
        self._require(u, w)
        if not self.system.bruhat_leq(u, w):
            return ZERO
        return self.P_column(w)[u]

    def inversion_identity_holds(self, u: Element, w: Element) -> bool:
        """q^{l(w)-l(u)} P(1/q) equals the sum over z in [u, w]^H of R_{u,z} P_{z,w}."""
        if not self.system.bruhat_leq(u, w):
            return True
        col = self.P_column(w)
        total = sum((self._r(u, z) * col[z] for z in col if self.system.bruhat_leq(u, z)), ZERO)
        return col[u].reflect(w.length - u.length) == total

    def degree_bound_holds(self, u: Element, w: Element) -> bool:
        p = self.P(u, w)
        if u is w or not p:
            return True
        return 2 * p.degree <= w.length - u.length - 1


class OrdinaryKL:
    """Ordinary R and P: H empty, computed in both modes and required to agree."""

    def __init__(self, system: CoxeterSystem):
        self.system = system
        self.q_ctx = ParabolicKL(system, (), "q")
        self.m_ctx = ParabolicKL(system, (), "minus1")

    def R(self, u: Element, w: Element) -> PolyZ:
        a, b = self.q_ctx.R(u, w), self.m_ctx.R(u, w)
        if a != b:
            raise ArithmeticError(f"ordinary R differs between modes at ({u}, {w})")
        return a

    def P(self, u: Element, w: Element) -> PolyZ:
        a, b = self.q_ctx.P(u, w), self.m_ctx.P(u, w)
        if a != b:
            raise ArithmeticError(f"ordinary P differs between modes at ({u}, {w})")
        return a


def ordinary_R(system: CoxeterSystem, u: Element, w: Element) -> PolyZ:
    return OrdinaryKL(system).R(u, w)


def ordinary_P(system: CoxeterSystem, u: Element, w: Element) -> PolyZ:
    return OrdinaryKL(system).P(u, w)


# -- coset fast paths ----------------------------------------------------------

COSET_CASES = ("empty", "singleton", "chain_s", "chain_t", "full")


def classify_coset(system: CoxeterSystem, H: Iterable[int], u3: Element, s: int, t: int) -> str:
    """Shape of (W_{s,t} u3) intersected with W^H, for u3 in ^{s,t}W.

    ``chain_s`` is the chain through s.u3 (no right descent t), ``chain_t``
    the one through t.u3. Only u3, s.u3 and t.u3 need testing since the
    intersection is always one of the five listed shapes.
    """
    if u3.left_descents & {s, t}:
        raise ValueError(f"{u3} is not in the left quotient for {{s{s + 1}, s{t + 1}}}")
    H = frozenset(H)

    def member(v):
        return not (v.right_descents & H)

    if not member(u3):
        return "empty"
    a, b = member(u3.left(s)), member(u3.left(t))
    if a and b:
        return "full"
    if a:
        return "chain_s"
    if b:
        return "chain_t"
    return "singleton"


def singleton_formula(x: str, w2_length: int, r_base: PolyZ) -> PolyZ:
    return unflagged_factor(x) ** w2_length * r_base


def full_coset_formula(u2: Element, w2: Element, r_u3: PolyZ, r_pu3: PolyZ, p: int | None) -> PolyZ:
    """R_{u,w} for a coset contained in W^H, given at most one of s, t below w3.

    ``p`` is that generator (None if neither is below w3, in which case
    ``r_pu3`` must be zero).
    """
    i = w2.length - u2.length
    if i < -1:
        raise ValueError("length difference below -1 is impossible here")
    if p is None and r_pu3:
        raise ValueError("without p the second input must vanish")
    if i == -1:
        return r_pu3
    if i == 0:
        return r_u3 if u2 is w2 else (Q - 1) * r_pu3
    if i == 1:
        if p is not None and u2.right(p) is w2:
            return (Q - 1) * r_u3 + Q * r_pu3
        return (Q - 1) * r_u3
    return r_sequence(i) * r_u3 + Q * r_sequence(i - 1) * r_pu3


def d0_meets_longest(u2: Element, r: int, rbar: int) -> bool:
    """Whether l'.u2 is the longest element of W_{r, rbar}, l' being the letter not in D_L(u2)."""
    desc = u2.left_descents & {r, rbar}
    if len(desc) != 1:
        return False
    lbar = rbar if r in desc else r
    top = u2.left(lbar)
    return top.length > u2.length and {r, rbar} <= top.left_descents


def chain_coset_formula(
    x: str,
    u2: Element,
    w2: Element,
    r_u3: PolyZ,
    r_ru3: PolyZ,
    r: int,
    rbar: int,
    corrected_d0: bool = False,
) -> PolyZ:
    """R_{u,w} when the coset meets W^H in the chain through r.u3 (rbar.u3 not in W^H).

    The D0 branch with u2 != w2 is (q-1) R_{r u3, w3} as usually stated. That
    value is wrong when l'.u2 is the longest element of W_{s,t}: there the
    recursion step lands outside W^H and the factor is (q-1-x) instead.
    ``corrected_d0=True`` applies that factor.
    """
    f = unflagged_factor(x)
    i = w2.length - u2.length
    if i < -1:
        raise ValueError("length difference below -1 is impossible here")
    if i == -1:
        return r_ru3
    if i == 0:
        if u2 is w2:
            return r_u3
        if corrected_d0 and d0_meets_longest(u2, r, rbar):
            return f * r_ru3
        return (Q - 1) * r_ru3
    if i == 1:
        if rbar in w2.right_descents:
            return f * r_u3
        if u2.length:
            return (Q - 1) * r_u3
        return (Q - 1) * r_u3 + Q * r_ru3
    if i == 2:
        if r in w2.right_descents:
            return f * ((Q - 1) * r_u3 + Q * r_ru3)
        return (Q - 1) * (f * r_u3 + Q * r_ru3)
    return (Q - 1) * f ** (i - 2) * (f * r_u3 + Q * r_ru3)


def fast_path_R(
    ctx: ParabolicKL, u: Element, w: Element, s: int, t: int, corrected_d0: bool = False
) -> tuple[str, PolyZ] | None:
    """Evaluate R_{u,w} with the coset lemmas for the pair (s, t), when they apply.

    Returns ``(label, value)`` or None if the hypotheses fail (u not below w,
    empty coset, or both s and t below w3 for the full/chain formulas).
    Only R-values indexed by (g.u3, w3) are taken from ``ctx``.
    """
    system = ctx.system
    if not system.bruhat_leq(u, w):
        return None
    st = (s, t)
    u2, u3 = system.decompose_left(u, st)
    w2, w3 = system.decompose_left(w, st)
    case = classify_coset(system, ctx.H, u3, s, t)
    if case == "empty":
        return None
    if case == "singleton":
        return case, singleton_formula(ctx.x, w2.length, ctx.R(u3, w3))
    below = [g for g in st if system.bruhat_leq(system.generator(g), w3)]
    if len(below) > 1:
        return None
    i = w2.length - u2.length
    if case == "full":
        p = below[0] if below else None
        r_pu3 = ctx.R(u3.left(p), w3) if p is not None else ZERO
        return f"full D{i if i < 2 else 'i'}", full_coset_formula(u2, w2, ctx.R(u3, w3), r_pu3, p)
    r, rbar = (s, t) if case == "chain_s" else (t, s)
    label = f"chain D{i if i < 3 else 'i'}"
    if i == 0 and u2 is not w2 and d0_meets_longest(u2, r, rbar):
        label = "chain D0 (longest)"
    value = chain_coset_formula(ctx.x, u2, w2, ctx.R(u3, w3), ctx.R(u3.left(r), w3), r, rbar, corrected_d0)
    return label, value


# -- relations with ordinary polynomials -------------------------------------


def alternating_sum_check(system: CoxeterSystem, H: Iterable[int], u: Element, v: Element) -> bool:
    """P^{H,q}_{u,v} equals the sum over w in W_H of (-1)^{l(w)} P_{uw,v}."""
    H = frozenset(H)
    par = ParabolicKL(system, H, "q")
    ordinary = ParabolicKL(system, (), "q")
    lhs = par.P(u, v)
    rhs = ZERO
    for g in system.elements_up_to(max(v.length - u.length, 0), J=H):
        ug = u * g
        if system.bruhat_leq(ug, v):
            rhs = rhs + (-1) ** g.length * ordinary.P(ug, v)
    return lhs == rhs


def longest_shift_check(system: CoxeterSystem, H: Iterable[int], u: Element, v: Element) -> bool:
    """P^{H,-1}_{u,v} equals P_{u w0^H, v w0^H}; W_H must be finite."""
    H = frozenset(H)
    w0 = system.longest_parabolic(H)
    par = ParabolicKL(system, H, "minus1")
    ordinary = ParabolicKL(system, (), "q")
    return par.P(u, v) == ordinary.P(u * w0, v * w0)
