"""Right and left systems (J, s, t, M_st) for w, their axioms, and the matchings they induce."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Callable

from .coxeter import CoxeterSystem, Element
from .matchings import Matching, enumerate_special_matchings, is_special, multiplication_matching
from .poset import BruhatInterval, build_interval

RIGHT_AXIOMS = ("R1", "R2", "R3", "R4", "R5")
LEFT_AXIOMS = ("L1", "L2", "L3", "L4", "L5")


class LengthsDoNotAdd(ArithmeticError):
    pass


@dataclass(frozen=True)
class DihedralSystem:
    """A candidate right or left system for ``w``.

    ``dihedral`` is the interval [e, w_0(s, t)] below w and ``m_st`` a
    matching of it.
    """

    kind: str  # "right" or "left"
    w: Element
    J: frozenset
    s: int
    t: int
    dihedral: BruhatInterval
    m_st: Matching

    def __post_init__(self):
        if self.kind not in ("right", "left"):
            raise ValueError("kind must be 'right' or 'left'")

    def apply_dihedral(self, y: Element) -> Element:
        """M_st(y) for y in the dihedral interval."""
        D = self.dihedral
        if y not in D.index:
            raise LengthsDoNotAdd(f"{y} lies outside [e, {D.top_element}]")
        return D.elements[self.m_st(D.index[y])]

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "J": sorted(self.J),
            "s": self.s,
            "t": self.t,
            "dihedral_partner": list(self.m_st.partner),
        }


@dataclass(frozen=True)
class AxiomReport:
    kind: str
    axioms: dict

    @property
    def ok(self) -> bool:
        return all(self.axioms.values())

    def __bool__(self):
        return self.ok

    @property
    def failed(self) -> list[str]:
        return [k for k, v in self.axioms.items() if not v]


def system_report_json(system: DihedralSystem, report: AxiomReport) -> dict:
    out = system.to_json()
    out["axioms"] = dict(report.axioms)
    return out


def dihedral_interval(cs: CoxeterSystem, w: Element, s: int, t: int) -> BruhatInterval:
    """[e, w_0(s, t)] where w_0(s, t) is the maximum of W_{s,t} below w."""
    return build_interval(cs, cs.max_parabolic_below(w, (s, t)))


def make_system(cs: CoxeterSystem, kind: str, w: Element, J, s: int, t: int, m_st) -> DihedralSystem:
    """Build a candidate; ``m_st`` is a Matching of the dihedral interval or a dict Element -> Element."""
    D = dihedral_interval(cs, w, s, t)
    if not isinstance(m_st, Matching):
        m_st = Matching(tuple(D.index[m_st[x]] for x in D.elements))
    return DihedralSystem(kind, w, frozenset(J), s, t, D, m_st)


def _mul(a: Element, b: Element) -> Element:
    """a . b, requiring lengths to add."""
    c = a * b
    if c.length != a.length + b.length:
        raise LengthsDoNotAdd(f"{a} . {b} is not length-additive")
    return c


def _commutes(D: BruhatInterval, M: Matching, f: Callable[[Element], Element]) -> bool:
    """M commutes with f on D: both compositions defined and equal everywhere on D."""
    els, idx = D.elements, D.index
    for i, x in enumerate(els):
        fx = f(x)
        if fx not in idx:
            return False
        if els[M(idx[fx])] is not f(els[M(i)]):
            return False
    return True


def _image(sys_: DihedralSystem, u: Element) -> Element:
    cs = sys_.w.system
    J, s, t = sys_.J, sys_.s, sys_.t
    st = (s, t)
    if sys_.kind == "right":
        uJ, u_J = cs.decompose_right(u, J)
        a, b = cs.decompose_right(uJ, st)
        c, d = cs.decompose_left(u_J, (s,))
        return _mul(_mul(a, sys_.apply_dihedral(_mul(b, c))), d)
    Ju, u_J = cs.decompose_left(u, J)
    a, b = cs.decompose_right(Ju, (s,))
    c, d = cs.decompose_left(u_J, st)
    return _mul(_mul(a, sys_.apply_dihedral(_mul(b, c))), d)


def check_system(cs: CoxeterSystem, candidate: DihedralSystem, interval: BruhatInterval | None = None) -> AxiomReport:
    """Evaluate the five axioms of a right (R1-R5) or left (L1-L5) system."""
    w, J, s, t = candidate.w, candidate.J, candidate.s, candidate.t
    D, M = candidate.dihedral, candidate.m_st
    right = candidate.kind == "right"
    names = RIGHT_AXIOMS if right else LEFT_AXIOMS
    leq = cs.bruhat_leq
    gen = cs.generator
    res = {}

    # 1: shape of (J, s, t) and of M_st
    a1 = s in J and t not in J and all(0 <= r < cs.rank for r in J) and is_special(D, M)
    if a1:
        a1 = D.elements[M(D.bottom)] is gen(s)
        tt = gen(t)
        if a1 and tt in D.index:
            want = tt.right(s) if right else tt.left(s)
            a1 = D.elements[M(D.index[tt])] is want
    res[names[0]] = bool(a1)

    # 2: the defining product stays below w
    if interval is None:
        interval = build_interval(cs, w)
    a2 = True
    for u in interval.elements:
        try:
            if not leq(_image(candidate, u), w):
                a2 = False
                break
        except LengthsDoNotAdd:
            a2 = False
            break
    res[names[1]] = a2

    # 3: generators of J below the J-part commute with s
    if right:
        ref = cs.decompose_right(w, J)[0]
    else:
        ref = cs.decompose_left(w, J)[1]
    res[names[2]] = all(r == s or cs.m(r, s) == 2 for r in J if leq(gen(r), ref))

    # 4: behaviour forced by the {s,t}-part
    if right:
        g = cs.decompose_right(ref, (s, t))[0]
        same, other = "right", "left"
    else:
        g = cs.decompose_left(ref, (s, t))[1]
        same, other = "left", "right"
    s_le, t_le = leq(gen(s), g), leq(gen(t), g)

    def mult(side, r):
        return (lambda x: x.right(r)) if side == "right" else (lambda x: x.left(r))

    if s_le and t_le:
        if s in (D.top_element.right_descents if same == "right" else D.top_element.left_descents):
            a4 = M == multiplication_matching(D, s, same)
        else:
            a4 = False
    elif s_le:
        a4 = _commutes(D, M, mult(other, s))
    elif t_le:
        a4 = _commutes(D, M, mult(other, t))
    else:
        a4 = True
    res[names[3]] = a4

    # 5: commutation with multiplication by s on the side of the J-part
    if right:
        part = cs.decompose_left(cs.decompose_right(w, J)[1], (s,))[1]
    else:
        part = cs.decompose_right(cs.decompose_left(w, J)[0], (s,))[0]
    res[names[4]] = not leq(gen(s), part) or _commutes(D, M, mult(same, s))
    return AxiomReport(candidate.kind, res)


def check_right_system(cs: CoxeterSystem, candidate: DihedralSystem, interval=None) -> AxiomReport:
    if candidate.kind != "right":
        raise ValueError("not a right-system candidate")
    return check_system(cs, candidate, interval)


def check_left_system(cs: CoxeterSystem, candidate: DihedralSystem, interval=None) -> AxiomReport:
    if candidate.kind != "left":
        raise ValueError("not a left-system candidate")
    return check_system(cs, candidate, interval)


def matching_from_system(interval: BruhatInterval, candidate: DihedralSystem) -> Matching:
    """The matching of [e, w] associated with a system; raises if lengths fail to add."""
    if interval.top_element is not candidate.w:
        raise ValueError("interval top differs from the system's w")
    partner = []
    for u in interval.elements:
        v = _image(candidate, u)
        if v not in interval.index:
            raise LengthsDoNotAdd(f"image of {u} is not below w")
        partner.append(interval.index[v])
    return Matching(tuple(partner))


matching_from_right_system = matching_from_system
matching_from_left_system = matching_from_system


def acts_as(interval: BruhatInterval, M: Matching, r: int, s: int, side: str) -> bool:
    """Whether M acts as multiplication by s (on ``side``) on [e, w_0(s, r)]."""
    cs = interval.system
    top = cs.max_parabolic_below(interval.top_element, (s, r))
    for v in interval.down_set(interval.index[top]):
        x = interval.elements[v]
        y = x.left(s) if side == "left" else x.right(s)
        if interval.elements[M(v)] is not y:
            return False
    return True


def mirror(candidate: DihedralSystem) -> DihedralSystem:
    """The system of the opposite kind for w^{-1}, with M_st conjugated by inversion."""
    cs = candidate.w.system
    winv = candidate.w.inverse()
    D = candidate.dihedral
    m = {x.inverse(): D.elements[candidate.m_st(i)].inverse() for i, x in enumerate(D.elements)}
    kind = "left" if candidate.kind == "right" else "right"
    return make_system(cs, kind, winv, candidate.J, candidate.s, candidate.t, m)


def find_system_for_matching(interval: BruhatInterval, M: Matching) -> DihedralSystem | None:
    """A right or left system whose associated matching is M, or None.

    Tries the natural J first (s together with every r where M acts as
    left, resp. right, multiplication by s on [e, w_0(s, r)]), then every J.
    """
    cs = interval.system
    w = interval.top_element
    s = interval.elements[M.seed(interval)].word[0]
    others = [r for r in cs.generators if r != s]
    dihedral_cache = {}

    def dihedral_matchings(t):
        got = dihedral_cache.get(t)
        if got is None:
            D = dihedral_interval(cs, w, s, t)
            got = (D, [N for N in enumerate_special_matchings(D) if D.elements[N.seed(D)].word[0] == s])
            dihedral_cache[t] = got
        return got

    for kind in ("left", "right"):
        # right systems act as lambda_s on [e, w_0(s, r)] for r in J; left ones as rho_s
        side = "left" if kind == "right" else "right"
        natural = frozenset([s] + [r for r in others if acts_as(interval, M, r, s, side)])
        tried = set()
        orders = []
        for t in others:
            orders.append((natural - {t}, t))
        for k in range(len(others) + 1):
            for extra in combinations(others, k):
                for t in others:
                    if t not in extra:
                        orders.append((frozenset((s,) + extra), t))
        for J, t in orders:
            if (J, t) in tried:
                continue
            tried.add((J, t))
            D, cands = dihedral_matchings(t)
            for N in cands:
                cand = DihedralSystem(kind, w, J, s, t, D, N)
                try:
                    if matching_from_system(interval, cand) != M:
                        continue
                except (LengthsDoNotAdd, ValueError):
                    continue
                if check_system(cs, cand, interval):
                    return cand
    return None
