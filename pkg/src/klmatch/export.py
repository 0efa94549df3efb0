"""Graphviz DOT rendering of flagged Hasse diagrams, with an optional matching overlay."""

from __future__ import annotations

from .matchings import Matching
from .poset import BruhatInterval, GradedPoset


def vertex_label(poset: GradedPoset, v: int) -> str:
    if isinstance(poset, BruhatInterval):
        return repr(poset.elements[v])
    return str(v)


def to_dot(poset: GradedPoset, matching: Matching | None = None, name: str = "interval") -> str:
    """Hasse diagram drawn bottom-up.

    Flagged vertices are filled bullets and unflagged ones open circles;
    edges of ``matching`` are dashed with penwidth 3.
    """
    lines = [f'graph "{name}" {{', "  rankdir=BT;", '  node [shape=circle, width=0.18, fixedsize=true, label=""];']
    for v in range(poset.n):
        fill = "black" if poset.h[v] else "white"
        lines.append(f'  v{v} [style=filled, fillcolor={fill}, xlabel="{vertex_label(poset, v)}"];')
    by_rank: dict[int, list[int]] = {}
    for v in range(poset.n):
        by_rank.setdefault(poset.rank[v], []).append(v)
    for r in sorted(by_rank):
        lines.append("  { rank=same; " + " ".join(f"v{v};" for v in by_rank[r]) + " }")
    for a, b in poset.covers:
        if matching is not None and matching(a) == b:
            lines.append(f"  v{a} -- v{b} [style=dashed, penwidth=3];")
        else:
            lines.append(f"  v{a} -- v{b};")
    lines.append("}")
    return "\n".join(lines) + "\n"
