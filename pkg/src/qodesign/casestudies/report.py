"""Composition-size accounting for a model document's diagrams."""

from __future__ import annotations

import time
from dataclasses import dataclass

from ..model import ModelDocument


@dataclass(frozen=True)
class SizeEntry:
    diagram: str
    nodes: tuple  # NodeStat per composition node, outermost last
    max_cut: int
    seconds: float

    def format(self) -> str:
        parts = [
            f"{self.diagram}: max cut {self.max_cut}, "
            f"{len(self.nodes)} composition node(s), {self.seconds:.3f}s"
        ]
        for n in self.nodes:
            parts.append(f"  {n.op} cut {n.cut} ({n.detail})")
        return "\n".join(parts)


def size_report(doc: ModelDocument, diagrams=None) -> tuple:
    """Evaluate each diagram from a cold cache and record cut widths.

    The cut of a composition node is the number of interface objects the
    join runs over; the maximum over nodes is the width the evaluation has
    to sweep, the quantity that grows when a formulation carries explicit
    budget grids.
    """
    names = tuple(diagrams) if diagrams is not None else tuple(sorted(doc.diagrams))
    entries = []
    for name in names:
        doc.clear_cache()
        start = time.perf_counter()
        stats, _ = doc.diagram_stats(name)
        elapsed = time.perf_counter() - start
        max_cut = max((n.cut for n in stats), default=1)
        entries.append(SizeEntry(name, tuple(stats), max_cut, elapsed))
    return tuple(entries)
