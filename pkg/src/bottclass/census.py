"""Bott diagrams on n vertices up to isomorphism, with labels in 1..qmax.

Forests are grown one vertex at a time: every forest on n vertices comes from
one on n - 1 vertices by attaching a leaf (as a new root or under an existing
vertex), so extending each class of the previous size and deduplicating by
canonical code reaches every class. The growth works on canonical codes
directly, so no intermediate diagrams are built.
"""

from __future__ import annotations

from functools import lru_cache

from . import forest
from .forest import BottDiagram, CanonicalCode


@lru_cache(maxsize=None)
def _grow_vertex(code: CanonicalCode, qmax: int) -> frozenset:
    """Codes obtained by hanging one new leaf somewhere below (or at) this vertex."""
    out = {tuple(sorted(code + ((q, ()),))) for q in range(1, qmax + 1)}
    for i, (lab, child) in enumerate(code):
        if i and code[i - 1] == (lab, child):
            continue
        for g in _grow_vertex(child, qmax):
            out.add(tuple(sorted(code[:i] + ((lab, g),) + code[i + 1:])))
    return frozenset(out)


@lru_cache(maxsize=None)
def _classes(n: int, qmax: int) -> tuple[CanonicalCode, ...]:
    if n == 0:
        return ((),)
    seen: set[CanonicalCode] = set()
    for code in _classes(n - 1, qmax):
        seen.add(tuple(sorted(code + ((),))))
        for i, tree in enumerate(code):
            if i and code[i - 1] == tree:
                continue
            for g in _grow_vertex(tree, qmax):
                seen.add(tuple(sorted(code[:i] + (g,) + code[i + 1:])))
    return tuple(sorted(seen))


def enumerate_labelled(n: int, qmax: int) -> list[BottDiagram]:
    """One representative per class, in ascending canonical-code order."""
    if n < 1 or qmax < 1:
        raise ValueError("need n >= 1 and qmax >= 1")
    return [forest.from_code(c) for c in _classes(n, qmax)]


def enumerate_shapes(n: int) -> list[BottDiagram]:
    """Unlabelled rooted forests on n vertices (every edge labelled 1)."""
    return enumerate_labelled(n, 1)


def format_census(diagrams: list[BottDiagram], summary: bool = False) -> str:
    out = "\n".join(forest.format_diagram(d) for d in diagrams)
    if summary:
        out += f"\ncount={len(diagrams)}\n"
    return out
