"""Edge-labelled rooted forests (Bott diagrams) and their canonical codes.

Vertices are numbered 1..n. ``parent[v - 1]`` is the parent of v, or 0 for a
root; ``label[v - 1]`` is the positive mark on the edge from v to its parent,
or 0 for a root.

The canonical code is an AHU-style encoding built from nested tuples. The code
of a vertex is the sorted tuple of ``(edge label, child code)`` pairs over its
children, so a leaf is ``()``. The code of a forest is the sorted tuple of its
root codes. Python orders nested tuples totally, which is all the sorting needs.
"""

from __future__ import annotations

from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from functools import cache

from .errors import ParseError
from .textio import LineReader

CanonicalCode = tuple


class InvalidDiagram(ValueError):
    pass


@dataclass(frozen=True)
class BottDiagram:
    parent: tuple[int, ...]
    label: tuple[int, ...]

    def __post_init__(self):
        parent = tuple(int(p) for p in self.parent)
        label = tuple(int(q) for q in self.label)
        object.__setattr__(self, "parent", parent)
        object.__setattr__(self, "label", label)
        n = len(parent)
        if len(label) != n:
            raise InvalidDiagram(f"{n} parents but {len(label)} labels")
        for v, (p, q) in enumerate(zip(parent, label), start=1):
            if not 0 <= p <= n:
                raise InvalidDiagram(f"parent of {v} is {p}, outside 0..{n}")
            if p == v:
                raise InvalidDiagram(f"vertex {v} is its own parent")
            if p == 0 and q != 0:
                raise InvalidDiagram(f"root {v} carries label {q}")
            if p != 0 and q < 1:
                raise InvalidDiagram(f"edge {v}-{p} has non-positive label {q}")
        _depths(parent)

    @property
    def n(self) -> int:
        return len(self.parent)

    @classmethod
    def edgeless(cls, n: int) -> BottDiagram:
        return cls((0,) * n, (0,) * n)

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int, int]]) -> BottDiagram:
        """Edges given as (child, parent, label)."""
        parent = [0] * n
        label = [0] * n
        for v, p, q in edges:
            if parent[v - 1]:
                raise InvalidDiagram(f"vertex {v} given two parents")
            parent[v - 1] = p
            label[v - 1] = q
        return cls(tuple(parent), tuple(label))

    def roots(self) -> list[int]:
        return [v for v, p in enumerate(self.parent, start=1) if p == 0]

    def children(self) -> list[list[int]]:
        """children()[v] lists the children of v; index 0 lists the roots."""
        out: list[list[int]] = [[] for _ in range(self.n + 1)]
        for v, p in enumerate(self.parent, start=1):
            out[p].append(v)
        return out

    def edges(self) -> list[tuple[int, int, int]]:
        return [(v, p, q) for v, (p, q) in enumerate(zip(self.parent, self.label), start=1) if p]


def _depths(parent: Sequence[int]) -> list[int]:
    n = len(parent)
    depth = [-1] * (n + 1)
    for start in range(1, n + 1):
        path = []
        v = start
        while v and depth[v] < 0:
            if v in path:
                raise InvalidDiagram(f"cycle through vertex {v}")
            path.append(v)
            v = parent[v - 1]
        base = depth[v] if v else -1
        for u in reversed(path):
            base += 1
            depth[u] = base
    return depth[1:]


def depths(d: BottDiagram) -> list[int]:
    """depths(d)[v - 1] is the distance from v to its root."""
    return _depths(d.parent)


def levels(d: BottDiagram) -> list[list[int]]:
    """The partition A_0, ..., A_r by depth; empty forest gives []."""
    dep = depths(d)
    if not dep:
        return []
    out: list[list[int]] = [[] for _ in range(max(dep) + 1)]
    for v, k in enumerate(dep, start=1):
        out[k].append(v)
    return out


def vertex_codes(d: BottDiagram) -> list[CanonicalCode]:
    """Code of the subtree hanging from each vertex (index v - 1)."""
    kids = d.children()
    dep = depths(d)
    codes: list = [None] * d.n
    for v in sorted(range(1, d.n + 1), key=lambda u: -dep[u - 1]):
        codes[v - 1] = tuple(sorted((d.label[c - 1], codes[c - 1]) for c in kids[v]))
    return codes


def canonical_code(d: BottDiagram) -> CanonicalCode:
    codes = vertex_codes(d)
    return tuple(sorted(codes[r - 1] for r in d.roots()))


def isomorphic(d1: BottDiagram, d2: BottDiagram) -> bool:
    return canonical_code(d1) == canonical_code(d2)


def strip_labels(d: BottDiagram) -> BottDiagram:
    """Same shape with every edge labelled 1."""
    return BottDiagram(d.parent, tuple(1 if p else 0 for p in d.parent))


def strip_code(code: CanonicalCode) -> CanonicalCode:
    """Unlabelled version of a vertex code (every label set to 1)."""
    return tuple(sorted((1, strip_code(c)) for _, c in code))


@cache
def code_size(code: CanonicalCode) -> int:
    """Number of vertices in the tree whose root has this code."""
    return 1 + sum(code_size(c) for _, c in code)


def tree_codes(d: BottDiagram) -> list[CanonicalCode]:
    """Root codes of the components, in sorted order."""
    return list(canonical_code(d))


def from_tree_codes(trees: Iterable[CanonicalCode]) -> BottDiagram:
    """Build a forest from root codes, numbering vertices in preorder.

    Trees are laid out in the given order; children in code order.
    """
    parent: list[int] = []
    label: list[int] = []
    stack: list[tuple[int, int, CanonicalCode]] = []
    for code in reversed(list(trees)):
        stack.append((0, 0, code))
    while stack:
        p, q, code = stack.pop()
        parent.append(p)
        label.append(q)
        v = len(parent)
        for lab, child in reversed(code):
            stack.append((v, lab, child))
    return BottDiagram(tuple(parent), tuple(label))


def from_code(code: CanonicalCode) -> BottDiagram:
    return from_tree_codes(code)


def components(d: BottDiagram) -> list[BottDiagram]:
    """Each connected component as its own diagram, roots in increasing order."""
    kids = d.children()
    out = []
    for r in d.roots():
        order = []
        stack = [r]
        while stack:
            v = stack.pop()
            order.append(v)
            stack.extend(reversed(kids[v]))
        new = {v: i for i, v in enumerate(order, start=1)}
        out.append(BottDiagram(
            tuple(new.get(d.parent[v - 1], 0) for v in order),
            tuple(d.label[v - 1] for v in order),
        ))
    return out


def disjoint_union(parts: Iterable[BottDiagram]) -> BottDiagram:
    parent: list[int] = []
    label: list[int] = []
    for part in parts:
        off = len(parent)
        parent.extend(p + off if p else 0 for p in part.parent)
        label.extend(part.label)
    return BottDiagram(tuple(parent), tuple(label))


def format_diagram(d: BottDiagram) -> str:
    return f"{d.n}\n{' '.join(map(str, d.parent))}\n{' '.join(map(str, d.label))}\n"


def read_diagram(reader: LineReader) -> BottDiagram:
    start = reader.lineno
    (n,) = reader.ints("vertex count", count=1, minimum=0)
    parent = reader.ints("parent line", count=n, minimum=0)
    label = reader.ints("label line", count=n, minimum=0)
    try:
        return BottDiagram(tuple(parent), tuple(label))
    except InvalidDiagram as exc:
        raise ParseError(start, 1, f"invalid diagram: {exc}") from None


def parse_diagram(text: str) -> BottDiagram:
    reader = LineReader(text)
    d = read_diagram(reader)
    reader.expect_end()
    return d
