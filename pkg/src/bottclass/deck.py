"""Cards, decks, and reconstruction of rooted forests from their decks.

The card at a root r is the forest with r deleted and r's children promoted to
roots; the labels on the deleted edges are lost. A deck holds one card per
root.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

from . import forest
from .errors import ParseError
from .forest import BottDiagram, CanonicalCode, code_size, strip_code
from .textio import LineReader


class InvalidDeck(ValueError):
    """The cards cannot come from a single forest."""


@dataclass(frozen=True)
class Deck:
    cards: tuple[BottDiagram, ...]

    def __len__(self):
        return len(self.cards)


@dataclass(frozen=True)
class Ambiguous:
    """Reconstruction known up to the labels on the edges ``unknown``.

    ``shape`` carries placeholder label 1 on those edges. Each unknown edge is
    named by its child vertex.
    """

    shape: BottDiagram
    unknown: frozenset[int]

    def unknown_edges(self) -> list[tuple[int, int]]:
        return [(v, self.shape.parent[v - 1]) for v in sorted(self.unknown)]


def card(d: BottDiagram, root: int) -> BottDiagram:
    """Delete ``root`` and promote its children; remaining vertices keep their order."""
    if d.parent[root - 1] != 0:
        raise ValueError(f"vertex {root} is not a root")
    keep = [v for v in range(1, d.n + 1) if v != root]
    new = {v: i for i, v in enumerate(keep, start=1)}
    parent = []
    label = []
    for v in keep:
        p = d.parent[v - 1]
        if p == root:
            parent.append(0)
            label.append(0)
        else:
            parent.append(new[p] if p else 0)
            label.append(d.label[v - 1])
    return BottDiagram(tuple(parent), tuple(label))


def make_deck(d: BottDiagram) -> Deck:
    roots = d.roots()
    if not roots:
        raise ValueError("the empty forest has no deck")
    return Deck(tuple(card(d, r) for r in roots))


def count_copies(f: BottDiagram, t: BottDiagram, labelled: bool = True) -> int:
    """Number of components of ``f`` isomorphic to the tree ``t``."""
    if len(t.roots()) != 1:
        raise ValueError("t must be a single tree")
    target = forest.canonical_code(t)[0]
    trees = forest.tree_codes(f)
    if not labelled:
        target = strip_code(target)
        trees = [strip_code(c) for c in trees]
    return sum(1 for c in trees if c == target)


def _deck_codes(d: BottDiagram, labelled: bool) -> Counter:
    return Counter(_card_code(c, labelled) for c in make_deck(d).cards)


def _card_code(c: BottDiagram, labelled: bool) -> CanonicalCode:
    code = forest.canonical_code(c)
    if not labelled:
        code = tuple(sorted(strip_code(t) for t in code))
    return code


def _single_card(trees: list[CanonicalCode], labelled: bool):
    # a fresh root joined to every tree of the card; root-edge labels are unknown
    shape = forest.from_tree_codes([tuple(sorted((1, t) for t in trees))])
    if not labelled:
        return shape
    unknown = frozenset(v for v, p in enumerate(shape.parent, start=1) if p == 1)
    return Ambiguous(shape, unknown)


def reconstruct(deck: Deck, labelled: bool = True) -> BottDiagram | Ambiguous:
    """Rebuild the forest whose deck is ``deck``.

    With ``labelled=False`` labels are ignored and the result has every edge
    labelled 1. A single labelled card determines everything except the labels
    on the root edges, reported as :class:`Ambiguous`.
    """
    cards = list(deck.cards)
    if not cards:
        raise InvalidDeck("empty deck")
    sizes = {c.n for c in cards}
    if len(sizes) != 1:
        raise InvalidDeck(f"cards have different sizes {sorted(sizes)}")

    hands = [list(_card_code(c, labelled)) for c in cards]
    k = len(hands)
    if k == 1:
        return _single_card(hands[0], labelled)

    candidates = {t for hand in hands for t in hand}
    if not candidates:
        raise InvalidDeck(f"{k} empty cards")
    biggest = max(code_size(t) for t in candidates)
    top = min(t for t in candidates if code_size(t) == biggest)
    assert any(top in hand for hand in hands)

    counts = [hand.count(top) for hand in hands]
    if all(c == k - 1 for c in counts):
        r = k
    else:
        r = max(counts)
        if set(counts) != {r - 1, r} or counts.count(r - 1) != r:
            raise InvalidDeck(f"copy counts {counts} of the largest tree do not fit r-1 / r")

    # the card at a copy of top is F with that copy replaced by its children
    hand = Counter(hands[counts.index(r - 1)])
    hand.subtract(child for _, child in top)
    if any(v < 0 for v in hand.values()):
        raise InvalidDeck("a card missing the largest tree lacks that tree's children")
    trees = sorted(hand.elements())
    trees.append(top)
    result = forest.from_tree_codes(sorted(trees))

    if _deck_codes(result, labelled) != Counter(_card_code(c, labelled) for c in cards):
        raise InvalidDeck("the only candidate forest does not reproduce this deck")
    return result


def format_deck(deck: Deck) -> str:
    return f"{len(deck.cards)}\n" + "\n".join(forest.format_diagram(c) for c in deck.cards)


def parse_deck(text: str) -> Deck:
    reader = LineReader(text)
    (k,) = reader.ints("card count", count=1, minimum=0)
    cards = []
    for i in range(k):
        if i:
            reader.blank(f"before card {i + 1}")
        cards.append(forest.read_diagram(reader))
    reader.expect_end()
    return Deck(tuple(cards))


def format_ambiguous(amb: Ambiguous) -> str:
    d = amb.shape
    labels = ["?" if v in amb.unknown else str(q) for v, q in enumerate(d.label, start=1)]
    edges = "".join(f" {v}-{p}" for v, p in amb.unknown_edges())
    return f"ambiguous\n{d.n}\n{' '.join(map(str, d.parent))}\n{' '.join(labels)}\nunknown:{edges}\n"


def parse_ambiguous(text: str) -> Ambiguous:
    reader = LineReader(text)
    if reader.next_line("'ambiguous'") != "ambiguous":
        raise ParseError(1, 1, "expected 'ambiguous'")
    (n,) = reader.ints("vertex count", count=1, minimum=1)
    parent = reader.ints("parent line", count=n, minimum=0)
    lineno = reader.lineno
    raw = reader.next_line("label line").split(" ")
    if len(raw) != n:
        raise ParseError(lineno, 1, f"label line: expected {n} entries, got {len(raw)}")
    label = []
    unknown = set()
    col = 1
    for v, tok in enumerate(raw, start=1):
        if tok == "?":
            unknown.add(v)
            label.append(1)
        elif tok.isdigit():
            label.append(int(tok))
        else:
            raise ParseError(lineno, col, f"bad label {tok!r}")
        col += len(tok) + 1
    lineno = reader.lineno
    line = reader.next_line("unknown edge list")
    if not line.startswith("unknown:"):
        raise ParseError(lineno, 1, "expected 'unknown:'")
    listed = {int(e.split("-")[0]) for e in line[len("unknown:"):].split()}
    if listed != unknown:
        raise ParseError(lineno, 1, "unknown edge list disagrees with the label line")
    reader.expect_end()
    try:
        shape = BottDiagram(tuple(parent), tuple(label))
    except forest.InvalidDiagram as exc:
        raise ParseError(2, 1, f"invalid diagram: {exc}") from None
    return Ambiguous(shape, frozenset(unknown))
