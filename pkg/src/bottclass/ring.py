"""Exact arithmetic in Z[x1..xn] / (x_j^2 + x_j h_j) with h_j linear in x_1..x_{j-1}.

Every element is stored in normal form on the basis of squarefree monomials.
A monomial is encoded as a bitmask: bit ``j - 1`` set means ``x_j`` divides it.
"""

from __future__ import annotations

import re
from collections import Counter
from collections.abc import Iterable, Mapping
from dataclasses import dataclass, field

from .errors import ParseError

MAX_GENERATORS = 64


class PresentationMismatch(ValueError):
    """Raised when an element or monomial does not fit the presentation."""


def indices(mask: int) -> list[int]:
    """Return the sorted 1-based generator indices of a monomial bitmask."""
    out = []
    j = 1
    while mask:
        if mask & 1:
            out.append(j)
        mask >>= 1
        j += 1
    return out


def monomial(*idx: int) -> int:
    """Bitmask of the squarefree monomial x_{i1} x_{i2} ...; repeated indices are rejected."""
    mask = 0
    for i in idx:
        if i < 1:
            raise PresentationMismatch(f"generator index {i} < 1")
        bit = 1 << (i - 1)
        if mask & bit:
            raise PresentationMismatch(f"index {i} repeated; use reduce() for non-squarefree input")
        mask |= bit
    return mask


def term_key(mask: int) -> tuple[int, list[int]]:
    """Serialization order: degree first, then lexicographic index list."""
    return (mask.bit_count(), indices(mask))


class RingElement:
    """Integer combination of squarefree monomials in ``n`` generators.

    Treat instances as immutable. Ring multiplication needs a presentation,
    see :func:`multiply`; addition, negation and integer scaling do not.
    """

    __slots__ = ("n", "_terms", "_hash")

    def __init__(self, n: int, terms: Mapping[int, int] | None = None):
        self.n = n
        limit = 1 << n
        clean = {}
        for mask, coef in (terms or {}).items():
            if not 0 <= mask < limit:
                raise PresentationMismatch(f"monomial {indices(mask)} outside {n} generators")
            if coef:
                clean[mask] = int(coef)
        self._terms = clean
        self._hash = None

    @classmethod
    def zero(cls, n: int) -> RingElement:
        return cls(n)

    @classmethod
    def one(cls, n: int) -> RingElement:
        return cls(n, {0: 1})

    @classmethod
    def gen(cls, n: int, j: int) -> RingElement:
        if not 1 <= j <= n:
            raise PresentationMismatch(f"generator x{j} outside 1..{n}")
        return cls(n, {1 << (j - 1): 1})

    @classmethod
    def linear(cls, n: int, coefs: Mapping[int, int]) -> RingElement:
        """Build sum of coefs[j] * x_j (keys are 1-based)."""
        return cls(n, {monomial(j): c for j, c in coefs.items()})

    @property
    def terms(self) -> dict[int, int]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def coefficient(self, mask: int) -> int:
        return self._terms.get(mask, 0)

    def degree_set(self) -> set[int]:
        return {m.bit_count() for m in self._terms}

    def is_zero(self) -> bool:
        return not self._terms

    def is_linear(self) -> bool:
        return all(m.bit_count() == 1 for m in self._terms)

    def _check(self, other: RingElement) -> None:
        if not isinstance(other, RingElement) or other.n != self.n:
            raise PresentationMismatch("elements live over different generator counts")

    def __add__(self, other):
        if isinstance(other, int):
            other = RingElement(self.n, {0: other})
        self._check(other)
        acc = Counter(self._terms)
        acc.update(other._terms)
        return RingElement(self.n, acc)

    __radd__ = __add__

    def __neg__(self):
        return RingElement(self.n, {m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, k: int) -> RingElement:
        return RingElement(self.n, {m: k * c for m, c in self._terms.items()})

    def __eq__(self, other):
        if not isinstance(other, RingElement):
            return NotImplemented
        return self.n == other.n and self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.n, frozenset(self._terms.items())))
        return self._hash

    def __repr__(self):
        return f"RingElement({self.n}, {format_element(self)!r})"

    def __str__(self):
        return format_element(self)


@dataclass(frozen=True)
class RingPresentation:
    """The twisting classes h_1..h_n of a Bott tower, h_j linear in x_1..x_{j-1}."""

    n: int
    h: tuple[RingElement, ...]
    _gen_cache: dict = field(default_factory=dict, init=False, repr=False, compare=False)

    def __post_init__(self):
        if not 0 <= self.n <= MAX_GENERATORS:
            raise PresentationMismatch(f"n={self.n} outside 0..{MAX_GENERATORS}")
        if len(self.h) != self.n:
            raise PresentationMismatch(f"expected {self.n} twisting classes, got {len(self.h)}")
        for j, hj in enumerate(self.h, start=1):
            if hj.n != self.n:
                raise PresentationMismatch(f"h{j} lives over {hj.n} generators, not {self.n}")
            if not hj.is_linear():
                raise PresentationMismatch(f"h{j} is not linear")
            if any(m >> (j - 1) for m, _ in hj.items()):
                raise PresentationMismatch(f"h{j} involves a generator of index >= {j}")

    @classmethod
    def trivial(cls, n: int) -> RingPresentation:
        return cls(n, tuple(RingElement.zero(n) for _ in range(n)))

    @classmethod
    def from_coefficients(cls, n: int, rows: Iterable[Mapping[int, int]]) -> RingPresentation:
        """rows[j-1] maps k -> a_{jk} for k < j."""
        return cls(n, tuple(RingElement.linear(n, r) for r in rows))

    def twist(self, j: int) -> list[tuple[int, int]]:
        """[(k, a_jk)] with a_jk != 0, in increasing k."""
        return sorted((m.bit_length(), c) for m, c in self.h[j - 1].items())

    def check(self, *elems: RingElement) -> None:
        for e in elems:
            if not isinstance(e, RingElement) or e.n != self.n:
                raise PresentationMismatch("element does not belong to this presentation")

    def mono_times_gen(self, mask: int, j: int) -> dict[int, int]:
        """Normal form of x_mask * x_j.

        When x_j already divides the monomial, x_j^2 = -x_j h_j turns the
        product into -sum_k a_jk x_mask x_k with k < j, so the recursion stops.
        """
        key = (mask, j)
        hit = self._gen_cache.get(key)
        if hit is not None:
            return hit
        bit = 1 << (j - 1)
        if not mask & bit:
            out = {mask | bit: 1}
        else:
            acc: Counter = Counter()
            for k, a in self.twist(j):
                for m, c in self.mono_times_gen(mask, k).items():
                    acc[m] -= a * c
            out = {m: c for m, c in acc.items() if c}
        self._gen_cache[key] = out
        return out


def _times_gen(terms: Mapping[int, int], j: int, pres: RingPresentation) -> dict[int, int]:
    acc: Counter = Counter()
    for m, c in terms.items():
        for m2, c2 in pres.mono_times_gen(m, j).items():
            acc[m2] += c * c2
    return {m: c for m, c in acc.items() if c}


def reduce(raw_terms: Mapping[Iterable[int], int], pres: RingPresentation) -> RingElement:
    """Normal form of a polynomial given on arbitrary (non-squarefree) monomials.

    Keys of ``raw_terms`` are sequences of 1-based generator indices, with
    repetition meaning powers: ``(2, 2, 1)`` is x_2^2 x_1. The highest squared
    index is substituted first via x_j^2 -> -x_j h_j.
    """
    n = pres.n
    work: Counter = Counter()
    for mono, coef in raw_terms.items():
        exps = [0] * (n + 1)
        for i in mono:
            if not 1 <= i <= n:
                raise PresentationMismatch(f"index {i} outside 1..{n}")
            exps[i] += 1
        if coef:
            work[tuple(exps)] += coef
    twists = [None] + [pres.twist(j) for j in range(1, n + 1)]

    done: Counter = Counter()
    while work:
        exps, coef = work.popitem()
        if not coef:
            continue
        top = next((j for j in range(n, 0, -1) if exps[j] >= 2), None)
        if top is None:
            mask = sum(1 << (j - 1) for j in range(1, n + 1) if exps[j])
            done[mask] += coef
            continue
        for k, a in twists[top]:
            new = list(exps)
            new[top] -= 1
            new[k] += 1
            work[tuple(new)] -= a * coef
    return RingElement(n, done)


def multiply(a: RingElement, b: RingElement, pres: RingPresentation) -> RingElement:
    """Product of two normal-form elements."""
    pres.check(a, b)
    if len(a._terms) < len(b._terms):
        a, b = b, a
    acc: Counter = Counter()
    for mb, cb in b.items():
        part = a._terms
        for j in indices(mb):
            part = _times_gen(part, j, pres)
            if not part:
                break
        for m, c in part.items():
            acc[m] += cb * c
    return RingElement(pres.n, acc)


def product(factors: Iterable[RingElement], pres: RingPresentation) -> RingElement:
    out = RingElement.one(pres.n)
    for f in factors:
        out = multiply(out, f, pres)
    return out


def total_chern(pres: RingPresentation) -> RingElement:
    """c(M) = prod_j (1 + 2 x_j + h_j)."""
    n = pres.n
    one = RingElement.one(n)
    return product((one + RingElement.gen(n, j).scale(2) + pres.h[j - 1] for j in range(1, n + 1)), pres)


def graded_component(e: RingElement, k: int) -> RingElement:
    """Terms of ``e`` whose monomial has exactly ``k`` generators."""
    return RingElement(e.n, {m: c for m, c in e.items() if m.bit_count() == k})


def format_element(e: RingElement, var: str = "x") -> str:
    if e.is_zero():
        return "0"
    parts = []
    for mask in sorted(e.terms, key=term_key):
        coef = e.coefficient(mask)
        if mask:
            parts.append(f"{coef}*" + "".join(f"{var}{i}" for i in indices(mask)))
        else:
            parts.append(str(coef))
    return " + ".join(parts)


_TERM = re.compile(r"(-?\d+)(?:\*((?:[a-z]\d+)+))?")
_FACTOR = re.compile(r"([a-z])(\d+)")


def parse_element(text: str, n: int, var: str = "x", line: int = 1) -> RingElement:
    """Inverse of :func:`format_element`; coefficients of repeated monomials add up."""
    text = text.rstrip("\n")
    if text == "0":
        return RingElement.zero(n)
    acc: Counter = Counter()
    col = 1
    for chunk in text.split(" + "):
        m = _TERM.fullmatch(chunk)
        if not m:
            raise ParseError(line, col, f"malformed term {chunk!r}")
        mask = 0
        if m.group(2):
            for f in _FACTOR.finditer(m.group(2)):
                name, idx = f.group(1), int(f.group(2))
                if name != var or not 1 <= idx <= n:
                    raise ParseError(line, col, f"unexpected factor {f.group(0)!r}")
                bit = 1 << (idx - 1)
                if mask & bit:
                    raise ParseError(line, col, f"repeated factor {f.group(0)!r}")
                mask |= bit
        acc[mask] += int(m.group(1))
        col += len(chunk) + 3
    return RingElement(n, acc)
