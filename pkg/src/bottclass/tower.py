"""Bott towers as strictly lower-triangular integer matrices.

Row j of the matrix lists a_{j1} .. a_{j,j-1}, the coefficients of the
twisting class h_j = sum_k a_jk x_k. A tower is Z-trivial when every h_j is
either zero or 2 q z_k for one earlier square-zero class z_k = x_k + h_k / 2;
that data is the tower's Bott diagram.
"""

from __future__ import annotations

from collections.abc import Mapping, Sequence
from dataclasses import dataclass

from . import forest
from .forest import BottDiagram, InvalidDiagram
from .ring import RingElement, RingPresentation, multiply, total_chern
from .textio import LineReader

ODD_COEFFICIENT = "odd-coefficient"
MULTIPLE_Z_TERMS = "multiple-z-terms"


class NotZTrivial(Exception):
    """The twisting class h_j fails the Z-triviality test."""

    def __init__(self, j: int, reason: str):
        super().__init__(f"not Z-trivial at j={j}: {reason}")
        self.j = j
        self.reason = reason


@dataclass(frozen=True)
class BottMatrix:
    n: int
    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(int(a) for a in r) for r in self.rows)
        object.__setattr__(self, "rows", rows)
        if self.n < 1:
            raise ValueError("a Bott tower needs n >= 1")
        if len(rows) != self.n:
            raise ValueError(f"expected {self.n} rows, got {len(rows)}")
        for j, r in enumerate(rows, start=1):
            if len(r) != j - 1:
                raise ValueError(f"row {j} must have {j - 1} entries, has {len(r)}")

    @classmethod
    def zeros(cls, n: int) -> BottMatrix:
        return cls(n, tuple((0,) * (j - 1) for j in range(1, n + 1)))

    @classmethod
    def from_entries(cls, n: int, entries: Mapping[tuple[int, int], int]) -> BottMatrix:
        """entries maps (j, k) with k < j to a_jk; missing entries are 0."""
        rows = [[0] * (j - 1) for j in range(1, n + 1)]
        for (j, k), a in entries.items():
            if not 1 <= k < j <= n:
                raise ValueError(f"entry ({j}, {k}) is not strictly lower triangular")
            rows[j - 1][k - 1] = a
        return cls(n, tuple(map(tuple, rows)))

    @classmethod
    def hirzebruch(cls, m: int) -> BottMatrix:
        """The surface F_m as a 2-stage tower."""
        return cls(2, ((), (m,)))

    def a(self, j: int, k: int) -> int:
        return self.rows[j - 1][k - 1] if k < j else 0


@dataclass(frozen=True)
class ZBasis:
    """Square-zero generators z_j and the diagram data read off from them.

    ``sign[j]`` is the signed multiplier s with h_j = 2 s z_sigma(j), before the
    dualization that makes the stored label ``q[j] = |s|`` positive.
    """

    z: tuple[RingElement, ...]
    sigma: dict[int, int]
    q: dict[int, int]
    sign: dict[int, int]
    levels: tuple[tuple[int, ...], ...]


def presentation(m: BottMatrix) -> RingPresentation:
    return RingPresentation.from_coefficients(
        m.n, ({k: a for k, a in enumerate(row, start=1) if a} for row in m.rows)
    )


def z_basis(m: BottMatrix) -> ZBasis:
    n = m.n
    # x_k = z_k - s_k z_sigma(k), so h_j rewrites in the z-basis row by row
    sigma: dict[int, int] = {}
    sign: dict[int, int] = {}
    z = []
    for j in range(1, n + 1):
        row = m.rows[j - 1]
        hz = [0] * (j - 1)
        for k, a in enumerate(row, start=1):
            if not a:
                continue
            hz[k - 1] += a
            if k in sigma:
                hz[sigma[k] - 1] -= a * sign[k]
        if any(c % 2 for c in hz):
            raise NotZTrivial(j, ODD_COEFFICIENT)
        support = [k for k, c in enumerate(hz, start=1) if c]
        if len(support) > 1:
            raise NotZTrivial(j, MULTIPLE_Z_TERMS)
        if support:
            k = support[0]
            sigma[j] = k
            sign[j] = hz[k - 1] // 2
        zj = {j: 1}
        for k, a in enumerate(row, start=1):
            if a:
                zj[k] = a // 2
        z.append(RingElement.linear(n, zj))
    q = {j: abs(s) for j, s in sign.items()}
    d = BottDiagram(
        tuple(sigma.get(j, 0) for j in range(1, n + 1)),
        tuple(q.get(j, 0) for j in range(1, n + 1)),
    )
    lv = tuple(tuple(a) for a in forest.levels(d))
    return ZBasis(tuple(z), sigma, q, sign, lv)


def is_z_trivial(m: BottMatrix) -> bool:
    try:
        z_basis(m)
    except NotZTrivial:
        return False
    return True


def direct_z_trivial(m: BottMatrix) -> bool:
    """Check 2 | h_j and h_j^2 = 0 for every j straight in the x-presentation."""
    pres = presentation(m)
    for j in range(1, m.n + 1):
        if any(a % 2 for a in m.rows[j - 1]):
            return False
        h = pres.h[j - 1]
        if not multiply(h, h, pres).is_zero():
            return False
    return True


def diagram(m: BottMatrix) -> BottDiagram:
    zb = z_basis(m)
    return BottDiagram(
        tuple(zb.sigma.get(j, 0) for j in range(1, m.n + 1)),
        tuple(zb.q.get(j, 0) for j in range(1, m.n + 1)),
    )


def tower_numbering(d: BottDiagram) -> list[int]:
    """Vertices sorted by (level, subtree code, index): parents precede children."""
    dep = forest.depths(d)
    codes = forest.vertex_codes(d)
    return sorted(range(1, d.n + 1), key=lambda v: (dep[v - 1], codes[v - 1], v))


def tower_of_diagram(d: BottDiagram) -> BottMatrix:
    """A tower realizing ``d``; h_j = 2 q_j z_sigma(j) unfolded into x-coordinates.

    Row j of the result belongs to the vertex ``tower_numbering(d)[j - 1]``.
    """
    if d.n < 1:
        raise InvalidDiagram("a Bott tower needs at least one vertex")
    order = tower_numbering(d)
    pos = {v: i for i, v in enumerate(order, start=1)}
    n = d.n
    h: list[list[int]] = []
    for j, v in enumerate(order, start=1):
        row = [0] * n
        p = d.parent[v - 1]
        if p:
            s = pos[p]
            q = d.label[v - 1]
            row[s - 1] += 2 * q
            for k, a in enumerate(h[s - 1], start=1):
                row[k - 1] += q * a
        h.append(row)
    return BottMatrix(n, tuple(tuple(h[j - 1][: j - 1]) for j in range(1, n + 1)))


def chern_in_z_basis(m: BottMatrix) -> RingElement:
    """Total Chern class rewritten in z_1..z_n, as an element of Z[z]/(z_j^2).

    Substitutes x_j = z_j - s_j z_sigma(j) into the x-basis normal form of c(M);
    the substitution is a ring isomorphism, so the result is well defined.
    """
    zb = z_basis(m)
    n = m.n
    flat = RingPresentation.trivial(n)
    x_in_z = []
    for j in range(1, n + 1):
        coefs = {j: 1}
        if j in zb.sigma:
            coefs[zb.sigma[j]] = -zb.sign[j]
        x_in_z.append(RingElement.linear(n, coefs))
    out = RingElement.zero(n)
    for mask, coef in total_chern(presentation(m)).items():
        term = RingElement.one(n)
        j = 1
        while mask:
            if mask & 1:
                term = multiply(term, x_in_z[j - 1], flat)
            mask >>= 1
            j += 1
        out = out + term.scale(coef)
    return out


def biholomorphic(m1: BottMatrix, m2: BottMatrix) -> bool:
    return forest.canonical_code(diagram(m1)) == forest.canonical_code(diagram(m2))


def format_matrix(m: BottMatrix) -> str:
    lines = [str(m.n)] + [" ".join(map(str, r)) for r in m.rows[1:]]
    return "\n".join(lines) + "\n"


def parse_matrix(text: str) -> BottMatrix:
    reader = LineReader(text)
    (n,) = reader.ints("dimension", count=1, minimum=1)
    rows: list[Sequence[int]] = [()]
    for j in range(2, n + 1):
        rows.append(tuple(reader.ints(f"row {j}", count=j - 1)))
    reader.expect_end()
    return BottMatrix(n, tuple(rows))

