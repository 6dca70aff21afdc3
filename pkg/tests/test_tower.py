import random

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from bottclass import forest
from bottclass.errors import ParseError
from bottclass.forest import BottDiagram, InvalidDiagram
from bottclass.ring import RingElement, RingPresentation, multiply, product
from bottclass.tower import (
    MULTIPLE_Z_TERMS,
    ODD_COEFFICIENT,
    BottMatrix,
    NotZTrivial,
    biholomorphic,
    chern_in_z_basis,
    diagram,
    direct_z_trivial,
    format_matrix,
    is_z_trivial,
    parse_matrix,
    presentation,
    tower_of_diagram,
    z_basis,
)

import oracles


def lin(n, coefs):
    return RingElement.linear(n, coefs)


def chain(q, p):
    """Vertical three-stage diagram: q on the bottom edge, p on top."""
    return BottMatrix.from_entries(3, {(2, 1): 2 * q, (3, 2): 2 * p, (3, 1): 2 * p * q})


def prod_one_plus_2z(n):
    flat = RingPresentation.trivial(n)
    one = RingElement.one(n)
    return product((one + RingElement.gen(n, j).scale(2) for j in range(1, n + 1)), flat)


# ------------------------------------------------------------ presentation

def test_presentation_examples():
    assert presentation(BottMatrix.hirzebruch(2)).h == (RingElement.zero(2), lin(2, {1: 2}))
    assert presentation(BottMatrix.zeros(1)).h == (RingElement.zero(1),)
    q, p = 3, 5
    assert presentation(chain(q, p)).h == (
        RingElement.zero(3), lin(3, {1: 2 * q}), lin(3, {2: 2 * p, 1: 2 * p * q}))


# ----------------------------------------------------------------- z_basis

def test_z_basis_hirzebruch_f2():
    zb = z_basis(BottMatrix.hirzebruch(2))
    assert zb.z == (lin(2, {1: 1}), lin(2, {1: 1, 2: 1}))
    assert zb.sigma == {2: 1}
    assert zb.q == {2: 1}
    assert zb.levels == ((1,), (2,))


def test_z_basis_rejects_f1():
    with pytest.raises(NotZTrivial) as info:
        z_basis(BottMatrix.hirzebruch(1))
    assert (info.value.j, info.value.reason) == (2, ODD_COEFFICIENT)


def test_z_basis_fiber_product():
    zb = z_basis(BottMatrix.from_entries(3, {(2, 1): 2, (3, 1): 2}))
    assert zb.sigma == {2: 1, 3: 1}
    assert zb.q == {2: 1, 3: 1}
    assert zb.levels == ((1,), (2, 3))


@pytest.mark.parametrize("q,p", [(1, 1), (2, 3), (4, 1), (1, 6)])
def test_z_basis_chain(q, p):
    zb = z_basis(chain(q, p))
    assert zb.sigma == {2: 1, 3: 2}
    assert zb.q == {2: q, 3: p}
    assert zb.z[1] == lin(3, {2: 1, 1: q})


def test_z_basis_rejects_two_z_terms():
    m = BottMatrix.from_entries(3, {(3, 1): 2, (3, 2): 2})
    with pytest.raises(NotZTrivial) as info:
        z_basis(m)
    assert (info.value.j, info.value.reason) == (3, MULTIPLE_Z_TERMS)
    # h3 = 2 z1 + 2 z2 squares to 8 z1 z2, not zero
    h3 = presentation(m).h[2]
    assert multiply(h3, h3, presentation(m)) == RingElement(3, {0b011: 8})


def test_z_basis_negative_label_normalized():
    zb = z_basis(BottMatrix.hirzebruch(-6))
    assert zb.q == {2: 3}
    assert zb.sign == {2: -3}


def test_z_basis_chain_with_dualized_middle_row():
    # h2 = -2 z1, so x2 = z2 + z1; h3 = 2 z2 = 2 x2 - 2 x1
    zb = z_basis(BottMatrix.from_entries(3, {(2, 1): -2, (3, 2): 2, (3, 1): -2}))
    assert zb.sigma == {2: 1, 3: 2}
    assert zb.q == {2: 1, 3: 1}


def test_square_zero_generators_on_random_z_trivial_towers():
    rng = random.Random(3)
    for _ in range(100):
        n = rng.randint(1, 6)
        rows, sigma, signs = oracles.random_z_trivial_tower(rng, n)
        m = BottMatrix(n, tuple(map(tuple, rows)))
        zb = z_basis(m)
        pres = presentation(m)
        assert all(multiply(z, z, pres).is_zero() for z in zb.z)
        assert zb.sigma == sigma
        assert zb.q == {j: abs(s) for j, s in signs.items()}
        assert all(zb.sigma[j] < j for j in zb.sigma)


def test_acceptance_matches_parity_and_square_zero():
    rng = random.Random(17)
    accepted = 0
    for _ in range(300):
        m = oracles.random_matrix(rng, rng.randint(1, 6))
        assert is_z_trivial(m) == direct_z_trivial(m), m
        accepted += is_z_trivial(m)
    assert 0 < accepted < 300


# ----------------------------------------------------------------- diagram

def test_diagram_examples():
    assert diagram(BottMatrix.zeros(2)) == BottDiagram.edgeless(2)
    assert diagram(BottMatrix.hirzebruch(6)) == BottDiagram((0, 1), (0, 3))
    assert diagram(chain(2, 5)) == BottDiagram((0, 1, 2), (0, 2, 5))


def test_diagram_propagates_not_z_trivial():
    with pytest.raises(NotZTrivial):
        diagram(BottMatrix.hirzebruch(3))


@pytest.mark.parametrize("q", [1, 2, 3, 9])
def test_negation_invariance(q):
    assert diagram(BottMatrix.hirzebruch(2 * q)) == diagram(BottMatrix.hirzebruch(-2 * q))


# -------------------------------------------------------- tower_of_diagram

def test_tower_of_single_edge():
    assert tower_of_diagram(BottDiagram((0, 1), (0, 4))) == BottMatrix.hirzebruch(8)


def test_tower_of_chain():
    q, p = 3, 7
    assert tower_of_diagram(BottDiagram((0, 1, 2), (0, q, p))) == chain(q, p)


def test_tower_of_edgeless():
    assert tower_of_diagram(BottDiagram.edgeless(4)) == BottMatrix.zeros(4)


def test_tower_of_diagram_renumbers_parents_first():
    # vertex 1 hangs below vertex 3
    d = BottDiagram((3, 0, 0), (2, 0, 0))
    m = tower_of_diagram(d)
    assert forest.isomorphic(diagram(m), d)
    assert m == BottMatrix.from_entries(3, {(3, 2): 4})


def test_tower_of_invalid_diagram():
    with pytest.raises(InvalidDiagram):
        tower_of_diagram(BottDiagram((2, 1), (1, 1)))
    with pytest.raises(InvalidDiagram):
        tower_of_diagram(BottDiagram((0, 1), (0, 0)))


@settings(max_examples=200, deadline=None)
@given(seed=st.integers(0, 10**9), n=st.integers(1, 9))
def test_round_trip(seed, n):
    parent, label = oracles.random_forest(random.Random(seed), n, qmax=9)
    d = BottDiagram(parent, label)
    assert forest.isomorphic(diagram(tower_of_diagram(d)), d)


# ------------------------------------------------------------------- chern

@pytest.mark.parametrize("q", [-3, 1, 2, 5, 40])
def test_chern_in_z_basis_hirzebruch(q):
    assert chern_in_z_basis(BottMatrix.hirzebruch(2 * q)) == RingElement(
        2, {0: 1, 0b01: 2, 0b10: 2, 0b11: 4})


@pytest.mark.parametrize("n", [1, 2, 3, 5])
def test_chern_in_z_basis_zero_matrix(n):
    assert chern_in_z_basis(BottMatrix.zeros(n)) == prod_one_plus_2z(n)


def _sympy_chern_in_z(m):
    """c(M) expanded in x, then x_j = z_j - h_j/2 solved triangularly, mod z_j^2."""
    n = m.n
    xs = sympy.symbols(f"x1:{n + 1}")
    zs = sympy.symbols(f"z1:{n + 1}")
    h = [sum((m.a(j, k) * xs[k - 1] for k in range(1, j)), sympy.Integer(0)) for j in range(1, n + 1)]
    c = sympy.Integer(1)
    for j in range(n):
        c *= 1 + 2 * xs[j] + h[j]
    x_sub = {}
    for j in range(n):
        x_sub[xs[j]] = sympy.expand(zs[j] - sympy.Rational(1, 2) * h[j].subs(x_sub))
    expr = sympy.expand(c.subs(x_sub, simultaneous=True))
    poly = sympy.Poly(expr, *zs)
    terms = {}
    for exps, coef in poly.terms():
        if all(e <= 1 for e in exps):
            terms[sum(1 << i for i, e in enumerate(exps) if e)] = int(coef)
    return RingElement(n, terms)


@pytest.mark.parametrize("q,p", [(1, 1), (2, 3), (5, 2)])
def test_chern_in_z_basis_chain(q, p):
    expected = RingElement(3, {0: 1, 0b001: 2, 0b010: 2, 0b100: 2,
                               0b011: 4, 0b101: 4, 0b110: 4, 0b111: 8})
    assert chern_in_z_basis(chain(q, p)) == expected
    assert _sympy_chern_in_z(chain(q, p)) == expected


def test_chern_in_z_basis_against_sympy_substitution():
    rng = random.Random(23)
    for _ in range(15):
        n = rng.randint(1, 4)
        rows, _, _ = oracles.random_z_trivial_tower(rng, n, qbound=2)
        m = BottMatrix(n, tuple(map(tuple, rows)))
        assert chern_in_z_basis(m) == _sympy_chern_in_z(m)


# ----------------------------------------------------------- biholomorphic

def test_biholomorphic_examples():
    assert not biholomorphic(BottMatrix.hirzebruch(2), BottMatrix.hirzebruch(4))
    assert biholomorphic(BottMatrix.hirzebruch(2), BottMatrix.hirzebruch(-2))
    assert biholomorphic(BottMatrix.zeros(3), BottMatrix.zeros(3))


def test_biholomorphic_requires_z_trivial():
    with pytest.raises(NotZTrivial):
        biholomorphic(BottMatrix.hirzebruch(2), BottMatrix.hirzebruch(3))


def test_biholomorphic_across_numberings():
    # the P1 x F_4 factor can sit on stages (1,2) or (1,3)
    a = BottMatrix.from_entries(3, {(2, 1): 4})
    b = BottMatrix.from_entries(3, {(3, 1): 4})
    c = BottMatrix.from_entries(3, {(3, 2): 4})
    assert biholomorphic(a, b) and biholomorphic(b, c)
    assert not biholomorphic(a, BottMatrix.from_entries(3, {(3, 2): 2}))


# ------------------------------------------------------------------- text

def test_format_matrix():
    assert format_matrix(BottMatrix.hirzebruch(2)) == "2\n2\n"
    assert format_matrix(chain(1, 2)) == "3\n2\n4 4\n"
    assert format_matrix(BottMatrix.zeros(1)) == "1\n"


@settings(max_examples=50)
@given(seed=st.integers(0, 10**6), n=st.integers(1, 7))
def test_matrix_round_trip(seed, n):
    m = oracles.random_matrix(random.Random(seed), n)
    assert parse_matrix(format_matrix(m)) == m


@pytest.mark.parametrize("text,line,col", [
    ("", 1, 1),
    ("2\n", 2, 1),
    ("3\n2\n4 x\n", 3, 3),
    ("3\n2\n4 4 4\n", 3, 5),
    ("0\n", 1, 1),
    ("2\n2\n\n7\n", 4, 1),
])
def test_parse_matrix_errors(text, line, col):
    with pytest.raises(ParseError) as info:
        parse_matrix(text)
    assert (info.value.line, info.value.column) == (line, col)
