from fractions import Fraction

import numpy as np
import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from k3lat import exact_linalg as xl
from k3lat.catalog import a2, e8_minus, hyperbolic_U
from k3lat.lattice import (IntLattice, direct_sum, disc_b, disc_q, discriminant_group, in_dual,
                           is_even, is_unimodular, sublattice)


@st.composite
def even_grams(draw, n_lo=1, n_hi=4):
    n = draw(st.integers(n_lo, n_hi))
    G = [[0] * n for _ in range(n)]
    for i in range(n):
        G[i][i] = 2 * draw(st.integers(-4, 4))
        for j in range(i + 1, n):
            G[i][j] = G[j][i] = draw(st.integers(-3, 3))
    if xl.det(G) == 0:
        G = xl.mat_add(G, xl.mat_scale(2 * n + 8, xl.identity(n)))
    if xl.det(G) == 0:
        G[0][0] += 2
    return G


def test_validation():
    with pytest.raises(ValueError):
        IntLattice("bad", [[2, 1], [0, 2]])
    with pytest.raises(ValueError):
        IntLattice("deg", [[2, 2], [2, 2]])
    with pytest.raises(ValueError):
        IntLattice("lab", [[2]], ("a", "b"))


def test_basic_invariants():
    U = hyperbolic_U()
    assert U.signature == (1, 1) and U.det == -1 and U.even and U.unimodular
    A = a2()
    assert A.det == 3 and discriminant_group(A).invariant_factors == (3,)
    assert e8_minus().unimodular


@given(even_grams())
def test_group_order_is_abs_det(G):
    L = IntLattice("L", G)
    D = discriminant_group(L)
    assert D.order == abs(L.det)
    from sympy.matrices.normalforms import smith_normal_form
    S = smith_normal_form(sympy.Matrix(G), domain=sympy.ZZ)
    theirs = sorted(abs(int(S[i, i])) for i in range(len(G)) if abs(int(S[i, i])) > 1)
    assert sorted(D.invariant_factors) == theirs


@given(even_grams(n_hi=3))
def test_discriminant_form_well_defined(G):
    L = IntLattice("L", G)
    D = discriminant_group(L)
    for c in D.elements()[:30]:
        x = D.lift(c)
        assert in_dual(L, x)
        assert D.coords(x) == c
        for k in range(L.rank):
            # shifting by a lattice vector does not change q for an even lattice
            y = list(x)
            y[k] += 1
            assert disc_q(L, y) == disc_q(L, x)


@given(even_grams(n_hi=3))
def test_disc_b_is_polarization_of_q(G):
    L = IntLattice("L", G)
    D = discriminant_group(L)
    els = D.elements()[:12]
    for a in els:
        for b in els:
            x, y = D.lift(a), D.lift(b)
            s = [u + v for u, v in zip(x, y)]
            assert (disc_q(L, s) - disc_q(L, x) - disc_q(L, y) - disc_b(L, x, y)) % 1 == 0


def test_disc_q_rejects_non_dual():
    with pytest.raises(ValueError):
        disc_q(a2(), [Fraction(1, 2), 0])


def test_direct_sum_and_sublattice():
    L = direct_sum("S", a2(), hyperbolic_U())
    assert L.rank == 4 and L.signature == (1, 3) and L.det == -3
    S = sublattice("twoU", hyperbolic_U(), [[2, 0], [0, 1]])
    assert S.det == -4
    assert is_even(S) and not is_unimodular(S)


def test_signature_matches_numpy():
    for L in (e8_minus(), hyperbolic_U(), a2()):
        ev = np.linalg.eigvalsh(np.array(L.G, dtype=float))
        assert L.signature == (int((ev > 0).sum()), int((ev < 0).sum()))
