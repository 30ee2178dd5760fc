from fractions import Fraction

import numpy as np
import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from k3lat import exact_linalg as xl


def int_matrices(rows=st.integers(1, 5), cols=st.integers(1, 5), lo=-9, hi=9):
    return st.tuples(rows, cols).flatmap(
        lambda rc: st.lists(st.lists(st.integers(lo, hi), min_size=rc[1], max_size=rc[1]),
                            min_size=rc[0], max_size=rc[0]))


def square(n_lo=1, n_hi=5):
    return st.integers(n_lo, n_hi).flatmap(
        lambda n: st.lists(st.lists(st.integers(-6, 6), min_size=n, max_size=n),
                           min_size=n, max_size=n))


@given(int_matrices())
def test_smith_form_factorizes(M):
    U, D, V = xl.smith_normal_form(M)
    assert xl.mat_mul(xl.mat_mul(U, M), V) == D
    assert abs(xl.det(U)) == 1 and abs(xl.det(V)) == 1
    diag = [D[i][i] for i in range(min(len(D), len(D[0])))]
    assert all(d >= 0 for d in diag)
    nz = [d for d in diag if d]
    assert all(b % a == 0 for a, b in zip(nz, nz[1:]))
    assert all(D[i][j] == 0 for i in range(len(D)) for j in range(len(D[0])) if i != j)


@given(int_matrices())
def test_smith_diagonal_matches_sympy(M):
    _, D, _ = xl.smith_normal_form(M)
    ours = [D[i][i] for i in range(min(len(D), len(D[0])))]
    from sympy.matrices.normalforms import smith_normal_form
    S = smith_normal_form(sympy.Matrix(M), domain=sympy.ZZ)
    theirs = [abs(int(S[i, i])) for i in range(min(S.shape))]
    assert sorted(ours) == sorted(theirs)


@given(int_matrices())
def test_hermite_form(M):
    H, U = xl.hermite_normal_form(M)
    assert xl.mat_mul(U, M) == H
    assert abs(xl.det(U)) == 1
    col = -1
    for row in H:
        if not any(row):
            continue
        piv = next(j for j, x in enumerate(row) if x)
        assert piv > col and row[piv] > 0
        col = piv


@given(int_matrices())
def test_integer_kernel(M):
    K = xl.integer_kernel(M, ncols=len(M[0]))
    assert len(K) == len(M[0]) - xl.rank(M)
    for v in K:
        assert not any(xl.mat_vec(M, v))
    if K:
        # the kernel basis is saturated: its SNF has unit invariant factors
        _, D, _ = xl.smith_normal_form(K)
        assert all(D[i][i] == 1 for i in range(len(K)))


@given(square())
def test_det_matches_sympy(M):
    assert xl.det(M) == sympy.Matrix(M).det()


@given(square())
def test_char_poly_matches_numpy(M):
    ours = xl.char_poly(M)
    assert np.allclose(ours, np.poly(np.array(M, dtype=float)), atol=1e-6 * (1 + np.abs(ours).max()))
    assert ours == [int(c) for c in sympy.Matrix(M).charpoly().all_coeffs()]


@given(square())
def test_inverse(M):
    if xl.det(M) == 0:
        with pytest.raises(Exception):
            xl.inverse(M)
        return
    Mi = xl.inverse(M)
    assert xl.mat_mul(M, Mi) == xl.identity(len(M))


@given(square())
def test_inertia_matches_eigenvalues(M):
    S = xl.mat_add(M, xl.transpose(M))
    p, n, z = xl.inertia(S)
    ev = np.linalg.eigvalsh(np.array(S, dtype=float))
    assert (p, n, z) == (int((ev > 1e-9).sum()), int((ev < -1e-9).sum()), int((abs(ev) <= 1e-9).sum()))


def test_inertia_rejects_asymmetric():
    with pytest.raises(ValueError):
        xl.inertia([[1, 2], [0, 1]])


def test_solve_cases():
    assert xl.solve([[2, 0], [0, 4]], [1, 1]) == [Fraction(1, 2), Fraction(1, 4)]
    assert xl.solve([[1, 1], [1, 1]], [1, 2]) is None
    with pytest.raises(ValueError):
        xl.solve([[1, 1], [1, 1]], [1, 1])


def test_rational_hnf_basis_spans():
    rows = [[1, 0], [0, 1], [Fraction(1, 2), Fraction(1, 2)]]
    B = xl.rational_hnf_basis(rows)
    assert len(B) == 2 and abs(xl.det(B)) == Fraction(1, 2)


def test_poly_to_str():
    assert xl.poly_to_str([1, 0, -1]) == "t^2 - 1"
