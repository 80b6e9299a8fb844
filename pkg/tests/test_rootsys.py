from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from ckz.acceptance import duality_failures, homomorphism_failures, jacobi_failures
from ckz.ncalg import NCAlgebra
from ckz.rootsys import (Cartan, Fundamental, Root, RootVec, bracket_basis, build_root_system,
                         casimir_terms, epsilon, inverse_cartan, matrix_realization, root_order_cmp,
                         root_value)

A1, A2, A12 = Root(1, 1), Root(2, 2), Root(1, 2)


def diag(*xs):
    n = len(xs)
    return [[Fraction(xs[i]) if i == j else Fraction(0) for j in range(n)] for i in range(n)]


def test_positive_roots_linear_order():
    assert build_root_system(3).positive_roots == (A1, A12, A2)
    rs = build_root_system(2)
    assert rs.positive_roots == (A1,)
    assert rs.J[1] == (A1,)


def test_subsets_sl3():
    rs = build_root_system(3)
    assert set(rs.J[1]) == {A1, A12}
    assert set(rs.R[2]) == {A2}
    assert set(rs.C[2]) == {A12, A2}


def test_bad_rank():
    with pytest.raises(ValueError):
        build_root_system(1)


def test_order_and_sign():
    assert root_order_cmp(A1, A12) == 1
    assert root_order_cmp(A2, A2) == 0
    assert root_order_cmp(A12, A2) == 1
    assert epsilon(A1, A2) == 1
    assert epsilon(A2, A1) == -1
    assert epsilon(A12, A2) == 1
    with pytest.raises(ValueError):
        epsilon(A1, A1)


def test_brackets_sl3():
    assert bracket_basis(RootVec(A1), RootVec(A2)) == {RootVec(A12): 1}
    assert bracket_basis(RootVec(A1), RootVec(A1)) == {}
    assert bracket_basis(Cartan(1), RootVec(A2)) == {RootVec(A2): -1}
    assert root_value(A2, 1) == -1


def test_matrix_realization():
    e13 = matrix_realization(RootVec(A12), 3)
    assert e13[0][2] == 1 and sum(map(sum, e13)) == 1
    assert matrix_realization(Fundamental(1), 3) == diag(Fraction(2, 3), Fraction(-1, 3), Fraction(-1, 3))
    assert matrix_realization(Cartan(2), 3) == diag(0, 1, -1)


@pytest.mark.parametrize("N", [2, 3, 4])
def test_jacobi_and_antisymmetry(N):
    assert jacobi_failures(N) == []


@pytest.mark.parametrize("N", [2, 3, 4, 5])
def test_homomorphism_and_duality(N):
    assert homomorphism_failures(N) == []
    assert duality_failures(N) == []


def test_casimir_sl2_terms():
    terms = {(x, y): c for c, x, y in casimir_terms(2)}
    assert terms == {(RootVec(A1, 1), RootVec(A1, -1)): 1, (RootVec(A1, -1), RootVec(A1, 1)): 1,
                     (Cartan(1), Cartan(1)): Fraction(1, 2)}


@pytest.mark.parametrize("N", [2, 3, 4])
def test_casimir_swap_symmetric(N):
    alg = NCAlgebra(N, 2)
    om = alg.casimir(1, 2)
    swapped = alg.zero()
    for c, x, y in casimir_terms(N):
        swapped = swapped + (alg.site(1, y) * alg.site(2, x)).scale(c)
    assert om == swapped


@settings(max_examples=50, deadline=None)
@given(st.integers(2, 7), st.data())
def test_inverse_cartan_is_inverse(N, data):
    p = data.draw(st.integers(1, N - 1))
    q = data.draw(st.integers(1, N - 1))
    s = sum(inverse_cartan(N, p, r) * (2 if r == q else -1 if abs(r - q) == 1 else 0) for r in range(1, N))
    assert s == (1 if p == q else 0)
