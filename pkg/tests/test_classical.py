import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from ckz.classical import (ClassicalInstance, check_defining_equation, omega_explicit, omega_residue,
                           oracle_compare, random_instance, solve_formal_series)
from ckz.ratfunc import VarContext


def _inst(seed, N=3, n=1, zero_b1=False):
    return random_instance(N, n, random.Random(seed), zero_b1=zero_b1)


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10 ** 6), st.integers(2, 3), st.integers(0, 2))
def test_formal_solution_shape(seed, N, n):
    inst = _inst(seed, N, n)
    sol = solve_formal_series(inst, 4)
    for k in range(0, 5):
        F = sol.F.coef(-k)
        for i in range(N):
            assert F[i][i] == (1 if k == 0 else 0)
    T2, _, _ = sol.T
    assert T2 == inst.t2
    assert check_defining_equation(inst, sol)


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 10 ** 6), st.permutations(range(6)))
def test_formal_solution_independent_of_elimination_order(seed, order):
    inst = _inst(seed, 3, 1)
    a, b = solve_formal_series(inst, 3), solve_formal_series(inst, 3, order=list(order))
    assert a.F.coeffs == b.F.coeffs and a.T == b.T


def test_diagonal_system_is_trivial():
    inst = _inst(3, N=3, n=0, zero_b1=True)
    sol = solve_formal_series(inst, 4)
    for k in range(1, 5):
        assert all(x == 0 for row in sol.F.coef(-k) for x in row)
        assert all(x == 0 for row in sol.D.coef(-k) for x in row)
    assert all(x == 0 for x in sol.T[1] + sol.T[2])
    for k in (1, 2):
        for nu in (1, 2, 3):
            assert omega_residue(inst, k, nu) == 0 == omega_explicit(inst, k, nu)


def test_antidiagonal_sl2_instance():
    c = VarContext(["s1", "s2"])
    z, o = c.zero(), c.one()
    s1, s2 = c.var("s1"), c.var("s2")
    inst = ClassicalInstance(2, [], [], [[z, o], [o, z]], [s1, s2], z, o)
    # the residue and the closed form agree (both vanish); the printed last sum would give 1/(s1-s2)^2
    assert omega_residue(inst, 1, 1).is_zero()
    assert omega_explicit(inst, 1, 1).is_zero()
    assert omega_explicit(inst, 1, 1, "printed") == ((s1 - s2) ** 2).inverse()
    assert omega_residue(inst, 2, 1) == omega_explicit(inst, 2, 1) == -((s1 - s2) ** 3).inverse().scale(Fraction(1, 2))


def test_residue_stable_under_truncation():
    inst = _inst(11, 3, 2)
    for k in (1, 2):
        omega_residue(inst, k, 2, check_stability=True)


def test_duplicate_diagonal_rejected():
    with pytest.raises(ValueError):
        ClassicalInstance(2, [], [], [[Fraction(0)] * 2] * 2, [Fraction(1), Fraction(1)])


@pytest.mark.parametrize("trials,N,n,k", [(50, 2, 0, 1), (25, 3, 1, 2)])
def test_oracle_examples(trials, N, n, k):
    r = oracle_compare(trials, 7, N, n, k)
    assert r["passed"] == trials and r["failures"] == []


def test_oracle_with_vanishing_b1():
    r = oracle_compare(10, 1, 3, 0, 1, zero_b1=True)
    assert r["passed"] == 10


def test_printed_variant_is_caught():
    r = oracle_compare(20, 7, 3, 1, 1, variant="printed")
    assert r["failures"]
    f = r["failures"][0]
    assert {"trial", "instance", "mismatches"} <= set(f)


def test_oracle_deterministic_and_parallel():
    a = oracle_compare(6, 3, 2, 1, 2)
    b = oracle_compare(6, 3, 2, 1, 2, jobs=2)
    a.pop("elapsed_ms"), b.pop("elapsed_ms")
    assert a == b
