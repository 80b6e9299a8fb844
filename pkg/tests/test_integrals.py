from fractions import Fraction
from math import factorial

import pytest
from hypothesis import given, settings, strategies as st

from ckz.fock import VecV, act
from ckz.integrals import (RELATIONS, MasterFunction, PhiCalculus, build_omega_m, enumerate_A,
                           enumerate_S, group_order, lemma_check, omega_algebra, phi_expansion,
                           symmetrize, theorem_check)
from ckz.ncalg import NCAlgebra
from ckz.ratfunc import rsum, standard_context
from ckz.rootsys import Root

A1, A2, A12 = Root(1, 1), Root(2, 2), Root(1, 2)


def test_log_derivatives_sl3():
    mf = MasterFunction(3, 0, (1, 1))
    c = mf.ctx
    t1, t2, g1, mu1 = c.var("t1_1"), c.var("t2_1"), c.var("g1"), c.var("mu1")
    assert mf.log_derivative("t1_1") == -(t1 - t2).inverse() + g1 + mu1 * t1
    assert mf.log_derivative("g1") == t1
    mf2 = MasterFunction(3, 0, (2, 1))
    c2 = mf2.ctx
    assert mf2.log_derivative("g1") == c2.var("t1_1") + c2.var("t1_2")


def test_log_derivative_site_variable():
    mf = MasterFunction(2, 2, (0,))
    c = mf.ctx
    z1, z2, L1, L2 = c.var("z1"), c.var("z2"), c.var("L1_1"), c.var("L2_1")
    g1, mu1 = c.var("g1"), c.var("mu1")
    half = Fraction(1, 2)
    want = (L1 * L2).scale(half) / (z1 - z2) - (g1 * L1).scale(half) - (mu1 * L1).scale(half) * z1
    assert mf.log_derivative("z1") == want
    with pytest.raises(ValueError):
        mf.log_derivative("q1")


def test_enumerations():
    assert set(enumerate_S(3, (1, 1))) == {(1, 0, 1), (0, 1, 0)}
    assert enumerate_S(3, (0, 0)) == [(0, 0, 0)]
    assert enumerate_A(3, (0, 0), (0, 0, 0)) == [()]
    assert len(enumerate_S(3, (2, 1))) == 2
    assert len(enumerate_A(3, (2, 1), (1, 1, 0))) == 2
    with pytest.raises(ValueError):
        enumerate_A(3, (1, 1), (1, 1, 1))


@pytest.mark.parametrize("m1,m2", [(1, 1), (2, 1), (2, 2), (3, 2)])
def test_assignment_counts_are_multinomial(m1, m2):
    for K in enumerate_S(3, (m1, m2)):
        k = K[1]
        want = factorial(m1) * factorial(m2) // (factorial(m1 - k) * factorial(m2 - k) * factorial(k))
        assert len(enumerate_A(3, (m1, m2), K)) == want


def test_omega_sl3_display():
    alg = omega_algebra(3, 0, (1, 1))
    c = alg.ctx
    t1, t2 = c.var("t1_1"), c.var("t2_1")
    op = alg.inf(-1, A1) * alg.inf(-1, A2) - alg.inf(-1, A12).scale((t2 - t1).inverse())
    assert build_omega_m(3, 0, (1, 1), alg) == act(op, VecV.vacuum(alg))


def test_omega_single_site_sl2():
    alg = omega_algebra(2, 1, (1,))
    c = alg.ctx
    t, z = c.var("t1_1"), c.var("z1")
    op = alg.gen(alg.site_vec(1, -1, A1)).scale((t - z).inverse()) - alg.inf(-1, A1)
    assert build_omega_m(2, 1, (1,), alg) == act(op, VecV.vacuum(alg))


@pytest.mark.parametrize("m1,m2", [(1, 1), (2, 1), (2, 2), (3, 2)])
def test_omega_coefficients_are_multiples_of_phi(m1, m2):
    calc = PhiCalculus(m1, m2)
    alg = NCAlgebra(3, 0, calc.ctx)
    exp = phi_expansion(calc, alg, build_omega_m(3, 0, (m1, m2), alg))
    for w, (k, ratio) in exp.items():
        mult = factorial(m1) * factorial(m2) // (factorial(m1 - k) * factorial(m2 - k) * factorial(k))
        assert ratio == (-1) ** (m1 + m2) * mult


def test_symmetrize_examples():
    c = standard_context(2, 0, (2,))
    f = symmetrize(c.var("t1_1"), (2,))
    assert f == (c.var("t1_1") + c.var("t1_2")).scale(Fraction(1, 2))
    calc = PhiCalculus(2, 2)
    s = calc.symmetrize(calc.phi(1))
    assert calc.symmetrize(s) == s
    assert group_order((3, 3)) == 36


def test_log_derivative_pieces_cancel():
    calc = PhiCalculus(2, 2)
    total = rsum(calc.x_terms(1, 1), calc.ctx)
    assert calc.symmetrize(total).is_zero()
    assert not total.is_zero()


def test_lemma_examples():
    calc = PhiCalculus(1, 1)
    assert calc.verify("t1-paired", 1, 1)
    calc = PhiCalculus(2, 2)
    assert calc.verify("t1sq-free", 1, 2)
    assert -1 not in calc.reduce("t1-paired", 0)
    assert -1 not in calc.reduce("t1sq-paired", 0)


class _Shifted(PhiCalculus):
    def relation(self, name, k):
        qe, lhs, rhs = super().relation(name, k)
        rhs = dict(rhs)
        rhs[k] = rhs.get(k, self.ctx.zero()) + self.v("kappa")
        return qe, lhs, rhs


@pytest.mark.parametrize("name", RELATIONS)
def test_perturbed_relation_is_rejected(name):
    calc = _Shifted(2, 2)
    k, b = calc.admissible(name)[0]
    assert not calc.verify(name, k, b)


@pytest.mark.parametrize("m1,m2", [(0, 0), (1, 0), (0, 2), (1, 1), (2, 1), (1, 2), (2, 2)])
def test_all_relations_small(m1, m2):
    recs = lemma_check(m1, m2)
    assert all(r["status"] == "pass" for r in recs)


def test_lemma_check_rejects_unknown_relation():
    with pytest.raises(ValueError):
        lemma_check(1, 1, "nope")


@pytest.mark.parametrize("m,flow", [((1, 1), "g1"), ((2, 2), "mu1"), ((1, 1), "mu2"), ((3, 1), "g2"),
                                    ((0, 2), "mu2"), ((0, 0), "g1")])
def test_flow_equation_examples(m, flow):
    r = theorem_check(*m, flow)
    assert r["status"] == "pass", r.get("witness")


@pytest.mark.parametrize("weight", [0, 1])
def test_flow_equation_needs_half_complement(weight):
    r = theorem_check(2, 2, "mu1", complement=weight)
    assert r["status"] == "fail" and r["witness"]


@settings(max_examples=8, deadline=None)
@given(st.integers(0, 3), st.integers(0, 3), st.sampled_from(["g1", "g2", "mu1", "mu2"]))
def test_flow_equations_random_shapes(m1, m2, flow):
    assert theorem_check(m1, m2, flow)["status"] == "pass"
