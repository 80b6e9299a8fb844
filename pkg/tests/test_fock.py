import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from ckz.acceptance import (leibniz_failures, random_element, random_vector, representation_failures,
                            weight_failures)
from ckz.fock import (VecV, act, act_by_rewriting, d_gamma, d_mu, in_weight_space,
                      weight_space_basis)
from ckz.ncalg import NCAlgebra
from ckz.rootsys import Root

A1, A2, A12 = Root(1, 1), Root(2, 2), Root(1, 2)


def test_raising_on_fock_vectors():
    alg = NCAlgebra(3, 0)
    mu1 = alg.ctx.var("mu1")
    down = alg.inf_vec(-1, A1)
    v = VecV.basis(alg, (down, down))
    assert act(alg.inf(1, A1), v) == VecV.basis(alg, (down,)).scale(mu1.scale(2))
    assert act(alg.inf(1, A1), VecV.vacuum(alg)).is_zero()


def test_site_highest_weight():
    alg = NCAlgebra(2, 1)
    v = VecV.vacuum(alg)
    h = alg.gen(alg.cartan_id(1, 1))
    assert act(h, v) == v.scale(alg.ctx.var("L1_1"))
    assert act(alg.gen(alg.site_vec(1, 1, A1)), v).is_zero()
    with pytest.raises(ValueError):
        VecV.basis(alg, (alg.site_vec(1, 1, A1),))


def test_weight_space_examples():
    alg = NCAlgebra(3, 0)
    basis = weight_space_basis(alg, (1, 1))
    assert len(basis) == 2
    assert set(basis) == {(alg.inf_vec(-1, A1), alg.inf_vec(-1, A2)), (alg.inf_vec(-1, A12),)}
    assert weight_space_basis(alg, (0, 0)) == [()]
    alg2 = NCAlgebra(2, 1)
    f, e = alg2.site_vec(1, -1, A1), alg2.inf_vec(-1, A1)
    assert set(weight_space_basis(alg2, (2,))) == {(f, f), (f, e), (e, e)}
    for w in weight_space_basis(alg2, (2,)):
        assert in_weight_space(alg2, VecV.basis(alg2, w), (2,))
    assert not in_weight_space(alg2, VecV.basis(alg2, (f,)), (2,))


@pytest.mark.parametrize("m1,m2,k", [(1, 1, 0), (1, 1, 1), (2, 3, 1), (3, 2, 2)])
def test_mu_derivative_structural_factor(m1, m2, k):
    alg = NCAlgebra(3, 0)
    c = alg.ctx
    mu1, mu2 = c.var("mu1"), c.var("mu2")
    w = ((alg.inf_vec(-1, A1),) * (m1 - k) + (alg.inf_vec(-1, A12),) * k + (alg.inf_vec(-1, A2),) * (m2 - k))
    v = VecV.basis(alg, w)
    want = (mu1.inverse().scale(m1 - k) + (mu1 + mu2).inverse().scale(k)).scale(Fraction(1, 2))
    assert d_mu(1, v) == v.scale(want)


def test_coefficient_derivatives():
    alg = NCAlgebra(3, 0)
    v = VecV.vacuum(alg)
    g1 = alg.ctx.var("g1")
    assert d_gamma(1, v).is_zero()
    assert d_mu(1, v.scale(g1)).is_zero()
    assert d_gamma(1, v.scale(g1)) == v


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10 ** 6), st.sampled_from([(2, 1), (3, 0), (3, 1)]))
def test_two_action_paths_agree(seed, shape):
    alg = NCAlgebra(*shape)
    rng = random.Random(seed)
    a, v = random_element(alg, rng), random_vector(alg, rng)
    assert act(a, v) == act_by_rewriting(a, v)


@settings(max_examples=10, deadline=None)
@given(st.integers(0, 10 ** 6), st.sampled_from([(2, 1), (3, 0), (3, 1), (2, 2)]))
def test_representation_property(seed, shape):
    assert representation_failures(*shape, trials=3, seed=seed) == []


@settings(max_examples=10, deadline=None)
@given(st.integers(0, 10 ** 6), st.sampled_from([(2, 1), (3, 0), (3, 1)]))
def test_derivations_satisfy_leibniz(seed, shape):
    assert leibniz_failures(*shape, trials=3, seed=seed) == []


@pytest.mark.parametrize("N,n", [(2, 0), (2, 1), (3, 0), (3, 1)])
def test_hamiltonians_preserve_weight(N, n):
    assert weight_failures(N, n, max_total=3) == []


def test_render():
    alg = NCAlgebra(2, 0)
    v = VecV.basis(alg, "e[inf,-a(1,1),1]")
    assert v.render() == "(1)*e[inf,-a(1,1),1]*v"
    assert VecV(alg, {}).render() == "0"


def test_structural_factor_is_needed_for_leibniz():
    alg = NCAlgebra(2, 0)
    up, v = alg.inf(1, A1), VecV.basis(alg, (alg.inf_vec(-1, A1),))
    lhs = d_mu(1, act(up, v))
    assert lhs == VecV.vacuum(alg)
    assert lhs == act(up.parameter_derivative("mu1"), v) + act(up, d_mu(1, v))
    assert act(up.coeff_derivative("mu1"), v) + act(up, d_gamma(1, v)) != lhs
