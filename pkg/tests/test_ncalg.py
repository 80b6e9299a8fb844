import random

import pytest
from hypothesis import given, settings, strategies as st

from ckz.acceptance import random_element
from ckz.ncalg import NCAlgebra, NCPoly, gen_commutator, nc_commutator, normal_order
from ckz.rootsys import Root, RootVec

A1, A2, A12 = Root(1, 1), Root(2, 2), Root(1, 2)


@pytest.fixture(scope="module")
def alg():
    return NCAlgebra(3, 2)


def test_infinity_commutators(alg):
    mu1 = alg.ctx.var("mu1")
    up, down = alg.inf_vec(1, A1), alg.inf_vec(-1, A1)
    assert gen_commutator(alg, up, down) == alg.scalar(mu1)
    assert gen_commutator(alg, up, alg.inf_vec(1, A2)).is_zero()
    assert gen_commutator(alg, alg.site_vec(1, 1, A1), alg.site_vec(2, -1, A1)).is_zero()


def test_normal_ordering_examples(alg):
    mu1 = alg.ctx.var("mu1")
    up, down = alg.inf(1, A1), alg.inf(-1, A1)
    assert normal_order(alg, "e[inf,a(1,1),1]*e[inf,-a(1,1),1]") == down * up + alg.scalar(mu1)
    w = "e[inf,-a(1,1),1]*e[inf,a(1,1),1]"
    assert normal_order(alg, w) == NCPoly(alg, {alg.parse_word(w): alg.ctx.one()})
    site = normal_order(alg, "e[1,a(1,1)]*e[1,-a(1,1)]")
    assert site == alg.site(1, RootVec(A1, -1)) * alg.site(1, RootVec(A1, 1)) + alg.gen(alg.cartan_id(1, 1))
    two_step = up * (down * up)
    assert two_step == (down * up) * up + up.scale(mu1)
    assert (alg.one() * up) == up


def test_commutator_examples(alg):
    mu1 = alg.ctx.var("mu1")
    num = alg.inf(-1, A1) * alg.inf(1, A1)
    a = num + alg.inf(1, A12)
    assert nc_commutator(a, a).is_zero()
    assert nc_commutator(num, alg.inf(-1, A1)) == alg.inf(-1, A1).scale(mu1)


def test_parse_render_roundtrip(alg):
    for w in [(), (0, 3, 7), tuple(range(len(alg.gens)))]:
        assert alg.parse_word(alg.render_word(w)) == w
    with pytest.raises(ValueError):
        alg.parse_word("x[1]")


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_associativity(seed):
    alg = NCAlgebra(3, 1)
    rng = random.Random(seed)
    a, b, c = (random_element(alg, rng) for _ in range(3))
    assert (a * b) * c == a * (b * c)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_normal_form_independent_of_rewriting_order(seed):
    alg = NCAlgebra(2, 2)
    rng = random.Random(seed)
    word = [rng.randrange(len(alg.gens)) for _ in range(rng.randint(0, 5))]
    direct = NCPoly.from_dict(alg, alg.normal_order_dict(tuple(word)))
    other = NCPoly.from_dict(alg, alg.normal_order_random(tuple(word), rng))
    assert direct == other


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_jacobi_in_algebra(seed):
    alg = NCAlgebra(3, 1)
    rng = random.Random(seed)
    a, b, c = (random_element(alg, rng, terms=1) for _ in range(3))
    s = (nc_commutator(a, nc_commutator(b, c)) + nc_commutator(b, nc_commutator(c, a))
         + nc_commutator(c, nc_commutator(a, b)))
    assert s.is_zero()


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_structural_mu_derivative_is_a_derivation(seed):
    alg = NCAlgebra(3, 0)
    rng = random.Random(seed)
    a, b = random_element(alg, rng), random_element(alg, rng)
    for k in (1, 2):
        d = lambda x: x.parameter_derivative(f"mu{k}")
        assert d(a * b) == d(a) * b + a * d(b)
