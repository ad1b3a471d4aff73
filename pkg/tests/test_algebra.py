from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

import oracles
from hibikit.algebra import (
    MonomialOrder,
    Polynomial,
    buchberger,
    count_standard_monomials,
    degrevlex,
    initial_ideal,
    is_squarefree,
    lex,
    mono,
    mono_divides,
    mono_lcm,
    normal_form,
    sample_orders,
    spoly,
)
from hibikit.errors import BoundExceeded


def x(*exps):
    return mono(dict(enumerate(exps)))


def test_monomial_helpers():
    a, b = x(2, 1), x(1, 0, 3)
    assert mono_lcm(a, b) == x(2, 1, 3)
    assert mono_divides(x(1), a) and not mono_divides(b, a)
    assert is_squarefree([x(1, 1), x(0, 1, 1)]) and not is_squarefree([x(2)])


def test_degrevlex_vs_lex():
    # variables 0 > 1 > 2
    o = degrevlex(3, (0, 1, 2))
    assert o.key(x(0, 2, 0)) > o.key(x(1, 0, 1))  # y^2 > xz
    assert o.key(x(0, 0, 3)) > o.key(x(1, 1))  # degree first
    lx = lex(3, (0, 1, 2))
    assert lx.key(x(1, 0, 1)) > lx.key(x(0, 2, 0))


def test_spoly_example():
    # variables x, y, z, w, u, v with x > y > z > w > u > v
    o = degrevlex(6, tuple(range(6)))
    f = Polynomial.binomial(x(1, 1), x(0, 0, 1, 1))  # xy - zw
    g = Polynomial.binomial(x(1, 0, 1), x(0, 0, 0, 0, 1, 1))  # xz - uv
    s = spoly(f, g, o)
    assert s == Polynomial.binomial(x(0, 1, 0, 0, 1, 1), x(0, 0, 2, 1))  # yuv - z^2 w
    assert not spoly(f, f, o)


def test_normal_form_reduces():
    o = degrevlex(2, (0, 1))
    f = Polynomial.binomial(x(2), x(0, 2))
    G = [Polynomial.binomial(x(1, 1), x(0, 2))]
    r = normal_form(f, G, o)
    assert r == f  # x^2 not divisible by xy


def test_polynomial_arithmetic():
    p = Polynomial({x(1): 2, x(0, 1): Fraction(1, 3)})
    q = Polynomial({x(1): -2})
    assert (p + q) == Polynomial({x(0, 1): Fraction(1, 3)})
    assert p - p == Polynomial()
    assert (p * q).terms == {x(2): -4, x(1, 1): Fraction(-2, 3)}


def test_buchberger_bounds():
    gens = [Polynomial.binomial(x(1, 1), x(0, 0, 2))]
    with pytest.raises(BoundExceeded):
        buchberger(gens, degrevlex(3), max_vars=2)


def test_sample_orders_all():
    orders = list(sample_orders(3, "all"))
    assert len(orders) == 12
    assert len({(o.kind, o.priority) for o in orders}) == 12
    seeded = [o.priority for o in sample_orders(8, 5, seed=3)]
    assert seeded == [o.priority for o in sample_orders(8, 5, seed=3)]


def test_count_standard_monomials():
    # initial ideal (xy) in 2 variables: degree-k standard monomials are x^k and y^k
    assert [count_standard_monomials(2, k, [x(1, 1)]) for k in range(4)] == [1, 2, 2, 2]
    assert count_standard_monomials(3, 2, []) == 6


def _as_set(G):
    return {frozenset(g.terms.items()) for g in G}


binomial_ideals = st.lists(
    st.tuples(
        st.lists(st.integers(0, 2), min_size=4, max_size=4),
        st.lists(st.integers(0, 2), min_size=4, max_size=4),
    ).filter(lambda t: t[0] != t[1]),
    min_size=1,
    max_size=3,
)


@given(binomial_ideals, st.permutations(range(4)), st.sampled_from(["degrevlex", "lex"]))
def test_buchberger_matches_sympy(pairs, perm, kind):
    gens = [Polynomial.binomial(x(*a), x(*b)) for a, b in pairs]
    order = MonomialOrder(kind, tuple(perm))
    G = buchberger(gens, order)
    want = oracles.sympy_reduced_gb(gens, 4, tuple(perm), "grevlex" if kind == "degrevlex" else "lex")
    assert _as_set(G) == want


@given(binomial_ideals, st.permutations(range(4)))
def test_generators_reduce_to_zero(pairs, perm):
    gens = [Polynomial.binomial(x(*a), x(*b)) for a, b in pairs]
    order = degrevlex(4, tuple(perm))
    G = list(buchberger(gens, order))
    assert all(not normal_form(g, G, order) for g in gens)
    ini = initial_ideal(G, order)
    assert all(any(mono_divides(m, g.leading(order)[0]) for m in ini) for g in G)
