import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from dti.core import ResourceLimit, validate_ring
from dti.oracle import bracket_generators, fast_member
from dti.poly import (
    GREVLEX,
    LEX,
    MonomialOrder,
    MonomialReducer,
    Polynomial,
    RingMismatch,
    buchberger,
    defining_polynomial,
    gb_ideal_member,
    normal_form,
    parse_polynomial,
    s_polynomial,
)


def P(text, n=3, p=5):
    return parse_polynomial(text, n, p)


def test_arithmetic_mod_p():
    f = P("x1+x2")
    assert (f**5) == P("x1^5+x2^5")  # freshman's dream in characteristic 5
    assert (f - f).is_zero()
    assert P("3*x1") + P("2*x1") == Polynomial({}, 3, 5)
    assert (-P("x1")).terms == {(1, 0, 0): 4}
    assert P("x1*x2") * P("x3") == P("x1*x2*x3")
    assert P("2*x1").scale(3) == P("x1")


def test_ring_mismatch():
    with pytest.raises(RingMismatch):
        P("x1", 3, 5) + P("x1", 3, 7)


def test_orders():
    a, b = (2, 0, 0), (0, 1, 2)
    assert GREVLEX.key(b) > GREVLEX.key(a)  # degree first
    assert LEX.key(a) > LEX.key(b)
    # grevlex tie-break: smaller power of the last variable wins
    assert GREVLEX.key((1, 1, 0)) > GREVLEX.key((1, 0, 1))
    with pytest.raises(ValueError):
        MonomialOrder("deglex")


def test_defining_polynomial():
    f = defining_polynomial(validate_ring(2, 5, 5))
    assert f.to_text() == "x1^5+x2^5+x3^5+x4^5+x5^5"
    assert all(c == 1 for c in defining_polynomial(validate_ring(7, 4, 5)).terms.values())
    assert f.leading_monomial(GREVLEX) == (5, 0, 0, 0, 0)


def test_normal_form_eliminates_leading_variable():
    # with x1 > ... > x4 the leading term of f is x1^7
    spec = validate_ring(3, 7, 4)
    f = defining_polynomial(spec)
    r = normal_form(P("x1^7", 4, 3), [f])
    assert r == -P("x2^7+x3^7+x4^7", 4, 3)


def test_gb_member_examples():
    spec = validate_ring(3, 7, 4)
    gens = [P(f"x{i}^7", 4, 3) for i in (1, 2, 3)] + [defining_polynomial(spec)]
    assert gb_ideal_member(P("x4^7", 4, 3), gens)
    spec = validate_ring(2, 3, 3)
    gens = [P("x1^6", 3, 2), P("x2^6", 3, 2), defining_polynomial(spec)]
    assert gb_ideal_member(P("x1^4*x2^4*x3^4", 3, 2), gens) == fast_member(spec, (4, 4, 4), 2) is True


@pytest.mark.slow
def test_gb_member_example_41():
    spec = validate_ring(2, 5, 5)
    u4 = Polynomial.monomial((12,) * 5, 2)
    assert gb_ideal_member(u4, bracket_generators(spec, 4))


def test_monomials_are_already_a_basis():
    gens = [P("x1^2"), P("x1*x2^3"), P("x3")]
    gb = buchberger(gens)
    assert sorted(g.leading_monomial(GREVLEX) for g in gb.basis) == sorted(
        g.leading_monomial(GREVLEX) for g in gens
    )


def test_single_generator():
    f = defining_polynomial(validate_ring(2, 3, 3))
    assert buchberger([f]).basis == [f]


@pytest.mark.parametrize("p,d,n,q", [(2, 3, 3, 2), (3, 2, 3, 3), (2, 5, 4, 2), (3, 7, 4, 1)])
def test_bracket_basis_is_artinian_and_closed_under_s_polys(p, d, n, q):
    spec = validate_ring(p, d, n)
    gb = buchberger(bracket_generators(spec, q))
    lms = gb.leading_monomials()
    # every variable has a pure power among the leading monomials
    for i in range(n):
        assert any(all(e == 0 for j, e in enumerate(m) if j != i) for m in lms)
    for g, h in itertools.combinations(gb.basis, 2):
        assert normal_form(s_polynomial(g, h, GREVLEX), gb.basis).is_zero()


def test_pair_budget_raises_resource_limit():
    spec = validate_ring(2, 9, 9)
    gens = bracket_generators(spec, 2) + [P("x1*x2*x3 + x4^2*x5", 9, 2), P("x6^3 + x7*x8*x9", 9, 2)]
    with pytest.raises(ResourceLimit):
        buchberger(gens, GREVLEX, pair_budget=3)


def test_reducer_table_limit():
    spec = validate_ring(2, 5, 5)
    reducer = MonomialReducer(buchberger(bracket_generators(spec, 4)), max_entries=5)
    with pytest.raises(ResourceLimit):
        reducer.is_member((12,) * 5)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10**6))
def test_reducer_matches_normal_form(seed):
    rng = random.Random(seed)
    spec = validate_ring(3, 2, 3)
    gb = buchberger(bracket_generators(spec, 3))
    reducer = MonomialReducer(gb)
    e = tuple(rng.randint(0, 9) for _ in range(3))
    nf = normal_form(Polynomial.monomial(e, 3), gb.basis)
    assert reducer.is_member(e) == nf.is_zero()


@settings(max_examples=40, deadline=None)
@given(
    st.dictionaries(st.tuples(*[st.integers(0, 3)] * 3), st.integers(0, 4), max_size=5),
    st.dictionaries(st.tuples(*[st.integers(0, 3)] * 3), st.integers(0, 4), max_size=5),
)
def test_multiplication_distributes(a, b):
    A, B, C = Polynomial(a, 3, 5), Polynomial(b, 3, 5), P("x1 + 2*x3")
    assert (A + B) * C == A * C + B * C


def test_step_budget_raises_resource_limit():
    spec = validate_ring(2, 9, 9)
    with pytest.raises(ResourceLimit, match="steps"):
        buchberger(bracket_generators(spec, 64), step_budget=2000)


def test_step_budget_in_normal_form():
    g = P("x1^20", 3, 5)
    with pytest.raises(ResourceLimit):
        normal_form(g, [P("x1-x2", 3, 5)], step_budget=5)
    assert normal_form(g, [P("x1-x2", 3, 5)], step_budget=50) == P("x2^20", 3, 5)


def test_normal_form_of_constant():
    f = defining_polynomial(validate_ring(3, 7, 4))
    one = Polynomial.constant(1, 4, 3)
    assert normal_form(one, [f]) == one
