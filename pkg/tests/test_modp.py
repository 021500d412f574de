import itertools
from math import factorial, prod

import pytest
from hypothesis import given, settings, strategies as st

from dti.modp import (
    PartsSumMismatch,
    base_p_digits,
    exists_bounded_carryfree_composition,
    multinomial_mod_p,
)

PRIMES = [2, 3, 5, 7]


@pytest.mark.parametrize("m,p,digits", [(25, 2, [1, 0, 0, 1, 1]), (0, 5, []), (23, 3, [2, 1, 2])])
def test_base_p_digits(m, p, digits):
    assert base_p_digits(m, p) == digits


@pytest.mark.parametrize(
    "total,parts,p,value",
    [(4, [2, 2], 2, 0), (7, [5, 1, 1], 3, 0), (25, [24, 1, 0, 0], 2, 1), (9, [9], 7, 1)],
)
def test_multinomial_examples(total, parts, p, value):
    assert multinomial_mod_p(total, parts, p) == value


def test_multinomial_parts_must_sum():
    with pytest.raises(PartsSumMismatch):
        multinomial_mod_p(5, [2, 2], 3)


def exact_multinomial(parts):
    return factorial(sum(parts)) // prod(factorial(k) for k in parts)


@given(st.lists(st.integers(0, 30), min_size=1, max_size=4), st.sampled_from(PRIMES))
def test_multinomial_matches_integer_arithmetic(parts, p):
    assert multinomial_mod_p(sum(parts), parts, p) == exact_multinomial(parts) % p


@pytest.mark.parametrize(
    "total,bounds,p,expected",
    [
        (5, [2, 1, 1, 1], 7, (2, 1, 1, 1)),
        (7, [5, 1, 1], 3, None),
        (0, [0, 3], 5, (0, 0)),
        (12, [8, 6, 3, 3], 2, (8, 4, 0, 0)),
        (3, [-1, 5], 2, None),
    ],
)
def test_composition_examples(total, bounds, p, expected):
    got = exists_bounded_carryfree_composition(total, bounds, p)
    assert (None if got is None else tuple(got)) == expected


def brute_force_exists(total, bounds, p):
    if any(b < 0 for b in bounds):
        return False
    for k in itertools.product(*(range(min(b, total) + 1) for b in bounds)):
        if sum(k) == total and exact_multinomial(k) % p:
            return True
    return False


@settings(max_examples=300, deadline=None)
@given(
    st.integers(0, 40),
    st.lists(st.integers(-1, 40), min_size=1, max_size=4),
    st.sampled_from(PRIMES),
)
def test_composition_agrees_with_brute_force(total, bounds, p):
    got = exists_bounded_carryfree_composition(total, bounds, p)
    assert (got is not None) == brute_force_exists(total, bounds, p)
    if got is not None:
        assert sum(got) == total
        assert all(0 <= k <= b for k, b in zip(got, bounds))
        assert multinomial_mod_p(total, got, p) != 0


def test_large_totals_are_fast():
    # 2^60 - 1 has sixty ones in base 2; splitting needs enough room
    total = 2**60 - 1
    got = exists_bounded_carryfree_composition(total, [2**59, 2**59, 2**59], 2)
    assert got is not None and sum(got) == total
