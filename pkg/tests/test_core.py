import pytest
from hypothesis import given, strategies as st

from dti.core import (
    DegreeTooSmall,
    DividesDegree,
    NotPrime,
    ParseError,
    PrimePower,
    TooFewVariables,
    TooManyVariables,
    format_monomial,
    parse_monomial,
    parse_monomial_list,
    split_residue,
    validate_ring,
)


def test_valid_ring():
    spec = validate_ring(2, 5, 5)
    assert (spec.p, spec.d, spec.n) == (2, 5, 5)
    assert spec.dim == 4
    assert spec.hara_threshold == 20


@pytest.mark.parametrize(
    "p,d,n,err",
    [
        (3, 6, 4, DividesDegree),
        (5, 4, 2, TooFewVariables),
        (4, 5, 3, NotPrime),
        (1, 5, 3, NotPrime),
        (3, 1, 3, DegreeTooSmall),
        (2, 3, 13, TooManyVariables),
    ],
)
def test_invalid_rings(p, d, n, err):
    with pytest.raises(err):
        validate_ring(p, d, n)


def test_invalid_ring_is_value_error():
    with pytest.raises(ValueError, match="p divides d"):
        validate_ring(3, 6, 4)


@pytest.mark.parametrize(
    "B,d,r,a",
    [
        ((24, 54, 54, 54), 7, (3, 5, 5, 5), (3, 7, 7, 7)),
        ((0, 0, 0), 4, (0, 0, 0), (0, 0, 0)),
        ((12,) * 5, 5, (2,) * 5, (2,) * 5),
    ],
)
def test_split_residue(B, d, r, a):
    s = split_residue(B, d)
    assert (s.r, s.a) == (r, a)


@given(st.lists(st.integers(0, 500), min_size=1, max_size=6), st.integers(2, 11))
def test_split_residue_recombines(B, d):
    s = split_residue(B, d)
    assert all(0 <= r < d for r in s.r)
    assert tuple(r + d * a for r, a in zip(s.r, s.a)) == tuple(B)


def test_prime_power():
    assert PrimePower(3, 3).value == 27
    assert PrimePower.from_value(2, 32) == PrimePower(2, 5)
    assert PrimePower.from_value(5, 1) == PrimePower(5, 0)
    with pytest.raises(ValueError):
        PrimePower.from_value(2, 12)


@pytest.mark.parametrize(
    "text,n,vec",
    [
        ("x3^2*x5", 5, (0, 0, 2, 0, 1)),
        ("1", 3, (0, 0, 0)),
        ("x1^(4)", 2, (4, 0)),
        ("x1*x1", 2, (2, 0)),
        (" x2 ^ 3 ", 3, (0, 3, 0)),
    ],
)
def test_parse_monomial(text, n, vec):
    assert parse_monomial(text, n) == vec


@pytest.mark.parametrize("text", ["x4", "y1", "x1^-2", "x1^^2", ""])
def test_parse_monomial_rejects(text):
    with pytest.raises(ParseError):
        parse_monomial(text, 3)


@given(st.lists(st.integers(0, 9), min_size=1, max_size=6))
def test_format_parse_round_trip(v):
    assert parse_monomial(format_monomial(v), len(v)) == tuple(v)


def test_parse_monomial_list():
    assert parse_monomial_list("x1^3, x1^2*x2", 2) == [(3, 0), (2, 1)]
