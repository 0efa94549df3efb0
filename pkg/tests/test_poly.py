import pytest
from hypothesis import given
from hypothesis import strategies as st

from klmatch.poly import ONE, Q, ZERO, PolyZ

coeffs = st.lists(st.integers(-50, 50), max_size=7)
polys = coeffs.map(PolyZ)


def test_canonical_form_trims_trailing_zeros():
    assert PolyZ([1, 2, 0, 0]).coeffs == (1, 2)
    assert PolyZ([0, 0]) == ZERO
    assert ZERO.degree is None
    assert ONE.degree == 0


def test_str_and_parse():
    p = (Q - 1) ** 2
    assert str(p) == "q^2 - 2q + 1"
    assert str(ZERO) == "0"
    assert str(-Q + 1) == "-q + 1"
    assert PolyZ.parse("q^3 - 2q^2 + q") == Q**3 - 2 * Q**2 + Q


@given(polys)
def test_parse_inverts_str(p):
    assert PolyZ.parse(str(p)) == p


@given(polys, polys, polys)
def test_ring_axioms(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == ZERO


@given(polys, polys, st.integers(-4, 4))
def test_evaluation_is_a_homomorphism(a, b, x):
    assert (a * b)(x) == a(x) * b(x)
    assert (a + b)(x) == a(x) + b(x)


@given(polys)
def test_reflect_is_an_involution(p):
    n = (p.degree or 0) + 2
    assert p.reflect(n).reflect(n) == p


def test_reflect_rejects_small_exponent():
    with pytest.raises(ValueError):
        (Q**3).reflect(2)


def test_truncate_and_shift():
    p = PolyZ([1, 2, 3, 4])
    assert p.truncate(1) == PolyZ([1, 2])
    assert p.shift(2) == PolyZ([0, 0, 1, 2, 3, 4])


def test_json_round_trip():
    p = Q**4 - 7
    assert PolyZ.from_json(p.to_json()) == p


def test_equality_with_int():
    assert ONE == 1
    assert ZERO == 0
    assert Q != 1
