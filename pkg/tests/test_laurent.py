import pytest
from hypothesis import given
from hypothesis import strategies as st

from qmatrix.errors import NotSkew, OddExponent, ParseError
from qmatrix.laurent import ONE, Q, ZERO, LaurentPoly, neg_q2_pow, qpow

polys = st.dictionaries(st.integers(-6, 6), st.integers(-5, 5), max_size=5).map(LaurentPoly)


def test_zero_coefficients_are_dropped():
    p = LaurentPoly({0: 0, 2: 3, -1: 0})
    assert p.to_dict() == {2: 3}
    assert LaurentPoly({1: 0}).is_zero()


def test_basic_arithmetic():
    p = Q + Q ** -1
    assert p * p == LaurentPoly({2: 1, 0: 2, -2: 1})
    assert (Q ** 2 - Q ** -2) == LaurentPoly({2: 1, -2: -1})
    assert 1 - Q == LaurentPoly({0: 1, 1: -1})
    assert qpow(3, -2) == LaurentPoly({3: -2})
    assert neg_q2_pow(3) == LaurentPoly({6: -1})


def test_negative_power_only_for_units():
    assert (2 * Q) ** 0 == ONE
    assert Q ** -3 == qpow(-3)
    with pytest.raises(ValueError):
        _ = (1 + Q) ** -1


def test_skew_decompose():
    h = LaurentPoly({2: 1, -2: -1, 6: -3, -6: 3})
    assert h.skew_decompose() == LaurentPoly({2: 1, 6: -3})
    with pytest.raises(NotSkew):
        LaurentPoly({2: 1, -2: 1}).skew_decompose()
    with pytest.raises(NotSkew):
        LaurentPoly({0: 1}).skew_decompose()
    with pytest.raises(OddExponent):
        LaurentPoly({1: 1, -1: -1}).skew_decompose()
    assert ZERO.skew_decompose() == ZERO


def test_text_form():
    assert str(LaurentPoly({2: 1, -2: -1})) == "-q^-2 + q^2"
    assert str(LaurentPoly({1: 2})) == "2*q"
    assert str(Q) == "q"
    assert str(ZERO) == "0"
    assert LaurentPoly.parse("q^2 - 3*q^-1 + 4") == LaurentPoly({2: 1, -1: -3, 0: 4})
    with pytest.raises(ParseError):
        LaurentPoly.parse("q^^2")


@given(polys)
def test_parse_round_trip(p):
    assert LaurentPoly.parse(str(p)) == p


@given(polys, polys, polys)
def test_ring_axioms(a, b, c):
    assert a * (b + c) == a * b + a * c
    assert (a * b) * c == a * (b * c)
    assert a * b == b * a
    assert a - a == ZERO


@given(polys, polys)
def test_bar_is_ring_involution(a, b):
    assert a.bar().bar() == a
    assert (a * b).bar() == a.bar() * b.bar()


@given(polys)
def test_skew_part_reconstructs(p):
    h = p - p.bar()
    h = LaurentPoly({2 * e: c for e, c in h.items()})  # move to even degrees
    pos = h.skew_decompose()
    assert pos - pos.bar() == h
    assert all(e > 0 for e in pos.exponents())


def test_evaluate():
    assert LaurentPoly({2: 1, -2: -1}).evaluate(1) == 0
    assert LaurentPoly({1: 3}).evaluate(2) == 6
