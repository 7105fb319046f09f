from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from fss.errors import DivisionByZero, MixedFields, ParseError
from fss.field import FieldScalar, FieldSpec, field_arith

QQ = FieldSpec.rational()
GF7 = FieldSpec.prime(7)
GF101 = FieldSpec.prime(101)

rationals = st.fractions(max_denominator=50).map(lambda f: FieldScalar(QQ, f))
residues = st.integers(0, 100).map(lambda k: FieldScalar(GF101, k))


@pytest.mark.parametrize("elems", [rationals, residues], ids=["QQ", "GF101"])
@given(data=st.data())
def test_field_axioms(elems, data):
    a, b, c = (data.draw(elems) for _ in range(3))
    assert a + b == b + a and a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == 0 and a + (-a) == 0
    if not a.is_zero():
        assert a * a.inv() == 1
        assert (b / a) * a == b


@given(st.fractions(max_denominator=1000))
def test_rational_literal_round_trip(q):
    text = QQ.format(QQ.element(q))
    assert QQ.parse(text) == QQ.element(q)
    assert Fraction(text) == q


@given(st.integers(0, 100))
def test_prime_literal_round_trip(k):
    assert GF101.parse(GF101.format(k)) == k


def test_examples():
    assert QQ.scalar(Fraction(1, 2)) + QQ.scalar(Fraction(1, 3)) == Fraction(5, 6)
    assert GF7.scalar(3).inv() == 5
    assert GF7.scalar(-1) == 6
    assert GF7.element(Fraction(1, 2)) == 4


@pytest.mark.parametrize("text", ["1.5", "1/0", "", "a", "1/2/3", "0x10"])
def test_bad_rational_literals(text):
    with pytest.raises(ParseError):
        QQ.parse(text)


@pytest.mark.parametrize("text", ["7", "-1", "1/2"])
def test_bad_residue_literals(text):
    with pytest.raises(ParseError):
        GF7.parse(text)


def test_errors():
    with pytest.raises(DivisionByZero):
        QQ.scalar(0).inv()
    with pytest.raises(ZeroDivisionError):
        GF7.scalar(1) / GF7.scalar(0)
    with pytest.raises(MixedFields):
        QQ.scalar(1) + GF7.scalar(1)
    with pytest.raises(MixedFields):
        field_arith(QQ.scalar(1), GF7.scalar(1), "add")
    with pytest.raises(ValueError):
        FieldSpec.prime(8)


def test_json_round_trip():
    for F in (QQ, GF7):
        assert FieldSpec.from_json(F.to_json()) == F
    for bad in ("real", {"prime": 9}, {"prime": "x"}, {"p": 7}):
        with pytest.raises(ParseError):
            FieldSpec.from_json(bad)
