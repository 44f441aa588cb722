from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from scissors.exactnum import (
    ExactReal,
    GeneratorTable,
    Sign,
    SymbolWitness,
    UndecidableSign,
    compare,
    exact,
    sign_of,
    sqrt_canonical,
    tensor,
)
from scissors.randgen import standard_table

TABLE = standard_table()
x, y, z = (TABLE.symbol(n) for n in "xyz")

fracs = st.fractions(min_value=-20, max_value=20, max_denominator=12)


@st.composite
def reals(draw):
    out = ExactReal.rational(draw(fracs))
    for s in (x, y, z):
        out = out + s * draw(fracs)
    return out


def test_cancellation():
    a = ExactReal.rational(3) + x * 2
    b = (ExactReal.rational(1) - x) * 2
    assert a + b == ExactReal.rational(5)
    assert (a + b).is_rational


def test_radicals_are_canonical():
    assert sqrt_canonical(8) == sqrt_canonical(2) * 2
    assert str(sqrt_canonical(8)) == "2*sqrt(2)"
    assert sqrt_canonical(F(9, 4)) == ExactReal.rational(F(3, 2))


def test_close_signs():
    assert sign_of(ExactReal.rational(3) - sqrt_canonical(2) * 2) == Sign.POSITIVE
    # pi - 314/100 is about 0.0016
    assert compare(x, ExactReal.rational(F(314, 100))) == Sign.POSITIVE
    assert compare(x, ExactReal.rational(F(315, 100))) == Sign.NEGATIVE
    assert sign_of(y - x) == Sign.NEGATIVE


def test_undecidable_without_digits():
    t = GeneratorTable([("w", SymbolWitness(F(0), F(1)))], max_bits=64)
    with pytest.raises(UndecidableSign):
        sign_of(t.symbol("w") - ExactReal.rational(F(1, 2)))


def test_json_and_parse():
    assert (x * 2).to_json() == {"x": "2"}
    assert ExactReal.rational(F(1, 2)).to_json() == "1/2"
    assert exact({"x": F(2)}, TABLE) == x * 2
    assert exact("1/2") == ExactReal.rational(F(1, 2))


def test_tensor_display():
    assert str(tensor(y, x) - tensor(x, y)) == "y⊗x − x⊗y"


@given(reals(), reals(), reals())
def test_ring_laws(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a + b == b + a
    assert a - a == ExactReal.zero()
    assert (a + b) * 3 == a * 3 + b * 3


@given(reals(), reals())
def test_sign_matches_float(a, b):
    d = a - b
    s = sign_of(d)
    if d.is_zero():
        assert s == Sign.ZERO
    elif abs(d.approx()) > 1e-9:
        assert (s == Sign.POSITIVE) == (d.approx() > 0)
    assert compare(a, b) == -compare(b, a)


@given(reals(), reals(), reals())
def test_tensor_bilinear(a, b, c):
    assert tensor(a + b, c) == tensor(a, c) + tensor(b, c)
    assert tensor(a, b * 2) == tensor(a, b) + tensor(a, b)
