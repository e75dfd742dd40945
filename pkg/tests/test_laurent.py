"""Tests for kmgroups.laurent"""
import pytest
from sympy.polys.domains import QQ

import kmgroups.errors as errors
from kmgroups.fields import FieldSpec, RATIONALS
from kmgroups.laurent import LaurentMat, LaurentPoly

def test_parse_and_render():
    poly = LaurentPoly.parse('1+2t^-1-t^2', RATIONALS)
    assert poly.coeffs == {0: QQ(1), -1: QQ(2), 2: QQ(-1)}
    assert poly.to_text() == '2*t^-1+1-t^2'
    assert poly.valuation == -1 and poly.degree == 2
    assert LaurentPoly.parse('3/2*t', RATIONALS).to_text() == '3/2*t'
    assert LaurentPoly.parse('t - t', RATIONALS).to_text() == '0'
    assert LaurentPoly.parse('-t^-3', RATIONALS).to_text() == '-t^-3'
    assert LaurentPoly.zero(RATIONALS).valuation is None

def test_parse_over_fp():
    f7 = FieldSpec(7)
    assert LaurentPoly.parse('8+t', f7).to_text() == '1+t'
    assert LaurentPoly.parse('3/2*t', FieldSpec(5)).to_text() == '4*t'
    assert LaurentPoly.parse('7*t^2', f7).is_zero

@pytest.mark.parametrize('text', ['', '2*', '*t', 'x', '1/0', 't^', '2t^1.5'])
def test_parse_errors(text):
    with pytest.raises(errors.ParseError):
        LaurentPoly.parse(text, RATIONALS)

def test_arithmetic():
    a = LaurentPoly.parse('1+t', RATIONALS)
    b = LaurentPoly.parse('1-t^-1', RATIONALS)
    assert (a * b).to_text() == '-t^-1+t'
    assert (a - a).is_zero
    assert a.shift(-1).to_text() == 't^-1+1'
    assert LaurentPoly.monomial(RATIONALS, QQ(2), 3).unit_inverse().to_text() == '1/2*t^-3'
    with pytest.raises(ValueError):
        a.unit_inverse()
    with pytest.raises(ValueError):
        a + LaurentPoly.one(FieldSpec(3))

def test_matrices():
    m = LaurentMat.parse('1;t;0;1', RATIONALS)
    assert m.is_special()
    assert m.inverse().to_text() == '1;-t;0;1'
    assert m * m.inverse() == LaurentMat.identity(RATIONALS)
    s0 = LaurentMat.parse('0;t^-1;-t;0', RATIONALS)
    assert s0.det() == LaurentPoly.one(RATIONALS)
    assert (s0 * s0) == -LaurentMat.identity(RATIONALS)
    assert m[0, 1].to_text() == 't'
    assert LaurentMat.from_scalars(RATIONALS, [[2, 0], [0, 1]]).det().to_text() == '2'

def test_inverse_needs_unit_determinant():
    with pytest.raises(errors.NotInGroup):
        LaurentMat.parse('1+t;0;0;1', RATIONALS).inverse()
    scaled = LaurentMat.parse('2*t;0;0;1', RATIONALS)
    assert scaled * scaled.inverse() == LaurentMat.identity(RATIONALS)

def test_matrix_parse_errors():
    with pytest.raises(errors.ParseError):
        LaurentMat.parse('1;0;1', RATIONALS)
    with pytest.raises(ValueError):
        LaurentMat([LaurentPoly.one(RATIONALS)] * 3 + [LaurentPoly.one(FieldSpec(3))])
