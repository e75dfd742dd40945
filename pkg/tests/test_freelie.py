"""Tests for kmgroups.freelie, including the cross-check of root
multiplicities against the graded basis of kmgroups.lie"""
import pytest
from sympy.polys.domains import QQ

import kmgroups.freelie as freelie
import kmgroups.gcm as gcm

from conftest import MATRICES, algebra_named

def test_lyndon_words():
    assert freelie.is_lyndon((0, 0, 1))
    assert not freelie.is_lyndon((0, 1, 0))
    assert not freelie.is_lyndon((0, 1, 0, 1))
    assert freelie.lyndon_words((2, 1)) == [(0, 0, 1)]
    assert freelie.lyndon_words((2, 2)) == [(0, 0, 1, 1)]
    assert freelie.lyndon_words((1, 2)) == [(0, 1, 1)]
    assert len(freelie.lyndon_words((3, 3))) == 3

def test_standard_factorization():
    assert freelie.standard_factorization((0, 0, 1)) == ((0,), (0, 1))
    assert freelie.standard_factorization((0, 1, 1)) == ((0, 1), (1,))
    with pytest.raises(ValueError):
        freelie.standard_factorization((0,))

def test_lyndon_polynomial():
    assert freelie.lyndon_polynomial((0, 1)) == {(0, 1): QQ(1), (1, 0): QQ(-1)}
    poly = freelie.lyndon_polynomial((0, 0, 1))
    assert poly == {(0, 0, 1): QQ(1), (0, 1, 0): QQ(-2), (1, 0, 0): QQ(1)}

def test_serre_dimensions_a2():
    dims = freelie.serre_dimensions(gcm.validate(MATRICES['A2']), 4)
    assert [(r.coeffs, words) for r, words in dims.items()] == [
        ((0, 1), [(1,)]), ((1, 0), [(0,)]), ((1, 1), [(0, 1)])]

def _cross_check(name, height):
    algebra = algebra_named(name)
    dims = freelie.serre_dimensions(algebra.gcm, height)
    expected = dict((r, m) for r, m, _ in algebra.positive_roots(height))
    assert dict((r, len(w)) for r, w in dims.items()) == expected

@pytest.mark.parametrize('name', ['A2', 'B2', 'G2', 'A1~', 'A2(2)', 'H3'])
def test_multiplicities_agree(name):
    _cross_check(name, 4)

@pytest.mark.slow
@pytest.mark.parametrize('name', ['A2', 'B2', 'G2', 'A1~', 'A2(2)', 'H3'])
def test_multiplicities_agree_height_six(name):
    _cross_check(name, 6)
