"""Tests for kmgroups.weyl"""
import itertools
import random
import pytest

import kmgroups.errors as errors
import kmgroups.gcm as gcm
from kmgroups.weyl import RootVec, WeylGroup

from conftest import MATRICES

def weyl_of(name: str) -> WeylGroup:
    return WeylGroup(gcm.validate(MATRICES[name]))

def test_root_literal():
    v = RootVec.parse('1,2', 2)
    assert v.coeffs == (1, 2)
    assert v.height == 3
    assert v.is_positive and not v.is_negative
    assert str(v) == '1,2'
    assert (-v).is_negative
    assert not RootVec((1, -1)).is_positive and not RootVec((1, -1)).is_negative
    assert RootVec.simple(3, 1).simple_index() == 1
    assert RootVec((1, 1)).simple_index() is None
    with pytest.raises(errors.ParseError):
        RootVec.parse('1;2')
    with pytest.raises(errors.ParseError):
        RootVec.parse('1,2,3', 2)

def test_reflect():
    w = weyl_of('A2')
    assert w.reflect(0, RootVec((0, 1))) == RootVec((1, 1))
    assert w.reflect(0, RootVec((1, 0))) == RootVec((-1, 0))
    assert w.reflect_coroot(0, (0, 1)) == (1, 1)

def test_length_and_reduced_words():
    w = weyl_of('A2')
    assert w.length((0, 1, 0, 1, 0, 1)) == (0, ())
    assert w.length((0, 1, 0))[0] == 3
    assert w.element((0, 1, 0)) == w.element((1, 0, 1))
    assert w.length((0, 0, 1)) == (1, (1,))
    aff = weyl_of('A1~')
    assert aff.length((0, 1, 0, 1)) == (4, (0, 1, 0, 1))
    assert aff.length((0, 1, 1, 0, 1)) == (1, (1,))

def test_inverse_element():
    w = weyl_of('G2')
    elt = w.element((0, 1, 1, 0, 1))
    assert (elt * w.inverse(elt)).is_identity

def test_real_roots_a2():
    roots = [d.root for d in weyl_of('A2').real_roots(3)]
    assert roots == [RootVec((0, 1)), RootVec((1, 0)), RootVec((1, 1))]

def test_real_roots_g2():
    roots = set(d.root.coeffs for d in weyl_of('G2').real_roots(10))
    assert roots == {(1, 0), (0, 1), (1, 1), (1, 2), (1, 3), (2, 3)}

def test_real_roots_affine():
    roots = set(d.root.coeffs for d in weyl_of('A1~').real_roots(5))
    assert roots == {(0, 1), (1, 0), (1, 2), (2, 1), (2, 3), (3, 2)}

@pytest.mark.parametrize('name', ['A2', 'B2', 'G2', 'A1~', 'H3'])
def test_coroots_pair_to_two(name):
    w = weyl_of(name)
    for datum in w.real_roots(6):
        assert w.pairing(datum.root, datum.coroot) == 2
        assert w.element(datum.word).apply(RootVec.simple(w.rank, datum.index)) == datum.root
        neg = w.real_root_datum(-datum.root)
        assert neg.root == -datum.root
        assert w.pairing(neg.root, neg.coroot) == 2

@pytest.mark.parametrize('name', ['B2', 'A1~', 'H3'])
def test_pairing_invariant(name):
    w = weyl_of(name)
    elt = w.element((0, 1, 0))
    for datum in w.real_roots(4):
        for other in w.real_roots(4):
            assert (w.pairing(elt.apply(datum.root), elt.apply_coroot(other.coroot))
                    == w.pairing(datum.root, other.coroot))

def test_root_kind():
    w = weyl_of('A1~')
    assert w.root_kind(RootVec((1, 2))) == 'real'
    assert w.root_kind(RootVec((1, 1))) == 'imaginary'
    assert w.root_kind(RootVec((-2, -2))) == 'imaginary'
    assert w.root_kind(RootVec((2, 0))) is None
    assert w.root_kind(RootVec((1, -1))) is None
    assert weyl_of('A2').root_kind(RootVec((2, 1))) is None

def test_real_root_datum_rejects():
    w = weyl_of('A1~')
    with pytest.raises(errors.NotARealRoot):
        w.real_root_datum(RootVec((1, 1)))
    with pytest.raises(errors.NotARealRoot):
        w.real_root_datum(RootVec((3, 0)))

def test_witness_is_least():
    datum = weyl_of('A2').real_root_datum(RootVec((1, 1)))
    assert datum.word == (0,)
    assert datum.index == 1
    assert datum.coroot == (1, 1)

def test_make_both_positive():
    w = weyl_of('A2')
    a0 = w.real_root_datum(RootVec((1, 0)))
    a1 = w.real_root_datum(RootVec((0, 1)))
    assert w.make_both_positive(a0, -a0) is None
    elt = w.make_both_positive(-a0, -a1)
    assert elt.apply(-a0.root).is_positive and elt.apply(-a1.root).is_positive
    elt = w.make_both_positive(-a0, a1)
    assert elt.apply(-a0.root).is_positive and elt.apply(a1.root).is_positive

def test_prenilpotent():
    w = weyl_of('A2')
    a0 = w.real_root_datum(RootVec((1, 0)))
    a1 = w.real_root_datum(RootVec((0, 1)))
    assert w.is_prenilpotent(a0, a1)
    assert w.is_prenilpotent(-a0, a1)
    assert not w.is_prenilpotent(a0, -a0)

    aff = weyl_of('A1~')
    b0 = aff.real_root_datum(RootVec((1, 0)))
    b1 = aff.real_root_datum(RootVec((0, 1)))
    delta_plus = aff.real_root_datum(RootVec((1, 2)))
    assert not aff.is_prenilpotent(b0, b1)
    assert aff.is_prenilpotent(b1, delta_plus)
    assert aff.make_both_positive(-b0, -b1) is None

def test_interval(a2):
    w = a2.weyl
    a0 = w.real_root_datum(RootVec((1, 0)))
    a1 = w.real_root_datum(RootVec((0, 1)))
    members = w.interval(a0, a1, 4, a2)
    assert [(m.gamma.coeffs, m.i, m.j, m.real) for m in members] == [((1, 1), 1, 1, True)]
    with pytest.raises(ValueError):
        w.interval(a0, -a0, 4, a2)

def test_interval_b2():
    import kmgroups.lie as lie
    algebra = lie.KacMoodyAlgebra(gcm.validate(MATRICES['B2']))
    w = algebra.weyl
    a0 = w.real_root_datum(RootVec((1, 0)))
    a1 = w.real_root_datum(RootVec((0, 1)))
    members = w.interval(a0, a1, 6, algebra)
    assert [(m.i, m.j) for m in members] == [(1, 1), (2, 1)]

def test_make_both_positive_affine_pair():
    aff = weyl_of('A1~')
    for i, delta_plus in ((0, (2, 1)), (1, (1, 2))):
        alpha = -aff.real_root_datum(RootVec.simple(2, i))
        beta = -aff.real_root_datum(RootVec(delta_plus))
        assert aff.is_prenilpotent(alpha, beta)
        elt = aff.make_both_positive(alpha, beta)
        assert elt is not None
        assert elt.apply(alpha.root).is_positive and elt.apply(beta.root).is_positive

@pytest.mark.parametrize('name,height', [('A2', 3), ('B2', 3), ('G2', 5), ('A1~', 3), ('H3', 1)])
def test_prenilpotent_symmetric_and_weyl_invariant(name, height):
    w = weyl_of(name)
    positive = w.real_roots(height)
    signed = positive + [-d for d in positive]
    for alpha, beta in itertools.combinations(signed, 2):
        verdict = w.is_prenilpotent(alpha, beta)
        assert w.is_prenilpotent(beta, alpha) == verdict
        for i in range(w.rank):
            image_a = w.real_root_datum(w.reflect(i, alpha.root))
            image_b = w.real_root_datum(w.reflect(i, beta.root))
            assert w.is_prenilpotent(image_a, image_b) == verdict, (alpha.root, beta.root, i)

@pytest.mark.parametrize('name,longest,heights', [
    ('B2', 8, (4, 8)), ('G2', 8, (6, 12)), ('A1~', 8, (20, 40)), ('H3', 3, (12, 24))])
def test_length_counts_inversions(name, longest, heights):
    w = weyl_of(name)
    rng = random.Random(0)
    for _ in range(20):
        word = tuple(rng.randrange(w.rank) for _ in range(rng.randint(0, longest)))
        elt = w.element(word)
        counts = [sum(1 for d in w.real_roots(h) if elt.apply(d.root).is_negative)
                  for h in heights]
        assert counts == [w.length(word)[0]] * len(heights), word
