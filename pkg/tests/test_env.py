"""Tests for kmgroups.env"""
import itertools
import math
import random
import pytest
import sympy
from sympy.polys.domains import QQ

import kmgroups.env as env_mod
import kmgroups.errors as errors
import kmgroups.group as group
from kmgroups.env import CoeffRing, TruncatedEnvelope
from kmgroups.fields import FieldSpec, RATIONALS
from kmgroups.weyl import RootVec

from conftest import algebra_named

Q = CoeffRing.rationals()

def datum(algebra, coeffs):
    return algebra.weyl.real_root_datum(RootVec(coeffs))

def test_letters(a2, affine):
    env = TruncatedEnvelope(a2, 2)
    assert [l.name() for l in env.letters] == ['x[0,1]#0', 'x[1,0]#0', 'x[1,1]#0']
    assert [l.real for l in env.letters] == [True, True, True]
    assert env.letters[2].vector == a2.bracket(a2.e(0), a2.e(1))
    aff = TruncatedEnvelope(affine, 4)
    assert [l.root.coeffs for l in aff.letters] == [
        (0, 1), (1, 0), (1, 1), (1, 2), (2, 1), (2, 2)]
    assert [l.real for l in aff.letters] == [True, True, False, True, True, False]
    assert aff.letters_of(RootVec((3, 3))) == []
    with pytest.raises(ValueError):
        TruncatedEnvelope(a2, 0)

def test_real_letter(a2):
    env = TruncatedEnvelope(a2, 1)
    assert env.real_letter(datum(a2, (1, 0))).ordinal == 1
    with pytest.raises(ValueError):
        env.real_letter(datum(a2, (-1, 0)))
    with pytest.raises(ValueError):
        env.real_letter(datum(a2, (1, 1)))

def test_coeff_ring():
    polys = CoeffRing.polynomials()
    assert polys.is_polynomial
    assert polys.convert(QQ(1, 2)) == polys.one * QQ(1, 2)
    with pytest.raises(ValueError):
        Q.t
    f2 = CoeffRing.from_field(FieldSpec(2))
    assert f2.name == 'Fp:2'
    with pytest.raises(errors.DeniedDenominator):
        f2.convert(QQ(1, 2))

def test_exp_and_inverse(affine):
    env = TruncatedEnvelope(affine, 4)
    a = datum(affine, (1, 0))
    x = env_mod.exp_real(QQ(3), a, env, Q)
    letter = env.real_letter(a).ordinal
    assert x.coefficient((letter,)) == 3
    assert x.coefficient((letter, letter)) == 9
    assert x.coefficient((letter,) * 3) == 27
    one = env.one(Q)
    assert x * env_mod.exp_real(QQ(-3), a, env, Q) == one
    assert x * env_mod.u_inverse(x) == one
    assert env_mod.u_inverse(x) * x == one

def test_inverse_of_product(affine):
    env = TruncatedEnvelope(affine, 5)
    x = (env_mod.exp_real(QQ(2), datum(affine, (1, 0)), env, Q)
         * env_mod.exp_real(QQ(-1, 3), datum(affine, (0, 1)), env, Q))
    assert x * env_mod.u_inverse(x) == env.one(Q)
    assert env_mod.u_inverse(x) * x == env.one(Q)

def test_not_a_unit(a2):
    env = TruncatedEnvelope(a2, 2)
    with pytest.raises(errors.NotAUnit):
        env_mod.u_inverse(env.one(Q).scale(QQ(2)))
    with pytest.raises(errors.NotAUnit):
        env_mod.uma_normal_form(env.one(Q) - env.one(Q))

def test_peers_must_match(a2):
    env = TruncatedEnvelope(a2, 2)
    other = TruncatedEnvelope(a2, 2)
    with pytest.raises(ValueError):
        env.one(Q) + other.one(Q)
    with pytest.raises(ValueError):
        env.one(Q) * env.one(CoeffRing.from_field(FieldSpec(5)))

def test_commutator_a2(a2):
    table = env_mod.commutator_constants(a2, datum(a2, (1, 0)), datum(a2, (0, 1)))
    assert table.as_dict() == {(RootVec((1, 1)), 1, 1): 1}
    assert table.records() == [{'gamma': [1, 1], 'i': 1, 'j': 1, 'C': 1, 'order_index': 0}]
    swapped = env_mod.commutator_constants(a2, datum(a2, (0, 1)), datum(a2, (1, 0)))
    assert swapped.as_dict() == {(RootVec((1, 1)), 1, 1): -1}

def test_commuting_pair(a2):
    table = env_mod.commutator_constants(a2, datum(a2, (1, 0)), datum(a2, (1, 1)))
    assert table.entries == []

def test_commutator_b2():
    algebra = algebra_named('B2')
    table = env_mod.commutator_constants(
        algebra, datum(algebra, (1, 0)), datum(algebra, (0, 1))).as_dict()
    assert set((g.coeffs, i, j) for g, i, j in table) == {((1, 1), 1, 1), ((2, 1), 2, 1)}
    assert all(abs(c) == 1 for c in table.values())

def test_commutator_g2():
    algebra = algebra_named('G2')
    table = env_mod.commutator_constants(
        algebra, datum(algebra, (1, 0)), datum(algebra, (0, 1))).as_dict()
    assert (RootVec((1, 1)), 1, 1) in table
    assert set(g.coeffs for g, _, _ in table) <= {(1, 1), (1, 2), (1, 3), (2, 3)}

def test_commutator_negative_pair(a2):
    table = env_mod.commutator_constants(a2, datum(a2, (-1, 0)), datum(a2, (1, 1)))
    entries = table.entries
    assert len(entries) == 1
    assert entries[0].gamma == RootVec((0, 1))
    assert (entries[0].i, entries[0].j) == (1, 1)
    assert abs(entries[0].constant) == 1
    assert table.transport != ()

def test_commutator_rejects(a2, affine):
    with pytest.raises(errors.NotPrenilpotent):
        env_mod.commutator_constants(affine, datum(affine, (1, 0)), datum(affine, (0, 1)))
    with pytest.raises(ValueError):
        env_mod.commutator_constants(a2, datum(a2, (1, 0)), datum(a2, (-1, 0)))

def test_transport_sign(a2):
    assert env_mod.transport_sign(a2, (), datum(a2, (1, 0))) == 1
    # s_0 maps e_0 to f_0 = e_{-alpha_0}
    assert env_mod.transport_sign(a2, (0,), datum(a2, (1, 0))) == 1
    # and f_0 back to e_0
    assert env_mod.transport_sign(a2, (0,), datum(a2, (-1, 0))) == 1

def test_normal_form_example(a2):
    env = TruncatedEnvelope(a2, 2)
    x = env_mod.parse_exponentials(env, 'x[1,0](1) x[0,1](2)')
    form = env_mod.uma_normal_form(x)
    assert form.records() == [
        {'letter': 'x[0,1]#0', 'root': [0, 1], 'index': 0, 'lambda': 2},
        {'letter': 'x[1,0]#0', 'root': [1, 0], 'index': 0, 'lambda': 1},
        {'letter': 'x[1,1]#0', 'root': [1, 1], 'index': 0, 'lambda': 2},
    ]
    assert form.expand() == x

def test_parse_exponentials_errors(a2):
    env = TruncatedEnvelope(a2, 2)
    for bad in ('y[1,0](1)', 'x[2,0](1)', 'x[1,0]#1(1)', 'x[1,0](1/0)', 'x[1,0]'):
        with pytest.raises(errors.ParseError):
            env_mod.parse_exponentials(env, bad)
    assert env_mod.parse_exponentials(env, '') == env.one(Q)

def _round_trips(algebra, truncation, count, seed):
    env = TruncatedEnvelope(algebra, truncation)
    rng = random.Random(seed)
    seen = set()
    for _ in range(count):
        lambdas = [QQ(rng.randint(-3, 3), rng.choice((1, 1, 2, 3))) for _ in env.letters]
        x = env_mod.expand_normal_form(env, lambdas)
        form = env_mod.uma_normal_form(x)
        assert form.lambdas == lambdas
        key = frozenset(x.terms.items())
        assert (key in seen) == (tuple(lambdas) in seen)
        seen.add(key)
        seen.add(tuple(lambdas))

def test_normal_form_round_trip():
    _round_trips(algebra_named('A1~'), 4, 10, 0)
    _round_trips(algebra_named('G2'), 5, 10, 1)

@pytest.mark.slow
def test_normal_form_round_trip_many():
    _round_trips(algebra_named('H3'), 5, 100, 2)
    _round_trips(algebra_named('A1~'), 6, 100, 3)

def test_expand_rejects_wrong_length(a2):
    env = TruncatedEnvelope(a2, 2)
    with pytest.raises(ValueError):
        env_mod.expand_normal_form(env, [QQ(1)])

def test_filtration(a2):
    env = TruncatedEnvelope(a2, 2)
    assert env_mod.filtration_level(env.one(Q)) == math.inf
    x = env_mod.parse_exponentials(env, 'x[1,0](5)')
    assert env_mod.filtration_level(x) == 1
    y = env_mod.parse_exponentials(env, 'x[1,1](-1)')
    assert env_mod.filtration_level(y) == 2
    assert env_mod.is_in_filtration(y, 2)
    assert not env_mod.is_in_filtration(x, 2)
    # commutators of height-1 elements land in height 2
    assert env_mod.is_in_filtration(env_mod.commutator(x, env_mod.parse_exponentials(
        env, 'x[0,1](3)')), 2)

def test_unipotent_to_uma(a2):
    env = TruncatedEnvelope(a2, 2)

    class Item:
        def __init__(self, alpha, r):
            self.alpha = alpha
            self.r = r

    word = [Item(datum(a2, (1, 0)), QQ(1)), Item(datum(a2, (0, 1)), QQ(2))]
    assert (env_mod.unipotent_to_uma(env, word, Q)
            == env_mod.parse_exponentials(env, 'x[1,0](1) x[0,1](2)'))

def test_records(a2):
    env = TruncatedEnvelope(a2, 2)
    x = env_mod.parse_exponentials(env, 'x[1,0](1/2)')
    assert x.records() == [
        {'monomial': [], 'coeff': 1},
        {'monomial': [['x[1,0]#0', 1]], 'coeff': '1/2'},
        {'monomial': [['x[1,0]#0', 2]], 'coeff': '1/4'},
    ]

def test_unit_outside_the_group(a2):
    env = TruncatedEnvelope(a2, 2)
    # 1 + x[0,1] x[1,0] is a unit with no single-letter terms
    x = env.element(Q, {(): QQ(1), (0, 1): QQ(1)})
    assert x.is_unit
    with pytest.raises(errors.NotGroupLike):
        env_mod.uma_normal_form(x)
    with pytest.raises(ValueError):
        env_mod.uma_normal_form(x)

@pytest.mark.parametrize('name', ['A2', 'B2', 'G2', pytest.param('A1~', marks=pytest.mark.slow)])
def test_commutator_identity_all_pairs(name):
    algebra = algebra_named(name)
    weyl = algebra.weyl
    positive = weyl.real_roots(3)
    signed = positive + [-d for d in positive]
    polys = CoeffRing.polynomials()
    env = TruncatedEnvelope(algebra, 4)
    checked = 0
    for alpha, beta in itertools.permutations(signed, 2):
        if alpha.root == -beta.root or not weyl.is_prenilpotent(alpha, beta):
            continue
        table = env_mod.commutator_constants(algebra, alpha, beta)
        if alpha.is_positive and beta.is_positive:
            members = weyl.interval(alpha, beta, 12, algebra)
            if max([alpha.height, beta.height] + [m.gamma.height for m in members]) > 4:
                continue
            lhs = env_mod.commutator(env_mod.exp_real(polys.t, alpha, env, polys),
                                     env_mod.exp_real(polys.u, beta, env, polys))
            rhs = env.one(polys)
            for entry in table.entries:
                coeff = polys.t ** entry.i * polys.u ** entry.j * entry.constant
                rhs = rhs * env_mod.exp_real(
                    coeff, weyl.real_root_datum(entry.gamma), env, polys)
            assert lhs == rhs, (alpha.root, beta.root)
        else:
            params = {'alpha': alpha, 'beta': beta, 't': QQ(2), 'u': QQ(-1, 3)}
            assert group.check_relation(algebra, 'R0', params, RATIONALS, 4).record()['holds']
        checked += 1
    assert checked

def _sp4_generators():
    """e_0 (short) and e_1 (long) of B2 as 4x4 symplectic matrices"""
    def unit(r, c):
        mat = sympy.zeros(4, 4)
        mat[r, c] = 1
        return mat
    return [unit(0, 1) - unit(2, 3), unit(1, 2)]

def _realize(algebra, vec, gens):
    total = sympy.zeros(4, 4)
    for key, val in vec.terms.items():
        word = algebra.bracket_word(key)
        mat = gens[word[-1]]
        for j in reversed(word[:-1]):
            mat = gens[j] * mat - mat * gens[j]
        total += QQ.to_sympy(val) * mat
    return total

def _mexp(mat):
    total = sympy.eye(4)
    term = sympy.eye(4)
    for n in range(1, 4):
        term = term * mat / n
        total += term
    return total.applyfunc(sympy.expand)

def test_commutator_b2_matches_matrix_model():
    algebra = algebra_named('B2')
    gens = _sp4_generators()
    mats = dict((g, _realize(algebra, algebra.canonical_e(datum(algebra, g)), gens))
                for g in ((1, 0), (0, 1), (1, 1), (2, 1)))
    t, u = sympy.symbols('t u')
    comm = (_mexp(-t * mats[(1, 0)]) * _mexp(-u * mats[(0, 1)])
            * _mexp(t * mats[(1, 0)]) * _mexp(u * mats[(0, 1)])).applyfunc(sympy.expand)
    expected = dict()
    for gamma, i, j in (((1, 1), 1, 1), ((2, 1), 2, 1)):
        mat = mats[gamma]
        r, c = next((r, c) for r in range(4) for c in range(4) if mat[r, c] != 0)
        value = sympy.Poly(comm[r, c], t, u).coeff_monomial(t ** i * u ** j) / mat[r, c]
        expected[(gamma, i, j)] = value
        comm = (_mexp(-value * t ** i * u ** j * mat) * comm).applyfunc(sympy.expand)
    assert comm == sympy.eye(4)
    assert all(abs(v) == 1 for v in expected.values())

    table = env_mod.commutator_constants(
        algebra, datum(algebra, (1, 0)), datum(algebra, (0, 1))).as_dict()
    assert dict(((g.coeffs, i, j), c) for (g, i, j), c in table.items()) == expected

def _random_products(algebra, truncation, count, seed):
    env = TruncatedEnvelope(algebra, truncation)
    rng = random.Random(seed)
    for _ in range(count):
        x = env.one(Q)
        for _ in range(rng.randint(1, 6)):
            letter = rng.choice(env.letters)
            coeff = QQ(rng.randint(-3, 3), rng.choice((1, 2, 3)))
            x = x * env.exp_letter(letter.ordinal, coeff, Q)
        form = env_mod.uma_normal_form(x)
        assert form.expand() == x
        bumped = list(form.lambdas)
        bumped[rng.randrange(len(bumped))] += 1
        assert env_mod.expand_normal_form(env, bumped) != x

def test_normal_form_of_any_product():
    _random_products(algebra_named('A2'), 6, 100, 4)
    _random_products(algebra_named('A1~'), 4, 20, 5)

@pytest.mark.slow
def test_normal_form_of_any_product_affine():
    _random_products(algebra_named('A1~'), 6, 100, 6)
