"""The height-truncated divided-power enveloping algebra of n+ and its unit
group.

A TruncatedEnvelope fixes an algebra and a height N. Its letters are the
vectors of the positive graded pieces of height <= N that generate the
integral structure: canonical_e(alpha) for a real root alpha and the
lattice_basis vectors for an imaginary one, ordered by (height, root,
index). A UElt is a linear combination of PBW monomials, nondecreasing
sequences of letter ordinals where a run of n equal ordinals stands for the
divided power x^(n) = x^n / n!. Products are brought back to PBW form by
straightening adjacent inversions with the Lie bracket; components of height
above N are discarded, so every identity is exact in the quotient.
"""

import logging
import math
import re
import threading
import typing
import pytypeutils as tus
from sympy.polys.domains import QQ
from sympy.polys.matrices import DomainMatrix
from sympy.polys.rings import ring

import kmgroups.errors as errors
import kmgroups.fields as fields
from kmgroups.lie import KacMoodyAlgebra, LieElt
from kmgroups.weyl import RootVec, RealRootDatum

logger = logging.getLogger(__name__)

_POLY_RING, _T, _U = ring('t,u', QQ)

class CoeffRing:
    """The coefficients of a UElt: the rationals, the polynomial ring
    QQ[t,u] in two central indeterminates or a prime field.

    Attributes:
        name (str): 'Q', 'Q[t,u]' or 'Fp:<p>'
        field (FieldSpec, optional): the field for Q and F_p, None for
            the polynomial ring
    """
    def __init__(self, name: str, field: typing.Optional[fields.FieldSpec]):
        self.name = name
        self.field = field

    @classmethod
    def rationals(cls) -> 'CoeffRing':
        """Returns QQ"""
        return cls('Q', fields.RATIONALS)

    @classmethod
    def polynomials(cls) -> 'CoeffRing':
        """Returns QQ[t,u]"""
        return cls('Q[t,u]', None)

    @classmethod
    def from_field(cls, field: fields.FieldSpec) -> 'CoeffRing':
        """Returns the ring for a FieldSpec"""
        tus.check(field=(field, fields.FieldSpec))
        return cls(repr(field), field)

    @property
    def is_polynomial(self) -> bool:
        """Returns True for QQ[t,u]"""
        return self.field is None

    @property
    def zero(self):
        """Returns 0"""
        return _POLY_RING.zero if self.field is None else self.field.zero

    @property
    def one(self):
        """Returns 1"""
        return _POLY_RING.one if self.field is None else self.field.one

    @property
    def t(self):
        """Returns the indeterminate t of QQ[t,u]"""
        if self.field is not None:
            raise ValueError(f'{self.name} has no indeterminates')
        return _T

    @property
    def u(self):
        """Returns the indeterminate u of QQ[t,u]"""
        if self.field is not None:
            raise ValueError(f'{self.name} has no indeterminates')
        return _U

    def convert(self, val):
        """Maps a rational into this ring.

        Raises:
            DeniedDenominator: over F_p when p divides the denominator
        """
        if self.field is None:
            return _POLY_RING.ground_new(QQ.convert(val))
        try:
            return self.field.reduce(val)
        except errors.IntegralityError as exc:
            raise errors.DeniedDenominator(str(exc)) from None

    def to_json(self, val):
        """Renders a coefficient for JSON output"""
        if self.field is None:
            return str(val)
        return self.field.to_json(val)

    def __eq__(self, other):
        return isinstance(other, CoeffRing) and self.name == other.name

    def __hash__(self):
        return hash(self.name)

    def __repr__(self):
        return self.name

Monomial = typing.Tuple[int, ...]

def _runs(word: Monomial) -> typing.List[typing.Tuple[int, int]]:
    """(ordinal, exponent) pairs of a nondecreasing word"""
    out = []
    for k in word:
        if out and out[-1][0] == k:
            out[-1] = (k, out[-1][1] + 1)
        else:
            out.append((k, 1))
    return out

def _factorial_weight(word: Monomial) -> int:
    prod = 1
    for _, n in _runs(word):
        prod *= math.factorial(n)
    return prod

class Letter:
    """A PBW generator of the truncated envelope.

    Attributes:
        ordinal (int): position in the fixed letter order
        root (RootVec): its degree
        index (int): position among the letters of the same degree
        vector (LieElt): the element of g_root it stands for
        real (bool): whether root is real
    """
    def __init__(self, ordinal: int, root: RootVec, index: int, vector: LieElt, real: bool):
        self.ordinal = ordinal
        self.root = root
        self.index = index
        self.vector = vector
        self.real = real

    @property
    def height(self) -> int:
        """Returns the height of the degree"""
        return self.root.height

    def name(self) -> str:
        """Returns a short printable name"""
        return f'x[{self.root}]#{self.index}'

    def __repr__(self):
        return f'Letter({self.ordinal}, {self.name()})'

class TruncatedEnvelope:
    """The divided-power envelope of n+ modulo heights above a truncation.
    Straightening results are memoized under a lock.

    Attributes:
        algebra (KacMoodyAlgebra): the Lie algebra
        truncation (int): the height N
        letters (list[Letter]): the PBW generators in order
    """
    def __init__(self, algebra: KacMoodyAlgebra, truncation: int):
        tus.check(algebra=(algebra, KacMoodyAlgebra), truncation=(truncation, int))
        if truncation < 1:
            raise ValueError(f'truncation must be at least 1, got {truncation}')
        self.algebra = algebra
        self.truncation = truncation
        self._lock = threading.RLock()
        self._straight = dict()
        self._products = dict()
        self._brackets = dict()
        self._steps = 0

        self.letters = []
        self._by_degree = dict()
        self._coords = dict()
        for root, mult, real in algebra.positive_roots(truncation):
            if real:
                datum = algebra.weyl.real_root_datum(root)
                vectors = [algebra.canonical_e(datum)]
            else:
                vectors = algebra.lattice_basis(root)
            if len(vectors) != mult:
                raise errors.InternalInconsistency(
                    f'{len(vectors)} letters for {root} of multiplicity {mult}')
            ords = []
            for idx, vec in enumerate(vectors):
                letter = Letter(len(self.letters), root, idx, vec, real)
                self.letters.append(letter)
                ords.append(letter.ordinal)
            self._by_degree[root.coeffs] = ords
            mat = DomainMatrix.from_list(
                [[vec.coefficient((root.coeffs, r)) or QQ(0) for vec in vectors]
                 for r in range(mult)], QQ)
            self._coords[root.coeffs] = mat.inv().to_list()
        self._heights = [letter.height for letter in self.letters]
        logger.debug('truncated envelope of %s at height %s has %s letters',
                     algebra.gcm, truncation, len(self.letters))

    def letters_of(self, root: RootVec) -> typing.List[Letter]:
        """Returns the letters of a positive root of height <= truncation"""
        tus.check(root=(root, RootVec))
        return [self.letters[k] for k in self._by_degree.get(root.coeffs, ())]

    def real_letter(self, alpha: RealRootDatum) -> Letter:
        """Returns the letter canonical_e(alpha) of a positive real root"""
        tus.check(alpha=(alpha, RealRootDatum))
        if not alpha.is_positive:
            raise ValueError(f'expected a positive real root, got {alpha.root}')
        ords = self._by_degree.get(alpha.root.coeffs)
        if not ords:
            raise ValueError(
                f'{alpha.root} has height above the truncation {self.truncation}')
        return self.letters[ords[0]]

    def height_of(self, word: Monomial) -> int:
        """Returns the height of a monomial"""
        return sum(self._heights[k] for k in word)

    def to_letters(self, vec: LieElt) -> typing.Dict[int, typing.Any]:
        """Expresses a positive vector of height <= truncation in letters"""
        out = dict()
        for deg in vec.degrees():
            if sum(deg) <= 0:
                raise ValueError('only positive degrees have letters')
            if sum(deg) > self.truncation:
                continue
            inv = self._coords.get(deg)
            if inv is None:
                raise errors.InternalInconsistency(f'vector in the non-root degree {deg}')
            for row, ordinal in enumerate(self._by_degree[deg]):
                val = sum((inv[row][r] * vec.coefficient((deg, r))
                           for r in range(len(inv))), QQ(0))
                if val:
                    out[ordinal] = val
        return out

    def _letter_bracket(self, k: int, l: int) -> dict:
        key = (k, l)
        found = self._brackets.get(key)
        if found is None:
            found = self.to_letters(
                self.algebra.bracket(self.letters[k].vector, self.letters[l].vector))
            self._brackets[key] = found
        return found

    def _straighten(self, word: Monomial) -> dict:
        """Rewrites a plain product of letters as a combination of
        nondecreasing plain products"""
        found = self._straight.get(word)
        if found is not None:
            return found
        pos = None
        for i in range(len(word) - 1):
            if word[i] > word[i + 1]:
                pos = i
                break
        if pos is None:
            return {word: QQ(1)}
        self._steps += 1
        if self._steps > self.algebra.limits.straighten_budget:
            raise errors.ResourceLimit(
                f'straightening exceeded {self.algebra.limits.straighten_budget} steps')
        x, y = word[pos], word[pos + 1]
        result = dict(self._straighten(word[:pos] + (y, x) + word[pos + 2:]))
        for z, c in self._letter_bracket(x, y).items():
            for w, d in self._straighten(word[:pos] + (z,) + word[pos + 2:]).items():
                new = result.get(w, 0) + c * d
                if new:
                    result[w] = new
                else:
                    result.pop(w, None)
        self._straight[word] = result
        return result

    def monomial_product(self, left: Monomial, right: Monomial) -> dict:
        """Returns the product of two divided-power monomials as rational
        coefficients on divided-power monomials"""
        key = (left, right)
        found = self._products.get(key)
        if found is not None:
            return found
        if self.height_of(left) + self.height_of(right) > self.truncation:
            return dict()
        with self._lock:
            self._steps = 0
            plain = self._straighten(left + right)
            denom = _factorial_weight(left) * _factorial_weight(right)
            result = dict()
            for w, c in plain.items():
                result[w] = c * _factorial_weight(w) / denom
            self._products[key] = result
        return result

    def element(self, coeff_ring: CoeffRing, terms: dict = None) -> 'UElt':
        """Returns a UElt over the given ring"""
        return UElt(self, coeff_ring, terms)

    def one(self, coeff_ring: CoeffRing) -> 'UElt':
        """Returns the identity"""
        return UElt(self, coeff_ring, {(): coeff_ring.one})

    def exp_letter(self, ordinal: int, coeff, coeff_ring: CoeffRing) -> 'UElt':
        """Returns exp(coeff x) = sum coeff^n x^(n) for a letter x"""
        height = self._heights[ordinal]
        terms = dict()
        power = coeff_ring.one
        for n in range(self.truncation // height + 1):
            terms[(ordinal,) * n] = power
            power = power * coeff
        return UElt(self, coeff_ring, terms)

class UElt:
    """An element of the truncated envelope.

    Attributes:
        env (TruncatedEnvelope): the envelope (fixes the truncation N)
        coeff_ring (CoeffRing): the coefficients
        terms (dict[tuple[int], coefficient]): nonzero coefficients of the
            divided-power PBW monomials; read only
    """
    __slots__ = ('env', 'coeff_ring', 'terms')

    def __init__(self, env: TruncatedEnvelope, coeff_ring: CoeffRing, terms: dict = None):
        self.env = env
        self.coeff_ring = coeff_ring
        clean = dict()
        if terms:
            for word, val in terms.items():
                if val and env.height_of(word) <= env.truncation:
                    clean[tuple(word)] = val
        self.terms = clean

    def _check_peer(self, other: 'UElt'):
        if not isinstance(other, UElt):
            raise TypeError(f'expected UElt, got {type(other)}')
        if other.env is not self.env or other.coeff_ring != self.coeff_ring:
            raise ValueError('UElts must share truncation and coefficient ring')

    @property
    def constant_term(self):
        """Returns the coefficient of the empty monomial"""
        return self.terms.get((), self.coeff_ring.zero)

    @property
    def is_unit(self) -> bool:
        """Returns True if the constant term is 1"""
        return self.constant_term == self.coeff_ring.one

    def coefficient(self, word: Monomial):
        """Returns the coefficient of a monomial (0 if absent)"""
        return self.terms.get(tuple(word), self.coeff_ring.zero)

    def __add__(self, other: 'UElt') -> 'UElt':
        self._check_peer(other)
        acc = dict(self.terms)
        for w, c in other.terms.items():
            acc[w] = acc.get(w, self.coeff_ring.zero) + c
        return UElt(self.env, self.coeff_ring, acc)

    def __neg__(self) -> 'UElt':
        return UElt(self.env, self.coeff_ring, dict((w, -c) for w, c in self.terms.items()))

    def __sub__(self, other: 'UElt') -> 'UElt':
        return self + (-other)

    def scale(self, coeff) -> 'UElt':
        """Returns coeff times this element"""
        return UElt(self.env, self.coeff_ring, dict((w, coeff * c) for w, c in self.terms.items()))

    def __mul__(self, other: 'UElt') -> 'UElt':
        return u_multiply(self, other)

    def __eq__(self, other):
        return (isinstance(other, UElt) and other.env is self.env
                and other.coeff_ring == self.coeff_ring and other.terms == self.terms)

    def __hash__(self):
        return hash(frozenset(self.terms))

    def records(self) -> typing.List[dict]:
        """Returns the terms as JSON-ready dicts in monomial order"""
        out = []
        for word in sorted(self.terms, key=lambda w: (self.env.height_of(w), w)):
            out.append({
                'monomial': [[self.env.letters[k].name(), n] for k, n in _runs(word)],
                'coeff': self.coeff_ring.to_json(self.terms[word])})
        return out

    def __repr__(self):
        return f'UElt({self.coeff_ring}, N={self.env.truncation}, {len(self.terms)} terms)'

def u_multiply(x: UElt, y: UElt) -> UElt:
    """Returns the product xy, straightened into PBW form and truncated.

    Raises:
        DeniedDenominator: over F_p if straightening needs a denominator
            divisible by p
    """
    tus.check(x=(x, UElt), y=(y, UElt))
    x._check_peer(y)
    env, coeff_ring = x.env, x.coeff_ring
    acc = dict()
    for left, a in x.terms.items():
        for right, b in y.terms.items():
            prod = a * b
            for word, q in env.monomial_product(left, right).items():
                acc[word] = acc.get(word, coeff_ring.zero) + prod * coeff_ring.convert(q)
    return UElt(env, coeff_ring, acc)

def exp_real(coeff, alpha: RealRootDatum, env: TruncatedEnvelope,
             coeff_ring: CoeffRing) -> UElt:
    """Returns exp(coeff e_alpha) = sum_n coeff^n e_alpha^(n) for a positive
    real root; the coefficients are exactly the powers of coeff"""
    tus.check(env=(env, TruncatedEnvelope), coeff_ring=(coeff_ring, CoeffRing))
    letter = env.real_letter(alpha)
    return env.exp_letter(letter.ordinal, coeff, coeff_ring)

def u_inverse(x: UElt) -> UElt:
    """Returns the two-sided inverse of a unit, sum_k (1 - x)^k.

    Raises:
        NotAUnit: if the constant term is not 1
    """
    tus.check(x=(x, UElt))
    if not x.is_unit:
        raise errors.NotAUnit(f'constant term is {x.constant_term}, not 1')
    one = x.env.one(x.coeff_ring)
    nil = one - x
    total = one
    power = one
    for _ in range(x.env.truncation):
        power = power * nil
        if not power.terms:
            break
        total = total + power
    return total

def commutator(x: UElt, y: UElt) -> UElt:
    """Returns the group commutator x^-1 y^-1 x y of two units"""
    return u_inverse(x) * u_inverse(y) * x * y

def unipotent_to_uma(env: TruncatedEnvelope, letters: typing.Iterable,
                     coeff_ring: CoeffRing) -> UElt:
    """Maps a word of unipotent letters x_alpha(r) on positive real roots to
    the product of the exp(r e_alpha) in the envelope. Each letter needs
    attributes alpha (RealRootDatum) and r (a scalar of coeff_ring)."""
    total = env.one(coeff_ring)
    for letter in letters:
        total = total * exp_real(letter.r, letter.alpha, env, coeff_ring)
    return total

class CommutatorEntry:
    """One constant of a commutator table.

    Attributes:
        gamma (RootVec): i alpha + j beta
        i (int), j (int): the coefficients
        constant (int): C^{alpha beta}_{ij}
        order_index (int): position of the factor in the product
    """
    def __init__(self, gamma: RootVec, i: int, j: int, constant: int, order_index: int):
        self.gamma = gamma
        self.i = i
        self.j = j
        self.constant = constant
        self.order_index = order_index

    def record(self) -> dict:
        """Returns the JSON-lines record"""
        return {'gamma': list(self.gamma.coeffs), 'i': self.i, 'j': self.j,
                'C': self.constant, 'order_index': self.order_index}

    def __repr__(self):
        return f'CommutatorEntry({self.gamma}, {self.i}, {self.j}, C={self.constant})'

class CommutatorTable:
    """The constants of [x_alpha(t), x_beta(u)] = prod x_gamma(C t^i u^j),
    listed in the order of the product.

    Attributes:
        alpha (RealRootDatum), beta (RealRootDatum): the pair
        entries (list[CommutatorEntry]): the nonzero constants in product
            order
        transport (tuple[int]): the Weyl word v making alpha and beta
            positive (empty if they already are)
        signs (tuple[int, int]): the signs with Ad(v~) e_alpha =
            sign e_{v alpha}, likewise for beta
    """
    def __init__(self, alpha: RealRootDatum, beta: RealRootDatum,
                 entries: typing.List[CommutatorEntry], transport: tuple, signs: tuple):
        self.alpha = alpha
        self.beta = beta
        self.entries = entries
        self.transport = transport
        self.signs = signs

    def as_dict(self) -> typing.Dict[typing.Tuple[RootVec, int, int], int]:
        """Returns {(gamma, i, j): C}"""
        return dict(((e.gamma, e.i, e.j), e.constant) for e in self.entries)

    def records(self) -> typing.List[dict]:
        """Returns the JSON-lines records"""
        return [e.record() for e in self.entries]

def _interval_cap(algebra: KacMoodyAlgebra, alpha: RealRootDatum, beta: RealRootDatum) -> int:
    """Roots i alpha + j beta of a prenilpotent pair have i, j <= 3"""
    return min(algebra.limits.max_height, 3 * (alpha.height + beta.height))

def commutator_constants(algebra: KacMoodyAlgebra, alpha: RealRootDatum,
                         beta: RealRootDatum) -> CommutatorTable:
    """Computes the constants of the commutator relation of a prenilpotent
    pair.

    The pair is first moved to positive roots by a Weyl element v. There the
    commutator of exp(t e_alpha) and exp(u e_beta) is expanded over QQ[t,u]
    at the height of the interval and the factors exp(C t^i u^j e_gamma)
    are peeled off from the left in the interval order; the remainder must
    be exactly 1. The constants are carried back through Ad(v~).

    Raises:
        NotPrenilpotent: if the pair is not prenilpotent
        NonIntegralConstant: if a peeled constant is not an integer
    """
    tus.check(algebra=(algebra, KacMoodyAlgebra), alpha=(alpha, RealRootDatum),
              beta=(beta, RealRootDatum))
    if beta.root == alpha.root or beta.root == -alpha.root:
        raise ValueError('commutator constants need beta != +-alpha')
    weyl = algebra.weyl
    if not weyl.is_prenilpotent(alpha, beta):
        raise errors.NotPrenilpotent(f'{{{alpha.root}, {beta.root}}} is not prenilpotent')
    elt = weyl.make_both_positive(alpha, beta)
    if elt is None:
        raise errors.NotPrenilpotent(f'no Weyl element makes {alpha.root}, {beta.root} positive')
    pos_a = weyl.real_root_datum(elt.apply(alpha.root))
    pos_b = weyl.real_root_datum(elt.apply(beta.root))
    sign_a = transport_sign(algebra, elt.word, alpha)
    sign_b = transport_sign(algebra, elt.word, beta)

    members = weyl.interval(pos_a, pos_b, _interval_cap(algebra, pos_a, pos_b), algebra)
    for member in members:
        if not member.real:
            raise errors.NotPrenilpotent(f'imaginary root {member.gamma} in the interval')
    trunc = max([pos_a.height, pos_b.height] + [m.gamma.height for m in members])
    env = TruncatedEnvelope(algebra, trunc)
    polys = CoeffRing.polynomials()
    t, u = polys.t, polys.u
    residual = commutator(exp_real(t, pos_a, env, polys), exp_real(u, pos_b, env, polys))

    entries = []
    for order_index, member in enumerate(members):
        gdatum = weyl.real_root_datum(member.gamma)
        letter = env.real_letter(gdatum)
        poly = residual.coefficient((letter.ordinal,))
        mono = t ** member.i * u ** member.j
        value = poly.coeff(mono) if poly else QQ(0)
        if poly != mono * value:
            raise errors.InternalInconsistency(
                f'coefficient of {letter.name()} is {poly}, not a multiple of {mono}')
        if QQ.denom(value) != 1:
            raise errors.NonIntegralConstant(
                f'C for {member.gamma} ({member.i}, {member.j}) is {value}')
        residual = exp_real(mono * (-value), gdatum, env, polys) * residual
        constant = int(QQ.numer(value))
        if constant:
            back = alpha.root * member.i + beta.root * member.j
            sign_g = transport_sign(algebra, elt.word, weyl.real_root_datum(back))
            constant *= sign_g * sign_a ** member.i * sign_b ** member.j
            entries.append(CommutatorEntry(back, member.i, member.j, constant, order_index))
    if residual != env.one(polys):
        raise errors.InternalInconsistency(
            f'commutator of {pos_a.root}, {pos_b.root} is not the product of its factors')
    logger.debug('commutator constants of %s, %s: %s', alpha.root, beta.root, entries)
    return CommutatorTable(alpha, beta, entries, tuple(elt.word), (sign_a, sign_b))

def transport_sign(algebra: KacMoodyAlgebra, word: typing.Sequence[int],
                   alpha: RealRootDatum) -> int:
    """Returns the sign e with Ad(s~_{w_0} ... s~_{w_k}) e_alpha =
    e canonical_e(w alpha).

    Raises:
        NotProportional: if the image is not +-canonical_e(w alpha)
    """
    vec = algebra.canonical_e(alpha)
    for j in reversed(tuple(word)):
        vec = algebra.simple_reflection_auto(j, vec)
    target_root = algebra.weyl.element(tuple(word)).apply(alpha.root)
    target = algebra.canonical_e(algebra.weyl.real_root_datum(target_root))
    if vec == target:
        return 1
    if vec == -target:
        return -1
    raise errors.NotProportional(
        f'Ad of {tuple(word)} maps e_{alpha.root} to {vec}, not +-e_{target_root}')

class NormalForm:
    """The unique factorisation g = prod exp(lambda_x x) over the letters
    in order.

    Attributes:
        env (TruncatedEnvelope): the envelope
        lambdas (list): one rational per letter, in letter order
    """
    def __init__(self, env: TruncatedEnvelope, lambdas: list):
        self.env = env
        self.lambdas = lambdas

    def items(self) -> typing.List[typing.Tuple[Letter, typing.Any]]:
        """Returns (letter, lambda) pairs in order"""
        return list(zip(self.env.letters, self.lambdas))

    def expand(self) -> UElt:
        """Multiplies the exponentials back together"""
        return expand_normal_form(self.env, self.lambdas)

    def records(self) -> typing.List[dict]:
        """Returns one JSON-ready dict per letter with nonzero lambda"""
        return [{'letter': letter.name(), 'root': list(letter.root.coeffs),
                 'index': letter.index, 'lambda': fields.format_rational(lam)}
                for letter, lam in self.items() if lam]

    def __eq__(self, other):
        return isinstance(other, NormalForm) and other.env is self.env and other.lambdas == self.lambdas

    def __repr__(self):
        return f'NormalForm({[(l.name(), lam) for l, lam in self.items() if lam]})'

def expand_normal_form(env: TruncatedEnvelope, lambdas: typing.Sequence) -> UElt:
    """Returns prod exp(lambda_k x_k) over the letters in order"""
    tus.check(env=(env, TruncatedEnvelope))
    if len(lambdas) != len(env.letters):
        raise ValueError(f'expected {len(env.letters)} lambdas, got {len(lambdas)}')
    rationals = CoeffRing.rationals()
    total = env.one(rationals)
    for letter, lam in zip(env.letters, lambdas):
        if lam:
            total = total * env.exp_letter(letter.ordinal, QQ.convert(lam), rationals)
    return total

def uma_normal_form(x: UElt) -> NormalForm:
    """Returns the unique lambdas with x = prod exp(lambda_k x_k).

    Letters are peeled from the left in order: once the earlier factors are
    removed, the single-letter coefficient of the next letter is exactly its
    lambda, since products of two or more letters of at least its height
    cannot land in its degree.

    Raises:
        NotAUnit: if x is not a unit
        NotGroupLike: if x is a unit but no product of exponentials
    """
    tus.check(x=(x, UElt))
    if x.coeff_ring != CoeffRing.rationals():
        raise ValueError(f'normal forms need rational coefficients, got {x.coeff_ring}')
    if not x.is_unit:
        raise errors.NotAUnit(f'constant term is {x.constant_term}, not 1')
    env = x.env
    residual = x
    lambdas = []
    for letter in env.letters:
        lam = residual.coefficient((letter.ordinal,))
        lambdas.append(lam if lam else QQ(0))
        if lam:
            residual = env.exp_letter(letter.ordinal, -lam, x.coeff_ring) * residual
    if residual != env.one(x.coeff_ring):
        raise errors.NotGroupLike(
            f'peeling every letter left {residual}, not 1')
    return NormalForm(env, lambdas)

def filtration_level(x: UElt) -> float:
    """Returns the smallest height carrying a nonzero lambda of the normal
    form of x (math.inf for 1)"""
    form = uma_normal_form(x)
    heights = [letter.height for letter, lam in form.items() if lam]
    return min(heights) if heights else math.inf

def is_in_filtration(x: UElt, level: int) -> bool:
    """Returns True if x lies in the subgroup of normal forms supported in
    heights >= level"""
    tus.check(level=(level, int))
    return filtration_level(x) >= level

_EXP_TOKEN = re.compile(r'^x\[(?P<root>[\d,]+)\](?:#(?P<k>\d+))?\((?P<coeff>[^)]*)\)$')

def parse_exponentials(env: TruncatedEnvelope, text: str) -> UElt:
    """Parses a product of exponentials written as whitespace separated
    tokens x[<root>](<rational>) or x[<root>]#<k>(<rational>), the latter
    naming the k-th letter of the root, and multiplies them out over QQ.

    Raises:
        ParseError: on malformed tokens or roots without such a letter
    """
    tus.check(env=(env, TruncatedEnvelope), text=(text, str))
    rationals = CoeffRing.rationals()
    total = env.one(rationals)
    for token in text.split():
        match = _EXP_TOKEN.match(token)
        if match is None:
            raise errors.ParseError(f'bad exponential {token!r}')
        root = RootVec.parse(match.group('root'), env.algebra.rank)
        k = int(match.group('k') or 0)
        letters = env.letters_of(root)
        if k >= len(letters):
            raise errors.ParseError(
                f'{token!r} names no letter of the envelope truncated at {env.truncation}')
        coeff = fields.parse_rational(match.group('coeff'))
        total = total * env.exp_letter(letters[k].ordinal, coeff, rationals)
    return total
