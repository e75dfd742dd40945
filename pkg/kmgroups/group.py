"""Words in the generators of the minimal Kac-Moody group and their adjoint
action on g_A, together with operator-level checks of the defining
relations.

Letters are x_alpha(r) for a real root alpha, r^{alpha_i^v} for a simple
coroot and s~_i(r) = x_{alpha_i}(r) x_{-alpha_i}(r^-1) x_{alpha_i}(r). The
root vector of a negative real root is e_{-alpha} = -omega(e_alpha), so
x_{-alpha_i}(r) acts as exp(ad r f_i). Words act right to left.

Over F_p every unipotent letter is evaluated over the rationals on integer
representatives and the result is reduced modulo p, which fails loudly with
IntegralityError when a denominator divisible by p shows up.
"""

import logging
import random
import re
import typing
import pytypeutils as tus
from sympy.polys.domains import QQ

import kmgroups.env as env
import kmgroups.errors as errors
import kmgroups.fields as fields
from kmgroups.fields import FieldSpec
from kmgroups.lie import KacMoodyAlgebra, LieElt
from kmgroups.weyl import RootVec, RealRootDatum

logger = logging.getLogger(__name__)

class UnipLetter:
    """x_alpha(r)

    Attributes:
        alpha (RealRootDatum): the real root
        r: the scalar
    """
    def __init__(self, alpha: RealRootDatum, r):
        tus.check(alpha=(alpha, RealRootDatum))
        self.alpha = alpha
        self.r = r

    def inverse(self) -> 'UnipLetter':
        """Returns x_alpha(-r)"""
        return UnipLetter(self.alpha, -self.r)

    def to_text(self, field: FieldSpec) -> str:
        """Renders the letter in the word grammar"""
        return f'x[{self.alpha.root}]({_scalar_text(field, self.r)})'

    def __eq__(self, other):
        return (isinstance(other, UnipLetter) and other.alpha == self.alpha
                and other.r == self.r)

    def __hash__(self):
        return hash(('x', self.alpha.root, self.r))

    def __repr__(self):
        return f'UnipLetter({self.alpha.root}, {self.r})'

class TorusLetter:
    """r^{alpha_i^v}

    Attributes:
        i (int): the simple coroot
        r: the nonzero scalar
    """
    def __init__(self, i: int, r):
        tus.check(i=(i, int))
        if not r:
            raise ValueError('torus letters need an invertible scalar')
        self.i = i
        self.r = r

    def inverse(self) -> 'TorusLetter':
        """Returns (r^-1)^{alpha_i^v}"""
        return TorusLetter(self.i, 1 / self.r)

    def to_text(self, field: FieldSpec) -> str:
        """Renders the letter in the word grammar"""
        return f't[{self.i}]({_scalar_text(field, self.r)})'

    def __eq__(self, other):
        return isinstance(other, TorusLetter) and (other.i, other.r) == (self.i, self.r)

    def __hash__(self):
        return hash(('t', self.i, self.r))

    def __repr__(self):
        return f'TorusLetter({self.i}, {self.r})'

class SLetter:
    """s~_i(r)

    Attributes:
        i (int): the simple root
        r: the nonzero scalar
    """
    def __init__(self, i: int, r):
        tus.check(i=(i, int))
        if not r:
            raise ValueError('s~ letters need an invertible scalar')
        self.i = i
        self.r = r

    def inverse(self) -> 'SLetter':
        """Returns s~_i(-r)"""
        return SLetter(self.i, -self.r)

    def expand(self, algebra: KacMoodyAlgebra) -> typing.List[UnipLetter]:
        """Returns x_{alpha_i}(r) x_{-alpha_i}(r^-1) x_{alpha_i}(r)"""
        simple = RootVec.simple(algebra.rank, self.i)
        pos = algebra.weyl.real_root_datum(simple)
        neg = algebra.weyl.real_root_datum(-simple)
        return [UnipLetter(pos, self.r), UnipLetter(neg, 1 / self.r), UnipLetter(pos, self.r)]

    def to_text(self, field: FieldSpec) -> str:
        """Renders the letter in the word grammar"""
        if self.r == field.one:
            return f's[{self.i}]'
        return f's[{self.i}]({_scalar_text(field, self.r)})'

    def __eq__(self, other):
        return isinstance(other, SLetter) and (other.i, other.r) == (self.i, self.r)

    def __hash__(self):
        return hash(('s', self.i, self.r))

    def __repr__(self):
        return f'SLetter({self.i}, {self.r})'

Letter = typing.Union[UnipLetter, TorusLetter, SLetter]

def _scalar_text(field: FieldSpec, val) -> str:
    return str(field.to_json(val))

class GroupWord:
    """A finite word in the group generators over a field.

    Attributes:
        letters (tuple[Letter]): the letters, leftmost first
        field (FieldSpec): where the scalars live
    """
    def __init__(self, letters: typing.Sequence[Letter], field: FieldSpec):
        tus.check(field=(field, FieldSpec))
        tus.check_listlike(letters=(letters, (UnipLetter, TorusLetter, SLetter)))
        self.letters = tuple(letters)
        self.field = field

    def __len__(self):
        return len(self.letters)

    def __mul__(self, other: 'GroupWord') -> 'GroupWord':
        if other.field != self.field:
            raise ValueError(f'cannot multiply words over {self.field} and {other.field}')
        return GroupWord(self.letters + other.letters, self.field)

    def inverse(self) -> 'GroupWord':
        """Returns the word of inverse letters in reverse order"""
        return GroupWord([l.inverse() for l in reversed(self.letters)], self.field)

    def expand(self, algebra: KacMoodyAlgebra) -> 'GroupWord':
        """Replaces every s~ letter by its three unipotent letters"""
        out = []
        for letter in self.letters:
            if isinstance(letter, SLetter):
                out.extend(letter.expand(algebra))
            else:
                out.append(letter)
        return GroupWord(out, self.field)

    def to_text(self) -> str:
        """Renders the word in the word grammar"""
        return ' '.join(l.to_text(self.field) for l in self.letters)

    def __eq__(self, other):
        return (isinstance(other, GroupWord) and other.field == self.field
                and other.letters == self.letters)

    def __hash__(self):
        return hash((self.letters, self.field))

    def __repr__(self):
        return f'GroupWord({self.to_text()!r}, {self.field!r})'

_LETTER = re.compile(
    r'^(?:x\[(?P<root>[-\d,]+)\]\((?P<xs>[^)]*)\)'
    + r'|t\[(?P<ti>\d+)\]\((?P<ts>[^)]*)\)'
    + r'|s\[(?P<si>\d+)\](?:\((?P<ss>[^)]*)\))?)$')

def parse_word(algebra: KacMoodyAlgebra, text: str, field: FieldSpec) -> GroupWord:
    """Parses whitespace separated letters x[<root>](<scalar>),
    t[<i>](<scalar>), s[<i>] and s[<i>](<scalar>).

    Raises:
        ParseError: on malformed letters, bad indices or zero scalars
        NotARealRoot: if a unipotent letter names a non-real root
    """
    tus.check(algebra=(algebra, KacMoodyAlgebra), text=(text, str), field=(field, FieldSpec))
    letters = []
    for token in text.split():
        match = _LETTER.match(token)
        if match is None:
            raise errors.ParseError(f'bad word letter {token!r}')
        if match.group('root') is not None:
            root = RootVec.parse(match.group('root'), algebra.rank)
            letters.append(UnipLetter(
                algebra.weyl.real_root_datum(root), field.parse_scalar(match.group('xs'))))
            continue
        idx = int(match.group('ti') if match.group('ti') is not None else match.group('si'))
        if idx >= algebra.rank:
            raise errors.ParseError(f'index {idx} out of range in {token!r}')
        raw = match.group('ts') if match.group('ti') is not None else match.group('ss')
        scalar = field.one if raw is None else field.parse_scalar(raw)
        if not scalar:
            raise errors.ParseError(f'{token!r} needs an invertible scalar')
        if match.group('ti') is not None:
            letters.append(TorusLetter(idx, scalar))
        else:
            letters.append(SLetter(idx, scalar))
    return GroupWord(letters, field)

def _lift(field: FieldSpec, val):
    """Integer (or rational) representative of a scalar"""
    if field.is_rational:
        return QQ.convert(val)
    return QQ(int(val))

def torus_adjoint(algebra: KacMoodyAlgebra, letters: typing.Sequence[TorusLetter],
                  v: LieElt) -> LieElt:
    """Scales the degree beta component of v by prod r_i^{<beta, alpha_i^v>};
    coroot components are fixed"""
    tus.check(algebra=(algebra, KacMoodyAlgebra), v=(v, LieElt))
    out = dict()
    for (deg, idx), val in v.terms.items():
        for letter in letters:
            power = sum(algebra.gcm[letter.i, k] * n for k, n in enumerate(deg))
            if power:
                val = val * letter.r ** power
        out[(deg, idx)] = val
    return LieElt(out)

def _warn_small_characteristic(algebra: KacMoodyAlgebra, field: FieldSpec):
    if field.p is not None and field.p <= algebra.gcm.m_a:
        logger.warning('evaluating over F_%s with p <= M_A = %s; the unipotent '
                       + 'group is only dense for larger characteristic',
                       field.p, algebra.gcm.m_a)

def ad_unipotent(algebra: KacMoodyAlgebra, letter: UnipLetter, v: LieElt,
                 field: FieldSpec) -> LieElt:
    """Applies exp(ad r e_alpha) to v"""
    root_vec = algebra.canonical_e(letter.alpha)
    if field.is_rational:
        return algebra.ad_exp(root_vec, v, scale=QQ.convert(letter.r))
    lifted = v.map_coefficients(lambda c: _lift(field, c))
    image = algebra.ad_exp(root_vec, lifted, scale=_lift(field, letter.r))
    return image.map_coefficients(field.reduce)

def ad_apply(algebra: KacMoodyAlgebra, word: GroupWord, v: LieElt) -> LieElt:
    """Applies the adjoint action of a word to v, rightmost letter first.

    Raises:
        NilpotencyCapExceeded: if some ad e_alpha fails to terminate
        IntegralityError: over F_p when p divides a denominator
    """
    tus.check(algebra=(algebra, KacMoodyAlgebra), word=(word, GroupWord), v=(v, LieElt))
    field = word.field
    _warn_small_characteristic(algebra, field)
    if not field.is_rational:
        v = v.map_coefficients(field.reduce)
    for letter in reversed(word.expand(algebra).letters):
        if isinstance(letter, TorusLetter):
            v = torus_adjoint(algebra, [letter], v)
        else:
            v = ad_unipotent(algebra, letter, v, field)
    return v

def weyl_sign(algebra: KacMoodyAlgebra, i: int, gamma: RealRootDatum) -> int:
    """Returns the e in {+1, -1} with Ad(s~_i) canonical_e(gamma) =
    e canonical_e(s_i gamma).

    Raises:
        NotProportional: if the image is not +-canonical_e(s_i gamma)
    """
    tus.check(algebra=(algebra, KacMoodyAlgebra), i=(i, int), gamma=(gamma, RealRootDatum))
    return env.transport_sign(algebra, (i,), gamma)

class RelationReport:
    """The outcome of an operator-level relation check.

    Attributes:
        relation (str): 'R0' .. 'R4'
        params (dict): the instantiation, JSON-ready
        field (FieldSpec): the scalars
        height (int): basis vectors of |height| <= height were compared
        checked (int): how many basis vectors were compared
        epsilon (int, optional): the sign recorded for R4
        constants (list[dict], optional): the table used for R0
    """
    def __init__(self, relation: str, params: dict, field: FieldSpec, height: int,
                 checked: int, epsilon: int = None, constants: list = None):
        self.relation = relation
        self.params = params
        self.field = field
        self.height = height
        self.checked = checked
        self.epsilon = epsilon
        self.constants = constants

    def record(self) -> dict:
        """Returns the JSON-lines record"""
        rec = {'relation': self.relation, 'params': self.params,
               'field': repr(self.field), 'height': self.height,
               'checked': self.checked, 'holds': True}
        if self.epsilon is not None:
            rec['epsilon'] = self.epsilon
        if self.constants is not None:
            rec['constants'] = self.constants
        return rec

def compare_operators(algebra: KacMoodyAlgebra, lhs: GroupWord, rhs: GroupWord,
                      height: int, relation: str) -> int:
    """Compares the adjoint actions of two words on every basis vector of
    |height| <= height.

    Returns:
        int: the number of basis vectors compared

    Raises:
        RelationFailed: with the first basis vector where they differ
    """
    keys = algebra.basis_keys(height)
    for key in keys:
        v = LieElt.basis(key)
        left = ad_apply(algebra, lhs, v)
        right = ad_apply(algebra, rhs, v)
        if left != right:
            raise errors.RelationFailed(
                f'{relation} fails on {algebra.basis_word(key)}: {left} != {right}',
                witness=key)
    return len(keys)

def _unip(algebra: KacMoodyAlgebra, root: RootVec, r) -> UnipLetter:
    return UnipLetter(algebra.weyl.real_root_datum(root), r)

def _coroot_torus(coroot: typing.Sequence[int], r) -> typing.List[TorusLetter]:
    """prod_k (r^{c_k})^{alpha_k^v} for a coroot c = sum c_k alpha_k^v"""
    return [TorusLetter(k, r ** c) for k, c in enumerate(coroot) if c]

def tilde_s_matrixcheck(algebra: KacMoodyAlgebra, i: int, r, field: FieldSpec,
                        height: int) -> RelationReport:
    """Checks r^{alpha_i^v} = s~_i^-1 s~_i(r^-1) as operators"""
    return check_relation(algebra, 'R3', {'i': i, 'r': r}, field, height)

def check_relation(algebra: KacMoodyAlgebra, relation: str, params: dict,
                   field: FieldSpec, height: int) -> RelationReport:
    """Verifies one instance of a defining relation as an identity of
    adjoint operators on all basis vectors of |height| <= height.

    Args:
        relation (str): one of
            'R0' params alpha, beta (RealRootDatum), t, u:
                [x_alpha(t), x_beta(u)] = prod x_gamma(C t^i u^j)
            'R1' params i, alpha, r, t:
                r^{alpha_i^v} x_alpha(t) r^{-alpha_i^v} = x_alpha(r^{<alpha, alpha_i^v>} t)
            'R2' params i, j, r:
                s~_i r^{alpha_j^v} s~_i^-1 = r^{s_i alpha_j^v}
            'R3' params i, r:
                r^{alpha_i^v} = s~_i^-1 s~_i(r^-1)
            'R4' params i, gamma, t:
                s~_i x_gamma(t) s~_i^-1 = x_{s_i gamma}(e t) with e = weyl_sign
        params (dict): scalars must already be elements of field

    Raises:
        RelationFailed: with a witness basis vector
    """
    tus.check(algebra=(algebra, KacMoodyAlgebra), relation=(relation, str),
              params=(params, dict), field=(field, FieldSpec), height=(height, int))
    weyl = algebra.weyl
    rank = algebra.rank
    one = field.one
    epsilon = None
    constants = None
    if relation == 'R0':
        alpha, beta, t, u = params['alpha'], params['beta'], params['t'], params['u']
        table = env.commutator_constants(algebra, alpha, beta)
        lhs = [UnipLetter(alpha, -t), UnipLetter(beta, -u), UnipLetter(alpha, t), UnipLetter(beta, u)]
        rhs = [_unip(algebra, e.gamma, field.reduce(e.constant) * t ** e.i * u ** e.j)
               for e in table.entries]
        constants = table.records()
        shown = {'alpha': list(alpha.root.coeffs), 'beta': list(beta.root.coeffs),
                 't': field.to_json(t), 'u': field.to_json(u)}
    elif relation == 'R1':
        i, alpha, r, t = params['i'], params['alpha'], params['r'], params['t']
        power = weyl.simple_pairing(alpha.root, i)
        lhs = [TorusLetter(i, r), UnipLetter(alpha, t), TorusLetter(i, one / r)]
        rhs = [UnipLetter(alpha, r ** power * t)]
        shown = {'i': i, 'alpha': list(alpha.root.coeffs), 'r': field.to_json(r),
                 't': field.to_json(t)}
    elif relation == 'R2':
        i, j, r = params['i'], params['j'], params['r']
        coroot = weyl.reflect_coroot(i, tuple(1 if k == j else 0 for k in range(rank)))
        lhs = [SLetter(i, one), TorusLetter(j, r), SLetter(i, -one)]
        rhs = _coroot_torus(coroot, r)
        shown = {'i': i, 'j': j, 'r': field.to_json(r), 'coroot': list(coroot)}
    elif relation == 'R3':
        i, r = params['i'], params['r']
        lhs = [TorusLetter(i, r)]
        rhs = [SLetter(i, -one), SLetter(i, one / r)]
        shown = {'i': i, 'r': field.to_json(r)}
    elif relation == 'R4':
        i, gamma, t = params['i'], params['gamma'], params['t']
        epsilon = weyl_sign(algebra, i, gamma)
        image = weyl.reflect(i, gamma.root)
        lhs = [SLetter(i, one), UnipLetter(gamma, t), SLetter(i, -one)]
        rhs = [_unip(algebra, image, field.reduce(epsilon) * t)]
        shown = {'i': i, 'gamma': list(gamma.root.coeffs), 't': field.to_json(t)}
        if t + t:
            # the same sign must work for another parameter
            compare_operators(
                algebra,
                GroupWord([SLetter(i, one), UnipLetter(gamma, t + t), SLetter(i, -one)], field),
                GroupWord([_unip(algebra, image, field.reduce(epsilon) * (t + t))], field),
                height, relation)
    else:
        raise ValueError(f'unknown relation {relation!r}, expected R0..R4')
    checked = compare_operators(
        algebra, GroupWord(lhs, field), GroupWord(rhs, field), height, relation)
    logger.info('%s %s holds on %s basis vectors over %s', relation, shown, checked, field)
    return RelationReport(relation, shown, field, height, checked, epsilon, constants)

def relation_instances(algebra: KacMoodyAlgebra, relation: str, field: FieldSpec,
                       rng: random.Random, root_height: int = 2) -> typing.List[dict]:
    """Returns the parameter sets swept by the check command: every simple
    index (pair) with one random scalar each, and for R0 every prenilpotent
    pair of positive real roots of height <= root_height"""
    rank = algebra.rank
    weyl = algebra.weyl

    def scalar():
        return _random_scalar(rng, field)

    out = []
    if relation == 'R0':
        roots = weyl.real_roots(root_height)
        for a in range(len(roots)):
            for b in range(a + 1, len(roots)):
                alpha, beta = roots[a], roots[b]
                if weyl.is_prenilpotent(alpha, beta):
                    out.append({'alpha': alpha, 'beta': beta, 't': scalar(), 'u': scalar()})
    elif relation == 'R1':
        for i in range(rank):
            for alpha in weyl.real_roots(root_height):
                out.append({'i': i, 'alpha': alpha, 'r': scalar(), 't': scalar()})
    elif relation == 'R2':
        for i in range(rank):
            for j in range(rank):
                out.append({'i': i, 'j': j, 'r': scalar()})
    elif relation == 'R3':
        for i in range(rank):
            out.append({'i': i, 'r': scalar()})
    elif relation == 'R4':
        for i in range(rank):
            for gamma in weyl.real_roots(root_height):
                out.append({'i': i, 'gamma': gamma, 't': scalar()})
    else:
        raise ValueError(f'unknown relation {relation!r}, expected R0..R4')
    return out

def _random_scalar(rng: random.Random, field: FieldSpec):
    """A nonzero scalar: a residue over F_p, a small fraction over Q"""
    if field.p is not None:
        return field.reduce(rng.randrange(1, field.p))
    num = rng.choice([-3, -2, -1, 1, 2, 3])
    return QQ(num, rng.randint(1, 2))

def random_word(algebra: KacMoodyAlgebra, rng: random.Random, length: int,
                field: FieldSpec, height: int = 2) -> GroupWord:
    """Draws a word of the given length: each letter picks a kind (unipotent,
    torus, s~) uniformly, then a root of height <= height of either sign or
    a simple index, and a nonzero scalar.

    Args:
        rng (random.Random): the seeded Mersenne Twister
    """
    tus.check(algebra=(algebra, KacMoodyAlgebra), rng=(rng, random.Random),
              length=(length, int), field=(field, FieldSpec), height=(height, int))
    roots = algebra.weyl.real_roots(height)
    roots = roots + [-datum for datum in roots]
    letters = []
    for _ in range(length):
        kind = rng.randrange(3)
        if kind == 0:
            letters.append(UnipLetter(rng.choice(roots), _random_scalar(rng, field)))
        elif kind == 1:
            letters.append(TorusLetter(rng.randrange(algebra.rank), _random_scalar(rng, field)))
        else:
            letters.append(SLetter(rng.randrange(algebra.rank), _random_scalar(rng, field)))
    return GroupWord(letters, field)
