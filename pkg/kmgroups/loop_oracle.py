"""The affine matrix [[2, -2], [-2, 2]] realised on sl_2 over Laurent
polynomials with a central element K, used as an independent oracle for
the intrinsic constructions.

Generators map to
    e_1 = (0 1; 0 0)    e_0 = (0 0; -t 0)
    f_1 = (0 0; -1 0)   f_0 = (0 t^-1; 0 0)
    h_1 = diag(1, -1)   h_0 = diag(-1, 1) + K
and the bracket is the matrix commutator plus the cocycle
c(a t^m, b t^n) = m delta_{m+n,0} tr(ab) times K.
"""

import logging
import typing
import pytypeutils as tus

import kmgroups.errors as errors
import kmgroups.group as group
from kmgroups.fields import FieldSpec, RATIONALS
from kmgroups.laurent import LaurentMat, LaurentPoly
from kmgroups.lie import KacMoodyAlgebra, LieElt
from kmgroups.weyl import RootVec

logger = logging.getLogger(__name__)

AFFINE_A1 = ((2, -2), (-2, 2))

class LoopElt:
    """An element X + cK of the centrally extended loop algebra.

    Attributes:
        matrix (LaurentMat): the traceless matrix part
        central: the coefficient of K
    """
    def __init__(self, matrix: LaurentMat, central=None):
        tus.check(matrix=(matrix, LaurentMat))
        if not matrix.trace().is_zero:
            raise ValueError(f'loop elements are traceless, got trace {matrix.trace().to_text()}')
        self.matrix = matrix
        self.central = matrix.field.zero if central is None else matrix.field.reduce(central)

    @property
    def field(self) -> FieldSpec:
        """Returns the coefficient field"""
        return self.matrix.field

    @classmethod
    def zero(cls, field: FieldSpec) -> 'LoopElt':
        """Returns 0"""
        zero = LaurentPoly.zero(field)
        return cls(LaurentMat([zero] * 4))

    def __add__(self, other: 'LoopElt') -> 'LoopElt':
        return LoopElt(self.matrix + other.matrix, self.central + other.central)

    def __neg__(self) -> 'LoopElt':
        return LoopElt(-self.matrix, -self.central)

    def __sub__(self, other: 'LoopElt') -> 'LoopElt':
        return self + (-other)

    def scale(self, val) -> 'LoopElt':
        """Returns val times this element"""
        val = self.field.reduce(val)
        return LoopElt(self.matrix.scale(val), val * self.central)

    @property
    def is_zero(self) -> bool:
        """Returns True for 0"""
        return all(e.is_zero for e in self.matrix.entries) and not self.central

    def __eq__(self, other):
        return (isinstance(other, LoopElt) and other.matrix == self.matrix
                and other.central == self.central)

    def __hash__(self):
        return hash((self.matrix, self.central))

    def __repr__(self):
        return f'LoopElt({self.matrix.to_text()!r}, K={self.central})'

def _check_fixture(algebra: KacMoodyAlgebra):
    if algebra.gcm.rows() != AFFINE_A1:
        raise errors.OutOfFixture(
            f'the loop realization only exists for {AFFINE_A1}, got {algebra.gcm}')

def _cocycle(x: LaurentMat, y: LaurentMat):
    """sum over m of m tr(x_m y_{-m})"""
    field = x.field
    total = field.zero
    for i in range(2):
        for k in range(2):
            a = x[i, k]
            b = y[k, i]
            for m, val in a.coeffs.items():
                if m:
                    other = b.coefficient(-m)
                    if other:
                        total = total + field.reduce(m) * val * other
    return total

def loop_bracket(x: LoopElt, y: LoopElt) -> LoopElt:
    """Returns [x, y] = xy - yx + c(x, y) K"""
    tus.check(x=(x, LoopElt), y=(y, LoopElt))
    if x.field != y.field:
        raise ValueError(f'mixed fields {x.field} and {y.field}')
    comm = x.matrix * y.matrix - y.matrix * x.matrix
    return LoopElt(comm, _cocycle(x.matrix, y.matrix))

def _mat(field: FieldSpec, a=(0, 0), b=(0, 0), c=(0, 0), d=(0, 0)) -> LaurentMat:
    """Entries given as (coeff, exponent)"""
    return LaurentMat([LaurentPoly.monomial(field, v, e) for v, e in (a, b, c, d)])

def generator_images(field: FieldSpec = RATIONALS) -> typing.Dict[str, LoopElt]:
    """Returns the images of e0, e1, f0, f1, h0, h1"""
    one = field.one
    return {
        'e0': LoopElt(_mat(field, c=(-one, 1))),
        'e1': LoopElt(_mat(field, b=(one, 0))),
        'f0': LoopElt(_mat(field, b=(one, -1))),
        'f1': LoopElt(_mat(field, c=(-one, 0))),
        'h0': LoopElt(_mat(field, a=(-one, 0), d=(one, 0)), one),
        'h1': LoopElt(_mat(field, a=(one, 0), d=(-one, 0))),
    }

class LoopRealization:
    """The realization map of g_A for the affine fixture over a field.
    Images of basis vectors are cached.

    Attributes:
        algebra (KacMoodyAlgebra): must be built on [[2, -2], [-2, 2]]
        field (FieldSpec): the coefficients
    """
    def __init__(self, algebra: KacMoodyAlgebra, field: FieldSpec = RATIONALS):
        tus.check(algebra=(algebra, KacMoodyAlgebra), field=(field, FieldSpec))
        _check_fixture(algebra)
        self.algebra = algebra
        self.field = field
        self.gens = generator_images(field)
        self._images = dict()
        if loop_bracket(self.gens['f0'], self.gens['e0']) != self.gens['h0']:
            raise errors.InternalInconsistency('cocycle normalization breaks [f_0, e_0] = h_0')

    def basis_image(self, key) -> LoopElt:
        """Returns the image of a basis vector of g_A"""
        found = self._images.get(key)
        if found is not None:
            return found
        deg, idx = key
        height = sum(deg)
        if height == 0:
            image = self.gens[f'h{idx}']
        else:
            pos = deg if height > 0 else tuple(-c for c in deg)
            word = self.algebra.bracket_word((pos, idx))
            image = self._word_image(word, height > 0)
        self._images[key] = image
        return image

    def _word_image(self, word: typing.Tuple[int, ...], positive: bool) -> LoopElt:
        """Image of the right-normed word in e_j, or in omega(e_j) = -f_j"""
        def letter(j):
            if positive:
                return self.gens[f'e{j}']
            return -self.gens[f'f{j}']
        image = letter(word[-1])
        for j in reversed(word[:-1]):
            image = loop_bracket(letter(j), image)
        return image

    def realize_lie(self, v: LieElt) -> LoopElt:
        """Returns the image of a vector (coefficients in QQ or this field)"""
        tus.check(v=(v, LieElt))
        total = LoopElt.zero(self.field)
        for key, val in v.terms.items():
            total = total + self.basis_image(key).scale(self.field.reduce(val))
        return total

    def unrealize(self, x: LoopElt) -> LieElt:
        """The inverse of realize_lie on its image: every homogeneous piece of
        the loop algebra outside degree 0 is a line.

        Raises:
            ValueError: if x is not in the image
        """
        tus.check(x=(x, LoopElt))
        out = dict()
        pieces = []
        for (i, j) in ((0, 1), (1, 0), (0, 0)):
            for exp, val in x.matrix[i, j].coeffs.items():
                if (i, j) == (0, 0) and exp == 0:
                    continue
                if (i, j) == (0, 1):
                    deg = (exp, exp + 1)
                elif (i, j) == (1, 0):
                    deg = (exp, exp - 1)
                else:
                    deg = (exp, exp)
                pieces.append((deg, (i, j), exp, val))
        for deg, pos, exp, val in pieces:
            key = (deg, 0)
            if deg[0] * deg[1] < 0 or self.algebra.multiplicity(RootVec(deg)) != 1:
                raise ValueError(f'{x} has a component outside the roots')
            unit = self.basis_image(key).matrix[pos].coefficient(exp)
            out[key] = val / unit
        diag = x.matrix[0, 0].coefficient(0)
        # a H + k K = k h_0 + (a + k) h_1
        out[((0, 0), 0)] = x.central
        out[((0, 0), 1)] = diag + x.central
        image = LieElt(out)
        if self.realize_lie(image) != x:
            raise ValueError(f'{x} is not in the image of realize_lie')
        return image

    def unipotent_matrix(self, letter: 'group.UnipLetter') -> LaurentMat:
        """Returns I + r X for X the matrix of canonical_e(alpha)"""
        root_vec = self.algebra.canonical_e(letter.alpha)
        image = self.realize_lie(root_vec)
        return LaurentMat.identity(self.field) + image.matrix.scale(letter.r)

    def torus_matrix(self, letter: 'group.TorusLetter') -> LaurentMat:
        """r^{alpha_1^v} is diag(r, r^-1) and r^{alpha_0^v} is
        diag(r^-1, r); the K direction is dropped"""
        r = self.field.reduce(letter.r)
        inv = self.field.inverse(r)
        if letter.i == 1:
            return _mat(self.field, a=(r, 0), d=(inv, 0))
        return _mat(self.field, a=(inv, 0), d=(r, 0))

    def realize_word(self, word: 'group.GroupWord') -> LaurentMat:
        """Returns the product of the letter matrices, leftmost first.

        Raises:
            InternalInconsistency: if the product has determinant != 1
        """
        tus.check(word=(word, group.GroupWord))
        result = LaurentMat.identity(self.field)
        for letter in word.expand(self.algebra).letters:
            if isinstance(letter, group.TorusLetter):
                mat = self.torus_matrix(letter)
            else:
                mat = self.unipotent_matrix(letter)
            result = result * mat
        if not result.is_special():
            raise errors.InternalInconsistency(
                f'{word.to_text()} realizes to determinant {result.det().to_text()}')
        return result

class OracleReport:
    """The outcome of comparing the adjoint action of a word with loop
    conjugation.

    Attributes:
        word (str): the word in the word grammar
        checked (int): number of basis vectors compared
        mismatches (list[str]): basis vectors where the two disagree
    """
    def __init__(self, word: str, checked: int, mismatches: typing.List[str]):
        self.word = word
        self.checked = checked
        self.mismatches = mismatches

    @property
    def equal(self) -> bool:
        """Returns True if no mismatch was found"""
        return not self.mismatches

    def record(self) -> dict:
        """Returns the JSON-lines record"""
        return {'word': self.word, 'checked': self.checked, 'equal': self.equal,
                'mismatches': self.mismatches}

def ad_compare(realization: LoopRealization, word: 'group.GroupWord',
               height: int) -> OracleReport:
    """Compares realize_lie(ad_apply(w, v)) with M realize_lie(v) M^-1,
    M = realize_word(w), modulo K, on every basis vector of |height| <=
    height"""
    tus.check(realization=(realization, LoopRealization), word=(word, group.GroupWord),
              height=(height, int))
    if word.field != realization.field:
        raise ValueError(f'word over {word.field}, realization over {realization.field}')
    algebra = realization.algebra
    mat = realization.realize_word(word)
    inv = mat.inverse()
    mismatches = []
    keys = algebra.basis_keys(height)
    for key in keys:
        v = LieElt.basis(key)
        intrinsic = realization.realize_lie(group.ad_apply(algebra, word, v)).matrix
        conjugated = mat * realization.realize_lie(v).matrix * inv
        if intrinsic != conjugated:
            mismatches.append(algebra.basis_word(key))
    if mismatches:
        logger.warning('ad_compare of %s failed on %s', word.to_text(), mismatches)
    return OracleReport(word.to_text(), len(keys), mismatches)

def _weyl_monomial_word(kind: str, exp: int) -> typing.Tuple[int, ...]:
    if kind == 'diag':
        if exp > 0:
            return (1, 0) * exp
        return (0, 1) * (-exp)
    if exp >= 0:
        return (1,) + (0, 1) * exp
    return (0,) + (1, 0) * (-exp - 1)

def iwahori_bruhat(m: LaurentMat) -> typing.Tuple[int, ...]:
    """Returns the reduced word of the affine Weyl element w with m in
    B+ w B+, B+ the Iwahori subgroup (entries in k[t], upper triangular at
    t = 0).

    Give the monomial c t^n at entry (i, j) the key 2n + j - i. Elements of
    B+ have all keys >= 0 with invertible key-0 part, keys add under
    multiplication, so the monomials of least key of b w b' are exactly
    those of w, rescaled. The positions of least key therefore name w:
    diag(t^a, t^-a) = (s1 s0)^a and (0 t^b; -t^-b 0) = s1 (s0 s1)^b.

    Only the cell is read off; no row and column reduction by valuation is
    carried out, so the factors b, b' are not returned.

    Raises:
        NotInGroup: if det m != 1
    """
    tus.check(m=(m, LaurentMat))
    if not m.is_special():
        raise errors.NotInGroup(f'determinant {m.det().to_text()} is not 1')
    best = None
    positions = []
    for i in range(2):
        for j in range(2):
            for exp in m[i, j].coeffs:
                key = 2 * exp + j - i
                if best is None or key < best:
                    best = key
                    positions = [(i, j)]
                elif key == best and (i, j) not in positions:
                    positions.append((i, j))
    positions = sorted(positions)
    if positions == [(0, 0), (1, 1)] and best == 0:
        return ()
    if positions == [(1, 1)]:
        return _weyl_monomial_word('diag', -best // 2)
    if positions == [(0, 0)]:
        return _weyl_monomial_word('diag', best // 2)
    if positions == [(1, 0)]:
        return _weyl_monomial_word('anti', (-best - 1) // 2)
    if positions == [(0, 1)]:
        return _weyl_monomial_word('anti', (best - 1) // 2)
    raise errors.InternalInconsistency(f'no Bruhat cell for {m.to_text()} (least key at {positions})')
