"""The derived Kac-Moody algebra g_A = n- + h' + n+ built degree by degree
over the rationals.

For each positive degree alpha the root space g_alpha is spanned by the
right-normed brackets [e_j, b] with b running over a basis of
g_{alpha - alpha_j}. A vector x of positive degree is recorded through its
images [f_i, x] in the already built lower degrees; a combination of
candidates vanishes in g_A exactly when all of its f-images vanish, so the
multiplicity is the rank of the f-image matrix and the basis is made of the
pivot candidates, scanned in lexicographic order of their bracket words.

This is the quotient of the free Lie algebra by its largest graded ideal
meeting h trivially. For symmetrizable A it equals the Serre quotient;
otherwise every degree up to limits.serre_check_height is compared with
kmgroups.freelie.SerreQuotient and PresentationMismatch is raised on any
difference.

The negative part is the mirror image under the involution omega with
omega(e_i) = -f_i and omega(h) = -h. A basis key is (degree, index): a
positive degree names a basis vector of n+, the zero degree names the
coroot alpha_index^v and a negative degree -beta names omega of the basis
vector of beta.

Conventions: [f_i, e_j] = delta_ij alpha_i^v, hence [e_i, f_i] = -alpha_i^v,
and [h, e_i] = alpha_i(h) e_i with alpha_j(alpha_i^v) = a_ij.
"""

import logging
import math
import re
import threading
import typing
import pytypeutils as tus
from sympy import Matrix
from sympy.matrices.normalforms import hermite_normal_form
from sympy.polys.domains import QQ
from sympy.polys.matrices import DomainMatrix

import kmgroups.errors as errors
import kmgroups.fields as fields
import kmgroups.freelie as freelie
import kmgroups.limits as limits_mod
from kmgroups.gcm import Gcm, symmetrize
from kmgroups.weyl import RootVec, RealRootDatum, WeylGroup

logger = logging.getLogger(__name__)

Degree = typing.Tuple[int, ...]
Key = typing.Tuple[Degree, int]

def _axpy(acc: dict, coeff, vec: dict):
    """acc += coeff * vec, dropping zeros"""
    for key, val in vec.items():
        new = acc.get(key, 0) + coeff * val
        if new:
            acc[key] = new
        else:
            acc.pop(key, None)

def _neg(deg: Degree) -> Degree:
    return tuple(-c for c in deg)

def _omega(vec: dict) -> dict:
    out = dict()
    for (deg, idx), val in vec.items():
        if any(deg):
            out[(_neg(deg), idx)] = val
        else:
            out[(deg, idx)] = -val
    return out

def format_word(word: typing.Sequence[int]) -> str:
    """Renders a right-normed bracket word, (0, 0, 1) -> '[e0,[e0,e1]]'"""
    if len(word) == 1:
        return f'e{word[0]}'
    return f'[e{word[0]},{format_word(word[1:])}]'

class LieElt:
    """A finite linear combination of basis vectors of g_A.

    Attributes:
        terms (dict[tuple[tuple[int], int], coefficient]): basis key to
            nonzero coefficient. Coefficients are QQ elements, or GF(p)
            elements for reductions modulo p. Treat as read only.
    """
    __slots__ = ('terms',)

    def __init__(self, terms: dict = None):
        clean = dict()
        if terms:
            for key, val in terms.items():
                if val:
                    clean[key] = val
        self.terms = clean

    @classmethod
    def basis(cls, key: Key, coeff=None) -> 'LieElt':
        """Returns coeff times the basis vector with the given key"""
        return cls({key: QQ(1) if coeff is None else coeff})

    @property
    def is_zero(self) -> bool:
        """Returns True for the zero vector"""
        return not self.terms

    def degrees(self) -> typing.List[Degree]:
        """Returns the sorted degrees with a nonzero component"""
        return sorted(set(deg for deg, _ in self.terms), key=lambda d: (sum(d), d))

    def component(self, deg: Degree) -> 'LieElt':
        """Returns the homogeneous component of the given degree"""
        deg = tuple(deg)
        return LieElt(dict((k, v) for k, v in self.terms.items() if k[0] == deg))

    def coefficient(self, key: Key):
        """Returns the coefficient of a basis vector (0 if absent)"""
        return self.terms.get(key, 0)

    def map_coefficients(self, func) -> 'LieElt':
        """Applies func to every coefficient"""
        return LieElt(dict((k, func(v)) for k, v in self.terms.items()))

    def __add__(self, other: 'LieElt') -> 'LieElt':
        acc = dict(self.terms)
        _axpy(acc, 1, other.terms)
        return LieElt(acc)

    def __sub__(self, other: 'LieElt') -> 'LieElt':
        acc = dict(self.terms)
        _axpy(acc, -1, other.terms)
        return LieElt(acc)

    def __neg__(self) -> 'LieElt':
        return LieElt(dict((k, -v) for k, v in self.terms.items()))

    def __rmul__(self, coeff) -> 'LieElt':
        return LieElt(dict((k, coeff * v) for k, v in self.terms.items()))

    def __eq__(self, other):
        return isinstance(other, LieElt) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __repr__(self):
        if not self.terms:
            return 'LieElt(0)'
        parts = []
        for (deg, idx), val in sorted(self.terms.items(), key=lambda kv: (sum(kv[0][0]), kv[0])):
            parts.append(f'{val}*b{list(deg)}#{idx}')
        return 'LieElt(' + ' + '.join(parts) + ')'

class GradedBasis:
    """A snapshot of the positive graded pieces up to a height.

    Attributes:
        height (int): the height the snapshot covers
        words (dict[RootVec, tuple[tuple[int]]]): the basis bracket words of
            each positive root of height <= height
    """
    def __init__(self, height: int, words: typing.Dict[RootVec, tuple]):
        self.height = height
        self.words = words

    def dimension(self, alpha: RootVec) -> int:
        """Returns dim g_alpha (alpha of either sign, height within range)"""
        if alpha.is_negative:
            alpha = -alpha
        return len(self.words.get(alpha, ()))

    def roots(self) -> typing.List[RootVec]:
        """Returns the positive roots in the fixed order"""
        return sorted(self.words, key=lambda r: r.sort_key())

    def dump_records(self) -> typing.Iterator[dict]:
        """Yields one dump record per positive root"""
        for root in self.roots():
            words = self.words[root]
            yield {'root': list(root.coeffs), 'dim': len(words),
                   'basis': [format_word(w) for w in words]}

class KacMoodyAlgebra:
    """The derived Kac-Moody algebra of a GCM with a lazily grown graded
    basis. Growth happens under a single lock; bracket results are memoized
    and never change once computed.

    Attributes:
        gcm (Gcm): the matrix
        weyl (WeylGroup): its Weyl group
        limits (Limits): the budgets
        symmetrizable (bool): whether A admits a symmetrization
    """
    def __init__(self, gcm: Gcm, limits: limits_mod.Limits = None):
        if limits is None:
            limits = limits_mod.DEFAULT
        tus.check(gcm=(gcm, Gcm), limits=(limits, limits_mod.Limits))
        self.gcm = gcm
        self.limits = limits
        self.weyl = WeylGroup(gcm, limits)
        self._lock = threading.RLock()
        self._height = 0
        self._by_height = dict()
        self._basis = dict()
        self._split = dict()
        self._fimg = dict()
        self._emat = dict()
        self._memo = dict()
        self._canonical = dict()
        self._lattice = dict()
        self._built = set()
        self.symmetrizable = symmetrize(gcm) is not None
        self._serre = None
        self._serre_warned = False

    @property
    def rank(self) -> int:
        """Returns |I|"""
        return self.gcm.size

    @property
    def built_height(self) -> int:
        """Returns the height the graded basis currently reaches"""
        return self._height

    def _unit(self, i: int) -> Degree:
        return tuple(1 if k == i else 0 for k in range(self.rank))

    def _pairing(self, deg: Degree, i: int) -> int:
        """<deg, alpha_i^v>"""
        return sum(self.gcm[i, k] * n for k, n in enumerate(deg))

    def extend_to_height(self, height: int) -> GradedBasis:
        """Grows the graded basis until every degree of height <= height is
        known.

        Raises:
            ResourceLimit: beyond limits.max_height or if a degree has more
                candidates than limits.max_component_dim
        """
        tus.check(height=(height, int))
        if height < 1:
            raise ValueError(f'height must be at least 1, got {height}')
        self._ensure(height)
        return self.graded_basis(height)

    def _ensure(self, height: int):
        if height <= self._height:
            return
        if height > self.limits.max_height:
            raise errors.ResourceLimit(
                f'height {height} exceeds the configured maximum '
                + f'{self.limits.max_height}')
        with self._lock:
            while self._height < height:
                self._build_next()

    def _ensure_degree(self, deg: Degree):
        """Builds one positive degree together with every degree below it,
        without completing whole height layers"""
        height = sum(deg)
        if height <= self._height or deg in self._built:
            return
        if height > self.limits.max_height:
            raise errors.ResourceLimit(
                f'degree {deg} of height {height} exceeds the configured maximum '
                + f'{self.limits.max_height}')
        if not self.symmetrizable:
            check = self.limits.serre_check_height
            if height <= check:
                self._ensure(height)
                return
            self._ensure(check)
            self._warn_unchecked()
        with self._lock:
            self._ensure(1)
            for j in range(self.rank):
                if deg[j]:
                    self._ensure_degree(tuple(n - (1 if k == j else 0) for k, n in enumerate(deg)))
            if deg not in self._built:
                self._build_degree(deg)

    def graded_basis(self, height: int) -> GradedBasis:
        """Returns the snapshot of positive degrees up to height (which must
        already be built)"""
        with self._lock:
            if height > self._height:
                raise ValueError(f'height {height} not built yet')
            words = dict()
            for m in range(1, height + 1):
                for deg in self._by_height.get(m, ()):
                    words[RootVec(deg)] = tuple(self._basis[deg])
        return GradedBasis(height, words)

    def _build_next(self):
        m = self._height + 1
        if m == 1:
            for i in range(self.rank):
                deg = self._unit(i)
                self._basis[deg] = [(i,)]
                self._split[deg] = [None]
                self._fimg[deg] = [tuple(
                    {i: QQ(1)} if k == i else dict() for k in range(self.rank))]
                self._built.add(deg)
            self._by_height[1] = sorted(self._unit(i) for i in range(self.rank))
        else:
            degrees = set()
            for deg in self._by_height[m - 1]:
                for j in range(self.rank):
                    degrees.add(tuple(n + (1 if k == j else 0) for k, n in enumerate(deg)))
            for deg in sorted(degrees):
                if deg not in self._built:
                    self._build_degree(deg)
            self._by_height[m] = sorted(d for d in degrees if d in self._basis)
        self._height = m
        logger.debug('graded basis of %s extended to height %s (%s roots)',
                     self.gcm, m, len(self._by_height[m]))
        if not self.symmetrizable:
            self._check_serre(m)

    def _check_serre(self, m: int):
        """Compares the degrees of height m with the Serre presentation. The
        f-image construction always yields the quotient by the maximal
        graded ideal; for non-symmetrizable A equal dimensions in every
        degree are what make it the Serre quotient."""
        check = self.limits.serre_check_height
        if m > check:
            self._warn_unchecked()
            return
        if self._serre is None:
            self._serre = freelie.SerreQuotient(self.gcm)
        self._serre.extend_to_height(m)
        degrees = set(d for d in self._serre.bases if sum(d) == m)
        degrees.update(self._by_height[m])
        for deg in sorted(degrees):
            ours = len(self._basis.get(deg, ()))
            theirs = len(self._serre.bases.get(deg, ()))
            if ours != theirs:
                raise errors.PresentationMismatch(
                    f'degree {deg}: maximal-ideal quotient has dimension {ours}, '
                    + f'Serre presentation has {theirs}')

    def _warn_unchecked(self):
        if not self._serre_warned:
            self._serre_warned = True
            logger.warning(
                '%s is not symmetrizable: degrees above height %s are not '
                + 'compared with the Serre presentation', self.gcm,
                self.limits.serre_check_height)

    def _candidate_fimage(self, deg: Degree, j: int, idx: int) -> tuple:
        """The images [f_i, [e_j, b]] for b the idx-th basis vector of
        deg - alpha_j, each in the basis of deg - alpha_i"""
        prev = tuple(n - (1 if k == j else 0) for k, n in enumerate(deg))
        out = []
        for i in range(self.rank):
            vec = dict()
            if i == j:
                pair = self._pairing(prev, i)
                if pair:
                    vec[idx] = QQ(pair)
            lowered = self._fimg[prev][idx][i]
            if lowered:
                lower = tuple(n - (1 if k == i else 0) for k, n in enumerate(prev))
                if not any(lower):
                    # [e_j, alpha_k^v] = -a_kj e_j
                    val = sum((c * -self.gcm[k, j] for k, c in lowered.items()), QQ(0))
                    if val:
                        vec[0] = vec.get(0, 0) + val
                else:
                    images = self._emat[(lower, j)]
                    for l, c in lowered.items():
                        _axpy(vec, c, images[l])
            out.append(dict((k, v) for k, v in vec.items() if v))
        return tuple(out)

    def _build_degree(self, deg: Degree):
        self._built.add(deg)
        cands = []
        for j in range(self.rank):
            if deg[j] == 0:
                continue
            prev = tuple(n - (1 if k == j else 0) for k, n in enumerate(deg))
            for idx, word in enumerate(self._basis.get(prev, ())):
                cands.append(((j,) + word, j, idx))
        if not cands:
            return
        if len(cands) > self.limits.max_component_dim:
            raise errors.ResourceLimit(
                f'degree {deg} has {len(cands)} bracket candidates, more than '
                + f'{self.limits.max_component_dim}')
        cands.sort()

        offsets = dict()
        nrows = 0
        for i in range(self.rank):
            if deg[i] == 0:
                continue
            target = tuple(n - (1 if k == i else 0) for k, n in enumerate(deg))
            if target in self._basis:
                offsets[i] = nrows
                nrows += len(self._basis[target])

        columns = [self._candidate_fimage(deg, j, idx) for _, j, idx in cands]
        dod = dict()
        for col, images in enumerate(columns):
            for i, vec in enumerate(images):
                if not vec:
                    continue
                if i not in offsets:
                    raise errors.InternalInconsistency(
                        f'f-image of degree {deg} lands outside the roots')
                for l, val in vec.items():
                    dod.setdefault(offsets[i] + l, dict())[col] = val

        if dod:
            mat = DomainMatrix(dod, (nrows, len(cands)), QQ)
            reduced, pivots = mat.rref()
            rows = reduced.to_list()
        else:
            pivots, rows = (), []
        rank = len(pivots)

        for col, (_, j, idx) in enumerate(cands):
            prev = tuple(n - (1 if k == j else 0) for k, n in enumerate(deg))
            coords = dict((k, rows[k][col]) for k in range(rank) if rows[k][col])
            table = self._emat.setdefault((prev, j), [None] * len(self._basis[prev]))
            table[idx] = coords
        if rank == 0:
            return
        self._basis[deg] = [cands[p][0] for p in pivots]
        self._split[deg] = [(cands[p][1], cands[p][2]) for p in pivots]
        self._fimg[deg] = [columns[p] for p in pivots]

    def multiplicity(self, alpha: RootVec) -> int:
        """Returns dim g_alpha for a nonzero vector with coefficients of one
        sign (0 when alpha is not a root)"""
        tus.check(alpha=(alpha, RootVec))
        if alpha.rank != self.rank:
            raise ValueError(f'expected rank {self.rank}, got {alpha}')
        if alpha.is_negative:
            alpha = -alpha
        if not alpha.is_positive:
            raise ValueError(f'multiplicity needs a nonzero vector of one sign, got {alpha}')
        self._ensure_degree(alpha.coeffs)
        return len(self._basis.get(alpha.coeffs, ()))

    def positive_roots(self, height: int) -> typing.List[typing.Tuple[RootVec, int, bool]]:
        """Returns (root, multiplicity, is_real) for every positive root of
        height <= height, in the fixed order"""
        basis = self.extend_to_height(height)
        out = []
        for root in basis.roots():
            mult = basis.dimension(root)
            real = self.weyl.root_kind(root) == 'real'
            if real and mult != 1:
                raise errors.InternalInconsistency(
                    f'real root {root} has multiplicity {mult}')
            out.append((root, mult, real))
        return out

    def basis_keys(self, height: int) -> typing.List[Key]:
        """Returns every basis key with |height| <= height: negative degrees,
        then the coroots, then positive degrees, each by height"""
        self._ensure(height)
        with self._lock:
            pos = []
            for m in range(1, height + 1):
                for deg in self._by_height.get(m, ()):
                    pos.extend((deg, k) for k in range(len(self._basis[deg])))
        zero = tuple([0] * self.rank)
        neg = [(_neg(deg), k) for deg, k in reversed(pos)]
        return neg + [(zero, i) for i in range(self.rank)] + pos

    def bracket_word(self, key: Key) -> typing.Tuple[int, ...]:
        """Returns the right-normed word (j_1, ..., j_m) of a positive basis
        vector, standing for [e_j1, [..., e_jm]]"""
        deg, idx = key
        self._ensure_degree(tuple(deg))
        return self._basis[tuple(deg)][idx]

    def basis_word(self, key: Key) -> str:
        """Returns a readable name of a basis vector"""
        deg, idx = key
        if not any(deg):
            return f'h{idx}'
        if sum(deg) > 0:
            return format_word(self._basis[deg][idx])
        return 'omega(' + format_word(self._basis[_neg(deg)][idx]) + ')'

    def e(self, i: int) -> LieElt:
        """Returns the generator e_i"""
        return LieElt.basis((self._unit(i), 0))

    def f(self, i: int) -> LieElt:
        """Returns the generator f_i = -omega(e_i)"""
        return LieElt.basis((_neg(self._unit(i)), 0), QQ(-1))

    def h(self, i: int) -> LieElt:
        """Returns the coroot alpha_i^v"""
        return LieElt.basis((tuple([0] * self.rank), i))

    def omega(self, x: LieElt) -> LieElt:
        """Applies the involution e_i -> -f_i, f_i -> -e_i, h -> -h"""
        tus.check(x=(x, LieElt))
        return LieElt(_omega(x.terms))

    def _ad_e(self, j: int, key: Key) -> dict:
        deg, idx = key
        height = sum(deg)
        if height == 0:
            val = -self.gcm[idx, j]
            return {(self._unit(j), 0): QQ(val)} if val else dict()
        if height > 0:
            target = tuple(n + (1 if k == j else 0) for k, n in enumerate(deg))
            self._ensure_degree(target)
            return dict(((target, l), c) for l, c in self._emat[(deg, j)][idx].items())
        # [e_j, omega(b)] = -omega([f_j, b])
        pos = _neg(deg)
        self._ensure_degree(pos)
        lowered = self._fimg[pos][idx][j]
        if not lowered:
            return dict()
        lower = tuple(n - (1 if k == j else 0) for k, n in enumerate(pos))
        if not any(lower):
            return dict(((lower, k), c) for k, c in lowered.items())
        return dict(((_neg(lower), l), -c) for l, c in lowered.items())

    def _ad_e_vec(self, j: int, vec: dict) -> dict:
        acc = dict()
        for key, val in vec.items():
            _axpy(acc, val, self._ad_e(j, key))
        return acc

    def _br_key(self, xkey: Key, ykey: Key) -> dict:
        memo_key = (xkey, ykey)
        found = self._memo.get(memo_key)
        if found is not None:
            return found
        xdeg, xidx = xkey
        ydeg, _ = ykey
        xheight = sum(xdeg)
        if xheight == 0:
            val = 0 if not any(ydeg) else self._pairing(ydeg, xidx)
            result = {ykey: QQ(val)} if val else dict()
        elif not any(ydeg):
            val = -self._pairing(xdeg, ykey[1])
            result = {xkey: QQ(val)} if val else dict()
        elif xheight < 0:
            ominus = _omega({ykey: QQ(1)})
            inner = self._br_vec((_neg(xdeg), xidx), ominus)
            result = _omega(inner)
        else:
            split = self._split[xdeg][xidx]
            if split is None:
                j = xdeg.index(1)
                result = self._ad_e(j, ykey)
            else:
                # [[e_j, b], y] = [e_j, [b, y]] - [b, [e_j, y]]
                j, bidx = split
                bkey = (tuple(n - (1 if k == j else 0) for k, n in enumerate(xdeg)), bidx)
                result = self._ad_e_vec(j, self._br_key(bkey, ykey))
                _axpy(result, -1, self._br_vec(bkey, self._ad_e(j, ykey)))
        self._memo[memo_key] = result
        return result

    def _br_vec(self, xkey: Key, vec: dict) -> dict:
        acc = dict()
        for key, val in vec.items():
            _axpy(acc, val, self._br_key(xkey, key))
        return acc

    def bracket(self, x: LieElt, y: LieElt) -> LieElt:
        """Returns [x, y]. The graded basis grows as far as the result needs.

        Raises:
            ResourceLimit: if the needed height exceeds the configured cap
        """
        tus.check(x=(x, LieElt), y=(y, LieElt))
        if x.is_zero or y.is_zero:
            return LieElt()
        acc = dict()
        with self._lock:
            for deg in x.degrees() + y.degrees():
                if sum(deg) > 0:
                    self._ensure_degree(deg)
                elif sum(deg) < 0:
                    self._ensure_degree(_neg(deg))
            for xkey, xval in x.terms.items():
                for ykey, yval in y.terms.items():
                    _axpy(acc, xval * yval, self._br_key(xkey, ykey))
        return LieElt(acc)

    def ad_exp(self, x: LieElt, v: LieElt, scale=None) -> LieElt:
        """Returns exp(ad(scale x)) v = sum_n scale^n (ad x)^n v / n!, which
        must terminate within limits.nilpotency_cap terms.

        Raises:
            NilpotencyCapExceeded: if (ad x)^n v does not vanish in time
        """
        if scale is None:
            scale = QQ(1)
        total = v
        term = v
        for n in range(1, self.limits.nilpotency_cap + 1):
            term = self.bracket(x, term)
            if term.is_zero:
                return total
            term = LieElt(dict((k, val * scale / n) for k, val in term.terms.items()))
            total = total + term
        raise errors.NilpotencyCapExceeded(
            f'ad(x)^n v did not vanish within {self.limits.nilpotency_cap} steps')

    def _check_datum(self, alpha: RealRootDatum):
        tus.check(alpha=(alpha, RealRootDatum))
        if alpha.root.rank != self.rank:
            raise ValueError(f'expected rank {self.rank}, got {alpha.root}')

    def simple_reflection_auto(self, j: int, v: LieElt) -> LieElt:
        """Applies s_j^* = exp(ad e_j) exp(ad f_j) exp(ad e_j), the adjoint
        image of x_{alpha_j}(1) x_{-alpha_j}(1) x_{alpha_j}(1); it maps
        g_beta onto g_{s_j beta}"""
        ej, fj = self.e(j), self.f(j)
        return self.ad_exp(ej, self.ad_exp(fj, self.ad_exp(ej, v)))

    def canonical_e(self, alpha: RealRootDatum) -> LieElt:
        """Returns the canonical root vector e_alpha.

        For positive alpha = w alpha_i the vector e_i is transported along
        the witness word by the automorphisms s_j^* and its sign is made
        positive on the basis vector of g_alpha. For negative roots
        e_{-alpha} = -omega(e_alpha), so that e_{-alpha_i} = f_i.
        """
        self._check_datum(alpha)
        if not alpha.is_positive:
            pos = self.weyl.real_root_datum(-alpha.root)
            return -self.omega(self.canonical_e(pos))
        key = alpha.root.coeffs
        found = self._canonical.get(key)
        if found is not None:
            return found
        vec = self.e(alpha.index)
        for j in reversed(alpha.word):
            vec = self.simple_reflection_auto(j, vec)
        if vec.degrees() != [key] or len(vec.terms) != 1:
            raise errors.InternalInconsistency(
                f'transport of e_{alpha.index} along {alpha.word} left g_{alpha.root}')
        coeff = vec.coefficient((key, 0))
        if coeff < 0:
            vec = -vec
        with self._lock:
            self._canonical[key] = vec
        return vec

    def _lattice_coords(self, alpha: Degree) -> typing.List[dict]:
        found = self._lattice.get(alpha)
        if found is not None:
            return found
        dim = len(self._basis[alpha])
        if sum(alpha) == 1:
            result = [{0: QQ(1)}]
        else:
            gens = []
            for j in range(self.rank):
                for n in range(1, alpha[j] + 1):
                    below = tuple(c - (n if k == j else 0) for k, c in enumerate(alpha))
                    if not any(below) or below not in self._basis:
                        continue
                    for vec in self._lattice_coords(below):
                        img = dict(((below, l), c) for l, c in vec.items())
                        for _ in range(n):
                            img = self._ad_e_vec(j, img)
                        scale = QQ(1, math.factorial(n))
                        gens.append(dict((key[1], c * scale) for key, c in img.items()))
            result = self._hnf(gens, dim)
        self._lattice[alpha] = result
        return result

    @staticmethod
    def _hnf(gens: typing.List[dict], dim: int) -> typing.List[dict]:
        """Returns a Hermite normal form basis of the lattice spanned by the
        given rational coordinate vectors"""
        den = 1
        for vec in gens:
            for val in vec.values():
                den = den * int(QQ.denom(val)) // math.gcd(den, int(QQ.denom(val)))
        cols = [[int(QQ.numer(vec.get(r, 0) * den)) for vec in gens] for r in range(dim)]
        hnf = hermite_normal_form(Matrix(cols))
        out = []
        for c in range(hnf.shape[1]):
            vec = dict((r, QQ(int(hnf[r, c]), den)) for r in range(dim) if hnf[r, c] != 0)
            if vec:
                out.append(vec)
        return out

    def lattice_basis(self, alpha: RootVec) -> typing.List[LieElt]:
        """Returns a Hermite normal form Z-basis of the divided-power bracket
        lattice of g_alpha: the Z-span of the vectors
        (ad e_j)^n / n! applied to the lattice of g_{alpha - n alpha_j}.
        For real roots it is {canonical_e(alpha)} up to sign."""
        tus.check(alpha=(alpha, RootVec))
        if not alpha.is_positive:
            raise ValueError(f'lattice_basis needs a positive root, got {alpha}')
        self._ensure_degree(alpha.coeffs)
        with self._lock:
            if alpha.coeffs not in self._basis:
                raise ValueError(f'{alpha} is not a root')
            coords = self._lattice_coords(alpha.coeffs)
        return [LieElt(dict(((alpha.coeffs, l), c) for l, c in vec.items()))
                for vec in coords]

    def dump_records(self, height: int) -> typing.Iterator[dict]:
        """Yields the JSON-lines records of every positive degree"""
        return self.extend_to_height(height).dump_records()

_ELEMENT_TERM = re.compile(
    r'^\s*(?:([+-]?\s*\d+(?:/\d+)?)\s*\*\s*|(-)\s*)?'
    + r'(?:([efh])(\d+)|b\[([-\d,\s]+)\]#(\d+))\s*$')

def _split_terms(text: str) -> typing.List[str]:
    """Splits on '+' and '-' outside brackets, keeping the sign of each term"""
    terms, depth, start = [], 0, 0
    for pos, char in enumerate(text):
        if char == '[':
            depth += 1
        elif char == ']':
            depth -= 1
        elif char in '+-' and depth == 0 and pos > start and text[start:pos].strip():
            terms.append(text[start:pos])
            start = pos
    terms.append(text[start:])
    return [t.replace('+', '', 1) if t.strip().startswith('+') else t for t in terms]

def parse_element(algebra: KacMoodyAlgebra, text: str) -> LieElt:
    """Parses a vector literal: terms joined by '+', each an optional
    rational coefficient followed by '*' and one of e<i>, f<i>, h<i> or
    b[<root>]#<k> (the k-th basis vector of a root of either sign)."""
    tus.check(algebra=(algebra, KacMoodyAlgebra), text=(text, str))
    total = LieElt()
    for raw in _split_terms(text):
        if not raw.strip():
            continue
        match = _ELEMENT_TERM.match(raw)
        if match is None:
            raise errors.ParseError(f'bad vector term {raw.strip()!r}')
        coeff, minus, kind, index, root, k = match.groups()
        scale = QQ(-1) if minus else QQ(1)
        if coeff is not None:
            scale = fields.parse_rational(coeff.replace(" ", ""))
        if kind is not None:
            i = int(index)
            if i >= algebra.rank:
                raise errors.ParseError(f'index {i} out of range in {raw.strip()!r}')
            term = {'e': algebra.e, 'f': algebra.f, 'h': algebra.h}[kind](i)
        else:
            vec = RootVec.parse(root.replace(' ', ''), algebra.rank)
            k = int(k)
            if vec.is_zero or k >= algebra.multiplicity(vec):
                raise errors.ParseError(f'no basis vector {raw.strip()!r}')
            term = LieElt.basis((vec.coeffs, k))
        total = total + scale * term
    return total
