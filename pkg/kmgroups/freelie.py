"""The positive part of g_A presented by generators and Serre relations,
computed independently of kmgroups.lie: the free Lie algebra on the e_i
lives inside the free associative algebra (words in the letters 0..n-1),
its Lyndon polynomials form a basis, and the Serre ideal in degree alpha is
spanned by the words ad(e_i1) ... ad(e_im) theta_jk with
theta_jk = ad(e_j)^(1 - a_jk) e_k.

For symmetrizable matrices the quotient agrees with the graded basis built
by lie.KacMoodyAlgebra.extend_to_height. For the others lie compares the
two degree by degree up to a configured height.
"""

import functools
import itertools
import logging
import typing
import pytypeutils as tus
from sympy.polys.domains import QQ
from sympy.polys.matrices import DomainMatrix
from sympy.utilities.iterables import multiset_permutations

from kmgroups.gcm import Gcm
from kmgroups.weyl import RootVec

logger = logging.getLogger(__name__)

Word = typing.Tuple[int, ...]

def is_lyndon(word: Word) -> bool:
    """Returns True if the word is strictly smaller than each of its proper
    suffixes"""
    return all(word < word[k:] for k in range(1, len(word)))

def standard_factorization(word: Word) -> typing.Tuple[Word, Word]:
    """Splits a Lyndon word of length >= 2 as uv with v its longest proper
    Lyndon suffix"""
    for k in range(1, len(word)):
        if is_lyndon(word[k:]):
            return word[:k], word[k:]
    raise ValueError(f'{word} has no proper Lyndon suffix')

def lyndon_words(degree: typing.Sequence[int]) -> typing.List[Word]:
    """Returns the Lyndon words of the given content, in lexicographic
    order"""
    letters = [i for i, n in enumerate(degree) for _ in range(n)]
    return sorted(tuple(w) for w in multiset_permutations(letters) if is_lyndon(tuple(w)))

def _bracket(x: dict, y: dict) -> dict:
    """xy - yx in the free associative algebra"""
    out = dict()
    for (u, a), (v, b) in itertools.product(x.items(), y.items()):
        out[u + v] = out.get(u + v, 0) + a * b
        out[v + u] = out.get(v + u, 0) - a * b
    return dict((w, c) for w, c in out.items() if c)

@functools.lru_cache(maxsize=None)
def lyndon_polynomial(word: Word) -> typing.Dict[Word, typing.Any]:
    """Returns the bracketing of a Lyndon word expanded into words"""
    if len(word) == 1:
        return {word: QQ(1)}
    left, right = standard_factorization(word)
    return _bracket(lyndon_polynomial(left), lyndon_polynomial(right))

def _ad_letters(letters: Word, vec: dict) -> dict:
    for i in reversed(letters):
        vec = _bracket({(i,): QQ(1)}, vec)
    return vec

class SerreQuotient:
    """The degrees of the free Lie algebra modulo the Serre ideal, built
    height by height. Only degrees whose quotient is nonzero are kept, so
    every degree of height m is some kept degree of height m - 1 plus a
    simple root.

    Attributes:
        gcm (Gcm): the matrix
        bases (dict[tuple[int], list[Word]]): for every nonzero degree the
            Lyndon words whose polynomials form a basis of the quotient
    """
    def __init__(self, gcm: Gcm):
        tus.check(gcm=(gcm, Gcm))
        self.gcm = gcm
        self.bases = dict()
        self.height = 0
        self._layer = []
        self._serre = []
        n = gcm.size
        for j in range(n):
            for k in range(n):
                if j != k:
                    power = 1 - gcm[j, k]
                    theta = _ad_letters((j,) * power, {(k,): QQ(1)})
                    deg = tuple(power * (c == j) + (c == k) for c in range(n))
                    self._serre.append((deg, theta))

    def _ideal_elements(self, deg: typing.Tuple[int, ...]) -> typing.List[dict]:
        out = []
        for sdeg, theta in self._serre:
            rest = tuple(a - b for a, b in zip(deg, sdeg))
            if any(c < 0 for c in rest):
                continue
            letters = [i for i, n in enumerate(rest) for _ in range(n)]
            for seq in multiset_permutations(letters):
                vec = _ad_letters(tuple(seq), theta)
                if vec:
                    out.append(vec)
        return out

    def _build_degree(self, deg: typing.Tuple[int, ...]):
        ideal = self._ideal_elements(deg)
        lyndon = lyndon_words(deg)
        if not lyndon:
            return
        columns = ideal + [lyndon_polynomial(w) for w in lyndon]
        words = sorted(set(w for vec in columns for w in vec))
        row_of = dict((w, r) for r, w in enumerate(words))
        dod = dict()
        for col, vec in enumerate(columns):
            for w, c in vec.items():
                dod.setdefault(row_of[w], dict())[col] = c
        _, pivots = DomainMatrix(dod, (len(words), len(columns)), QQ).rref()
        chosen = [lyndon[p - len(ideal)] for p in pivots if p >= len(ideal)]
        if chosen:
            self.bases[deg] = chosen

    def extend_to_height(self, height: int):
        """Computes every degree of height <= height"""
        tus.check(height=(height, int))
        n = self.gcm.size
        while self.height < height:
            if self.height == 0:
                cands = [tuple(int(c == i) for c in range(n)) for i in range(n)]
            else:
                cands = sorted(set(
                    tuple(c + (k == i) for k, c in enumerate(deg))
                    for deg in self._layer for i in range(n)))
            for deg in cands:
                self._build_degree(deg)
            self._layer = [d for d in cands if d in self.bases]
            self.height += 1
            logger.debug('Serre quotient of %s built to height %s', self.gcm, self.height)

def serre_dimensions(gcm: Gcm, height: int) -> typing.Dict[RootVec, typing.List[Word]]:
    """Returns, for every positive degree of height <= height with nonzero
    quotient, the Lyndon words chosen as its basis (earliest Lyndon word
    first). The multiplicity is the number of words."""
    quotient = SerreQuotient(gcm)
    quotient.extend_to_height(height)
    return dict((RootVec(deg), words) for deg, words in sorted(
        quotient.bases.items(), key=lambda kv: RootVec(kv[0]).sort_key()))
