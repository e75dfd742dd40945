"""Generalised Cartan matrices: validation, decomposition into
indecomposable blocks, symmetrization and the finite / affine / indefinite
trichotomy.

The text format used by fixtures and the command line is one row per line
of whitespace separated integers, with '#' starting a comment line.
"""

import enum
import logging
import typing
import numpy as np
import pytypeutils as tus
from sympy.polys.domains import QQ
from sympy.polys.matrices import DomainMatrix

import kmgroups.errors as errors

logger = logging.getLogger(__name__)

class ClassKind(enum.Enum):
    """The type of an indecomposable generalised Cartan matrix"""
    Finite = 'Finite'
    Affine = 'Affine'
    Indefinite = 'Indefinite'

class Gcm:
    """A validated generalised Cartan matrix. Instances never change after
    construction.

    Attributes:
        entries (np.ndarray[size, size] int64): the matrix (a_ij), read only
    """
    def __init__(self, entries: np.ndarray):
        tus.check_ndarrays(entries=(entries, ('size', 'size'), 'int64'))
        size = entries.shape[0]
        if size < 1:
            raise errors.InvalidGcm('shape', message='empty matrix')
        for i in range(size):
            if entries[i, i] != 2:
                raise errors.InvalidGcm('diagonal', (i, i))
        for i in range(size):
            for j in range(size):
                if i == j:
                    continue
                if entries[i, j] > 0:
                    raise errors.InvalidGcm('positivity', (i, j))
                if (entries[i, j] == 0) != (entries[j, i] == 0):
                    raise errors.InvalidGcm('zero-symmetry', (i, j))
        entries = entries.copy()
        entries.flags.writeable = False
        self.entries = entries
        self._rows = tuple(tuple(int(v) for v in row) for row in entries)

    @property
    def size(self) -> int:
        """Returns the number of simple roots |I|"""
        return self.entries.shape[0]

    @property
    def m_a(self) -> int:
        """Returns M_A, the largest |a_ij| off the diagonal (0 for size 1)"""
        best = 0
        for i in range(self.size):
            for j in range(self.size):
                if i != j:
                    best = max(best, -self._rows[i][j])
        return best

    def __getitem__(self, key) -> int:
        i, j = key
        return self._rows[i][j]

    def rows(self) -> typing.Tuple[typing.Tuple[int, ...], ...]:
        """Returns the entries as nested tuples of python ints"""
        return self._rows

    def __eq__(self, other):
        return isinstance(other, Gcm) and self._rows == other._rows

    def __hash__(self):
        return hash(self._rows)

    def __repr__(self):
        return f'Gcm({[list(r) for r in self._rows]})'

    def to_text(self) -> str:
        """Renders this matrix in the text format"""
        return '\n'.join(' '.join(str(v) for v in row) for row in self._rows) + '\n'

    def submatrix(self, block: typing.Sequence[int]) -> 'Gcm':
        """Returns the principal submatrix on the given indices, in order"""
        tus.check_listlike(block=(block, int, (1, None)))
        idx = list(block)
        return Gcm(self.entries[np.ix_(idx, idx)].astype('int64'))

def validate(matrix) -> Gcm:
    """Validates a square integer matrix as a generalised Cartan matrix.

    Args:
        matrix (array-like[n, n] of int): the candidate matrix

    Returns:
        Gcm: the validated matrix

    Raises:
        InvalidGcm: naming the violated axiom and the offending position
    """
    try:
        arr = np.array(matrix)
    except ValueError:
        raise errors.InvalidGcm('shape', message='ragged rows') from None
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise errors.InvalidGcm(
            'shape', message=f'expected a square matrix, got shape {arr.shape}')
    if arr.size and not np.issubdtype(arr.dtype, np.integer):
        raise errors.InvalidGcm('shape', message=f'non-integer entries ({arr.dtype})')
    return Gcm(arr.astype('int64'))

def parse(text: str) -> Gcm:
    """Parses the GCM text format

    Args:
        text (str): one row per line, '#' starts a comment line

    Returns:
        Gcm: the validated matrix
    """
    tus.check(text=(text, str))
    rows = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.strip()
        if not line or line.startswith('#'):
            continue
        try:
            rows.append([int(tok) for tok in line.split()])
        except ValueError:
            raise errors.ParseError(
                f'line {lineno}: expected integers, got {line!r}') from None
    if not rows:
        raise errors.ParseError('no matrix rows found')
    if any(len(row) != len(rows) for row in rows):
        raise errors.ParseError(
            f'expected a square matrix, got {len(rows)} rows of lengths '
            + str([len(row) for row in rows]))
    return validate(rows)

def load(path: str) -> Gcm:
    """Loads a GCM from a file in the text format"""
    tus.check(path=(path, str))
    with open(path, 'r') as infile:
        return parse(infile.read())

def components(g: Gcm) -> typing.List[typing.Tuple[int, ...]]:
    """Splits the index set into the connected components of the graph with
    an edge i-j whenever a_ij != 0.

    Returns:
        list[tuple[int]]: sorted blocks, ordered by their smallest index
    """
    tus.check(g=(g, Gcm))
    seen = set()
    blocks = []
    for start in range(g.size):
        if start in seen:
            continue
        stack = [start]
        seen.add(start)
        block = []
        while stack:
            i = stack.pop()
            block.append(i)
            for j in range(g.size):
                if j not in seen and g[i, j] != 0:
                    seen.add(j)
                    stack.append(j)
        blocks.append(tuple(sorted(block)))
    return blocks

def symmetrize(g: Gcm) -> typing.Optional[typing.Tuple[tuple, tuple]]:
    """Finds d > 0 and symmetric B with diag(d) B = A.

    The ratios d_j / d_i = a_ji / a_ij are propagated along a spanning tree
    of each component and then checked on every edge. Each component is
    scaled so that its smallest d_i is 1.

    Returns:
        (d, B) with d a tuple of QQ and B a tuple of tuples of QQ, or None
        when A is not symmetrizable
    """
    tus.check(g=(g, Gcm))
    d = [None] * g.size
    for block in components(g):
        root = block[0]
        d[root] = QQ(1)
        stack = [root]
        while stack:
            i = stack.pop()
            for j in block:
                if d[j] is None and g[i, j] != 0:
                    d[j] = d[i] * QQ(g[j, i], g[i, j])
                    stack.append(j)
        for i in block:
            for j in block:
                if g[i, j] != 0 and d[j] * g[i, j] != d[i] * g[j, i]:
                    logger.debug('not symmetrizable: edge (%s, %s) breaks the ratios', i, j)
                    return None
        low = min(d[i] for i in block)
        for i in block:
            d[i] = d[i] / low
    b = tuple(
        tuple(QQ(g[i, j]) / d[i] for j in range(g.size))
        for i in range(g.size))
    return tuple(d), b

def _leading_minors(mat: typing.List[typing.List]) -> typing.List:
    minors = []
    for k in range(1, len(mat) + 1):
        sub = [row[:k] for row in mat[:k]]
        minors.append(DomainMatrix.from_list(sub, QQ).det())
    return minors

def _classify_by_form(g: Gcm, block) -> ClassKind:
    sym = symmetrize(g.submatrix(block))
    if sym is None:
        return ClassKind.Indefinite
    _, b = sym
    minors = _leading_minors([list(row) for row in b])
    if all(m > 0 for m in minors):
        return ClassKind.Finite
    if all(m > 0 for m in minors[:-1]) and minors[-1] == 0:
        return ClassKind.Affine
    return ClassKind.Indefinite

def _classify_by_vinberg(g: Gcm, block) -> ClassKind:
    """Decides the type from A alone: finite iff u = A^-1 (1,..,1) exists and
    is positive, affine iff the kernel is a line spanned by a positive
    vector, indefinite otherwise."""
    mat = DomainMatrix.from_list(
        [[QQ(g[i, j]) for j in block] for i in block], QQ)
    n = len(block)
    if mat.det() != 0:
        ones = DomainMatrix.from_list([[QQ(1)] for _ in range(n)], QQ)
        u = (mat.inv() * ones).to_list()
        if all(row[0] > 0 for row in u):
            return ClassKind.Finite
        return ClassKind.Indefinite
    kernel = mat.nullspace().to_list()
    if len(kernel) == 1:
        vec = kernel[0]
        if all(v > 0 for v in vec) or all(v < 0 for v in vec):
            return ClassKind.Affine
    return ClassKind.Indefinite

def classify(g: Gcm, block: typing.Sequence[int] = None) -> ClassKind:
    """Classifies an indecomposable block as finite, affine or indefinite
    using the leading principal minors of the symmetrized matrix, and checks
    the verdict against the positive-vector criterion on A itself.

    Args:
        g (Gcm): the matrix
        block (sequence[int], optional): an indecomposable block of indices;
            defaults to every index

    Raises:
        ValueError: if the block is not indecomposable
        InternalInconsistency: if the two criteria disagree
    """
    tus.check(g=(g, Gcm))
    if block is None:
        block = tuple(range(g.size))
    tus.check_listlike(block=(block, int, (1, None)))
    block = tuple(block)
    for i in block:
        if i < 0 or i >= g.size:
            raise ValueError(f'index {i} out of range for size {g.size}')
    if len(components(g.submatrix(block))) != 1:
        raise ValueError(f'block {block} is not indecomposable')

    by_form = _classify_by_form(g, block)
    by_vinberg = _classify_by_vinberg(g, block)
    if by_form != by_vinberg:
        raise errors.InternalInconsistency(
            f'block {block}: symmetrized form says {by_form.value}, '
            + f'positive vector criterion says {by_vinberg.value}')
    return by_form
