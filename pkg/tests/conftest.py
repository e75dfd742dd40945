"""Shared fixture matrices. Algebras are cached for the whole session since
their graded bases only ever grow."""
import functools
import pytest

import kmgroups.gcm as gcm
import kmgroups.lie as lie

MATRICES = {
    'A2': ((2, -1), (-1, 2)),
    'B2': ((2, -2), (-1, 2)),
    'G2': ((2, -1), (-3, 2)),
    'A1~': ((2, -2), (-2, 2)),
    'A2(2)': ((2, -1), (-4, 2)),
    'H3': ((2, -3), (-3, 2)),
}

@functools.lru_cache(maxsize=None)
def algebra_named(name: str) -> lie.KacMoodyAlgebra:
    """Returns the session-wide algebra of a fixture matrix"""
    return lie.KacMoodyAlgebra(gcm.validate(MATRICES[name]))

@pytest.fixture
def a2():
    return algebra_named('A2')

@pytest.fixture
def affine():
    return algebra_named('A1~')

@pytest.fixture
def hyperbolic():
    return algebra_named('H3')

def write_gcm(tmp_path, name: str) -> str:
    """Writes a fixture matrix in the text format and returns the path"""
    path = tmp_path / f'{name}.txt'
    rows = '\n'.join(' '.join(str(v) for v in row) for row in MATRICES[name])
    path.write_text(f'# {name}\n{rows}\n')
    return str(path)
