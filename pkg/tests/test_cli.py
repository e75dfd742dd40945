"""Tests for the kmgroups command line"""
import io
import json

import kmgroups.cli as cli

from conftest import write_gcm

def run(*argv):
    stdout = io.StringIO()
    code = cli.main(list(argv), stdout=stdout)
    return code, stdout.getvalue().splitlines()

def records(lines):
    return [json.loads(line) for line in lines]

def test_classify(tmp_path):
    code, lines = run('classify', write_gcm(tmp_path, 'A1~'))
    assert code == 0
    assert lines == ['{"block":[0,1],"type":"Affine"}']
    code, lines = run('classify', write_gcm(tmp_path, 'H3'))
    assert lines == ['{"block":[0,1],"type":"Indefinite"}']

def test_classify_decomposable(tmp_path):
    path = tmp_path / 'split.txt'
    path.write_text('2 0 0\n0 2 -1\n0 -1 2\n')
    code, lines = run('classify', str(path))
    assert code == 0
    assert records(lines) == [{'block': [0], 'type': 'Finite'},
                              {'block': [1, 2], 'type': 'Finite'}]

def test_roots(tmp_path):
    code, lines = run('roots', write_gcm(tmp_path, 'A2'), '--height', '1')
    assert code == 0
    assert lines == ['{"basis":["e1"],"mult":1,"real":true,"root":[0,1]}',
                     '{"basis":["e0"],"mult":1,"real":true,"root":[1,0]}']
    code, lines = run('roots', write_gcm(tmp_path, 'A1~'), '--height', '4')
    recs = records(lines)
    assert [r['root'] for r in recs] == [[0, 1], [1, 0], [1, 1], [1, 2], [2, 1], [2, 2]]
    assert [r['real'] for r in recs] == [True, True, False, True, True, False]

def test_mult(tmp_path):
    code, lines = run('mult', write_gcm(tmp_path, 'A1~'), '--root', '2,2')
    assert code == 0
    rec, = records(lines)
    assert rec['mult'] == 1 and rec['kind'] == 'imaginary' and len(rec['basis']) == 1
    code, lines = run('mult', write_gcm(tmp_path, 'A2'), '--root', '-2,-1')
    assert records(lines) == [{'root': [-2, -1], 'mult': 0, 'kind': None, 'basis': []}]
    code, _ = run('mult', write_gcm(tmp_path, 'A2'), '--root', '1,-1')
    assert code == 2

def test_commutator(tmp_path):
    path = write_gcm(tmp_path, 'A2')
    code, lines = run('commutator', path, '--alpha', '1,0', '--beta', '0,1')
    assert code == 0
    assert lines == ['{"C":1,"alpha":[1,0],"beta":[0,1],"gamma":[1,1],"i":1,"j":1,"order_index":0}']
    code, lines = run('commutator', path, '--alpha', '1,0', '--beta', '1,1')
    assert code == 0 and lines == []

def test_commutator_not_prenilpotent(tmp_path):
    code, lines = run('commutator', write_gcm(tmp_path, 'A1~'), '--alpha', '1,0', '--beta', '0,1')
    assert code == 1
    assert lines == []

def test_eval(tmp_path):
    path = write_gcm(tmp_path, 'A2')
    code, lines = run('eval', path, '--word', 'x[1,0](2)', '--vector', 'f0')
    assert code == 0
    rec, = records(lines)
    assert rec['word'] == 'x[1,0](2)'
    assert rec['field'] == 'Q'
    assert rec['vector'] == [{'root': [-1, 0], 'index': 0, 'name': 'omega(e0)', 'coeff': -1}]
    assert [(r['name'], r['coeff']) for r in rec['result']] == [
        ('omega(e0)', -1), ('h0', -2), ('e0', 4)]
    code, lines = run('eval', path, '--word', 'x[1,0](2)', '--vector', 'f0', '--field', 'Fp:7')
    rec, = records(lines)
    assert [r['coeff'] for r in rec['result']] == [6, 5, 4]

def test_check(tmp_path):
    code, lines = run('check', write_gcm(tmp_path, 'A2'), '--relations', 'R3', 'R2',
                      '--height', '2')
    assert code == 0
    recs = records(lines)
    assert [r['relation'] for r in recs] == ['R3', 'R3', 'R2', 'R2', 'R2', 'R2']
    assert all(r['holds'] and r['checked'] == 8 for r in recs)

def test_oracle_is_deterministic(tmp_path):
    path = write_gcm(tmp_path, 'A1~')
    argv = ('oracle', path, '--words', '3', '--length', '4', '--height', '2', '--seed', '9')
    code, first = run(*argv)
    assert code == 0
    _, second = run(*argv)
    assert first == second
    recs = records(first)
    assert [r['index'] for r in recs] == [0, 1, 2]
    assert all(r['equal'] and r['mismatches'] == [] for r in recs)

def test_oracle_needs_the_affine_fixture(tmp_path):
    code, _ = run('oracle', write_gcm(tmp_path, 'A2'), '--words', '1')
    assert code == 1

def test_bruhat(tmp_path):
    path = write_gcm(tmp_path, 'A1~')
    code, lines = run('bruhat', path, '--matrix', '0;t^-1;-t;0')
    assert code == 0
    assert records(lines) == [{'matrix': '0;t^-1;-t;0', 'word': [0], 'length': 1}]
    code, lines = run('bruhat', path, '--matrix', 't;0;0;t^-1')
    assert records(lines)[0]['word'] == [1, 0]
    code, _ = run('bruhat', path, '--matrix', '2;0;0;1')
    assert code == 1
    code, _ = run('bruhat', path, '--matrix', '1;0;1')
    assert code == 2

def test_normalform(tmp_path):
    code, lines = run('normalform', write_gcm(tmp_path, 'A2'),
                      '--word-of-exps', 'x[1,0](1) x[0,1](2)', '--trunc', '2')
    assert code == 0
    assert records(lines) == [
        {'letter': 'x[0,1]#0', 'root': [0, 1], 'index': 0, 'lambda': 2},
        {'letter': 'x[1,0]#0', 'root': [1, 0], 'index': 0, 'lambda': 1},
        {'letter': 'x[1,1]#0', 'root': [1, 1], 'index': 0, 'lambda': 2},
    ]

def test_pretty(tmp_path):
    code, lines = run('--pretty', 'classify', write_gcm(tmp_path, 'A1~'))
    assert code == 0
    assert lines[0].split() == ['block', 'type']
    assert lines[1].split() == ['[0,', '1]', 'Affine']

def test_exit_codes(tmp_path):
    path = write_gcm(tmp_path, 'A2')
    assert run('classify', str(tmp_path / 'missing.txt'))[0] == 2
    assert run('eval', path, '--word', 'x[1,0](2)', '--vector', 'f0', '--field', 'Fp:4')[0] == 2
    assert run('eval', path, '--word', 'y', '--vector', 'f0')[0] == 2
    assert run('eval', path, '--word', 'x[2,1](1)', '--vector', 'f0')[0] == 1
    assert run()[0] == 2
    assert run('frobnicate', path)[0] == 2
    assert run('--max-height', '2', 'roots', path, '--height', '3')[0] == 1

def test_invalid_gcm_file(tmp_path):
    bad = tmp_path / 'bad.txt'
    bad.write_text('2 1\n-1 2\n')
    assert run('classify', str(bad))[0] == 1
    garbled = tmp_path / 'garbled.txt'
    garbled.write_text('2 x\n-1 2\n')
    assert run('classify', str(garbled))[0] == 2
