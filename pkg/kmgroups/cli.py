"""The kmgroups command line. Every subcommand reads a GCM file and writes
JSON-lines records to standard output; diagnostics and logging go to
standard error.

Exit codes: 0 on success, 1 on domain errors (including failed relation or
oracle checks), 2 on usage errors such as malformed literals.

Examples:
    kmgroups classify affine_a1.txt
    kmgroups roots a2.txt --height 3
    kmgroups commutator a2.txt --alpha 1,0 --beta 0,1
    kmgroups eval a2.txt --word "x[1,0](2)" --vector f0 --field Fp:7
    kmgroups check affine_a1.txt --relations R1 R2 R3 --height 6 --field Fp:5
    kmgroups oracle affine_a1.txt --words 100 --seed 0
    kmgroups bruhat affine_a1.txt --matrix "0;t^-1;-t;0"
    kmgroups normalform a2.txt --word-of-exps "x[1,0](1) x[0,1](2)" --trunc 2
"""

import argparse
import json
import logging
import random
import sys
import typing

import kmgroups.env as env
import kmgroups.errors as errors
import kmgroups.gcm as gcm_mod
import kmgroups.group as group
import kmgroups.lie as lie
import kmgroups.loop_oracle as loop_oracle
from kmgroups.fields import FieldSpec
from kmgroups.laurent import LaurentMat
from kmgroups.limits import Limits
from kmgroups.weyl import RootVec

logger = logging.getLogger(__name__)

RELATIONS = ('R0', 'R1', 'R2', 'R3', 'R4')

class CheckFailed(errors.KacMoodyError):
    """A check subcommand found a failing instance; its records are already
    written"""

def _dumps(record: dict) -> str:
    return json.dumps(record, sort_keys=True, separators=(',', ':'))

def _render_pretty(records: typing.List[dict]) -> typing.List[str]:
    """Aligned text table of the records, one column per key"""
    if not records:
        return []
    keys = sorted(set(k for rec in records for k in rec))
    cells = [[json.dumps(rec.get(k, '')) if not isinstance(rec.get(k), str)
              else rec[k] for k in keys] for rec in records]
    widths = [max(len(k), *(len(row[c]) for row in cells)) for c, k in enumerate(keys)]
    lines = ['  '.join(k.ljust(w) for k, w in zip(keys, widths)).rstrip()]
    for row in cells:
        lines.append('  '.join(v.ljust(w) for v, w in zip(row, widths)).rstrip())
    return lines

class Output:
    """Collects records and writes them as JSON-lines or as a table.

    Attributes:
        stream: where records go
        pretty (bool): render a table at close instead of JSON-lines
    """
    def __init__(self, stream, pretty: bool):
        self.stream = stream
        self.pretty = pretty
        self._held = []

    def emit(self, record: dict):
        """Writes (or, in pretty mode, holds) one record"""
        if self.pretty:
            self._held.append(record)
        else:
            self.stream.write(_dumps(record) + '\n')

    def close(self):
        """Flushes held records"""
        for line in _render_pretty(self._held):
            self.stream.write(line + '\n')
        self._held = []
        self.stream.flush()

def _algebra(args) -> lie.KacMoodyAlgebra:
    limits = Limits.from_env()
    if args.max_height is not None:
        limits = limits.replace(max_height=args.max_height)
    return lie.KacMoodyAlgebra(gcm_mod.load(args.gcm), limits)

def _root(algebra: lie.KacMoodyAlgebra, text: str) -> RootVec:
    return RootVec.parse(text, algebra.rank)

def _vector_records(algebra: lie.KacMoodyAlgebra, vec: lie.LieElt, field: FieldSpec) -> list:
    out = []
    for key in sorted(vec.terms, key=lambda k: (sum(k[0]), k)):
        deg, idx = key
        out.append({'root': list(deg), 'index': idx, 'name': algebra.basis_word(key),
                    'coeff': field.to_json(field.reduce(vec.terms[key]))})
    return out

def cmd_classify(args, out: Output):
    """Type of every indecomposable block"""
    g = gcm_mod.load(args.gcm)
    for block in gcm_mod.components(g):
        out.emit({'block': list(block), 'type': gcm_mod.classify(g, block).value})

def cmd_roots(args, out: Output):
    """Positive roots up to a height"""
    algebra = _algebra(args)
    basis = algebra.extend_to_height(args.height)
    for root, mult, real in algebra.positive_roots(args.height):
        out.emit({'root': list(root.coeffs), 'mult': mult, 'real': real,
                  'basis': [lie.format_word(w) for w in basis.words[root]]})

def cmd_mult(args, out: Output):
    """Multiplicity of one lattice vector"""
    algebra = _algebra(args)
    root = _root(algebra, args.root)
    if root.is_zero or not (root.is_positive or root.is_negative):
        raise errors.ParseError(f'{root} is neither positive nor negative')
    mult = algebra.multiplicity(root)
    pos = -root if root.is_negative else root
    words = []
    if mult:
        words = [lie.format_word(w) for w in algebra.extend_to_height(pos.height).words[pos]]
    out.emit({'root': list(root.coeffs), 'mult': mult,
              'kind': algebra.weyl.root_kind(root), 'basis': words})

def cmd_commutator(args, out: Output):
    """Constants C^{alpha beta}_{ij}, one record per nonzero constant"""
    algebra = _algebra(args)
    weyl = algebra.weyl
    alpha = weyl.real_root_datum(_root(algebra, args.alpha))
    beta = weyl.real_root_datum(_root(algebra, args.beta))
    table = env.commutator_constants(algebra, alpha, beta)
    for rec in table.records():
        rec.update({'alpha': list(alpha.root.coeffs), 'beta': list(beta.root.coeffs)})
        out.emit(rec)

def cmd_eval(args, out: Output):
    """Adjoint action of a word on a vector"""
    algebra = _algebra(args)
    word = group.parse_word(algebra, args.word, args.field)
    vec = lie.parse_element(algebra, args.vector)
    image = group.ad_apply(algebra, word, vec)
    out.emit({'word': word.to_text(), 'field': repr(args.field),
              'vector': _vector_records(algebra, vec, args.field),
              'result': _vector_records(algebra, image, args.field)})

def cmd_check(args, out: Output):
    """Operator sweep of the defining relations"""
    algebra = _algebra(args)
    rng = random.Random(args.seed)
    failures = 0
    for relation in args.relations:
        for params in group.relation_instances(algebra, relation, args.field, rng,
                                               root_height=args.root_height):
            try:
                report = group.check_relation(algebra, relation, params, args.field, args.height)
                out.emit(report.record())
            except errors.RelationFailed as exc:
                failures += 1
                out.emit({'relation': relation, 'field': repr(args.field),
                          'height': args.height, 'holds': False,
                          'witness': algebra.basis_word(exc.witness), 'message': str(exc)})
    if failures:
        raise CheckFailed(f'{failures} relation instances failed')

def cmd_oracle(args, out: Output):
    """Seeded random words compared against the loop realization"""
    algebra = _algebra(args)
    realization = loop_oracle.LoopRealization(algebra, args.field)
    rng = random.Random(args.seed)
    failures = 0
    for index in range(args.words):
        length = rng.randint(1, args.length)
        word = group.random_word(algebra, rng, length, args.field)
        report = loop_oracle.ad_compare(realization, word, args.height)
        rec = report.record()
        rec['index'] = index
        out.emit(rec)
        if not report.equal:
            failures += 1
    if failures:
        raise CheckFailed(f'{failures} of {args.words} words disagree with the loop realization')

def cmd_bruhat(args, out: Output):
    """Iwahori-Bruhat cell of a Laurent matrix"""
    algebra = _algebra(args)
    realization = loop_oracle.LoopRealization(algebra, args.field)
    mat = LaurentMat.parse(args.matrix, realization.field)
    word = loop_oracle.iwahori_bruhat(mat)
    out.emit({'matrix': mat.to_text(), 'word': list(word), 'length': len(word)})

def cmd_normalform(args, out: Output):
    """Normal form of a product of exponentials"""
    algebra = _algebra(args)
    envelope = env.TruncatedEnvelope(algebra, args.trunc)
    product = env.parse_exponentials(envelope, args.word_of_exps)
    form = env.uma_normal_form(product)
    for rec in form.records():
        out.emit(rec)

def build_parser() -> argparse.ArgumentParser:
    """Returns the argument parser of every subcommand"""
    parser = argparse.ArgumentParser(
        prog='kmgroups', description='Kac-Moody algebras and minimal Kac-Moody groups')
    parser.add_argument('-v', '--verbose', action='count', default=0,
                        help='log INFO (-v) or DEBUG (-vv) to standard error')
    parser.add_argument('--pretty', action='store_true',
                        help='print an aligned table instead of JSON-lines')
    parser.add_argument('--max-height', type=int, default=None,
                        help='override the configured maximum root height')
    subs = parser.add_subparsers(dest='command', metavar='command')
    subs.required = True

    def sub(name, func, helptext):
        res = subs.add_parser(name, help=helptext)
        res.add_argument('gcm', help='path to the GCM text file')
        res.set_defaults(func=func)
        return res

    sub('classify', cmd_classify, 'classify each indecomposable block')

    res = sub('roots', cmd_roots, 'positive roots with multiplicities')
    res.add_argument('--height', type=int, required=True)

    res = sub('mult', cmd_mult, 'multiplicity of a root')
    res.add_argument('--root', required=True, help='root literal such as 1,2')

    res = sub('commutator', cmd_commutator, 'commutator constants of a prenilpotent pair')
    res.add_argument('--alpha', required=True)
    res.add_argument('--beta', required=True)

    res = sub('eval', cmd_eval, 'adjoint action of a group word')
    res.add_argument('--word', required=True)
    res.add_argument('--vector', required=True, help='e.g. "2*e0 - h1"')
    res.add_argument('--field', type=FieldSpec.parse, default=FieldSpec())

    res = sub('check', cmd_check, 'operator sweep of the relations R0..R4')
    res.add_argument('--relations', nargs='+', choices=RELATIONS, default=list(RELATIONS))
    res.add_argument('--height', type=int, default=4)
    res.add_argument('--root-height', type=int, default=2,
                     help='largest height of the real roots swept')
    res.add_argument('--field', type=FieldSpec.parse, default=FieldSpec())
    res.add_argument('--seed', type=int, default=0)

    res = sub('oracle', cmd_oracle, 'random words against the affine loop realization')
    res.add_argument('--words', type=int, default=100)
    res.add_argument('--length', type=int, default=12, help='maximum word length')
    res.add_argument('--height', type=int, default=6)
    res.add_argument('--field', type=FieldSpec.parse, default=FieldSpec(7))
    res.add_argument('--seed', type=int, default=0)

    res = sub('bruhat', cmd_bruhat, 'Iwahori-Bruhat cell of a Laurent matrix')
    res.add_argument('--matrix', required=True, help='a;b;c;d, e.g. "0;t^-1;-t;0"')
    res.add_argument('--field', type=FieldSpec.parse, default=FieldSpec())

    res = sub('normalform', cmd_normalform, 'normal form of a product of exponentials')
    res.add_argument('--word-of-exps', required=True, dest='word_of_exps',
                     help='e.g. "x[1,0](1) x[1,1]#0(-2)"')
    res.add_argument('--trunc', type=int, required=True)
    return parser

def main(argv: typing.Sequence[str] = None, stdout=None) -> int:
    """Runs one subcommand and returns the exit code"""
    if stdout is None:
        stdout = sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2

    level = logging.WARNING
    if args.verbose == 1:
        level = logging.INFO
    elif args.verbose > 1:
        level = logging.DEBUG
    logging.basicConfig(stream=sys.stderr, level=level,
                        format='%(asctime)s %(name)s %(levelname)s %(message)s')

    out = Output(stdout, args.pretty)
    try:
        args.func(args, out)
    except (errors.ParseError, errors.NotGroupLike, OSError) as exc:
        out.close()
        print(f'kmgroups {args.command}: {exc}', file=sys.stderr)
        return 2
    except errors.KacMoodyError as exc:
        out.close()
        print(f'kmgroups {args.command}: {type(exc).__name__}: {exc}', file=sys.stderr)
        return 1
    except ValueError as exc:
        out.close()
        print(f'kmgroups {args.command}: {exc}', file=sys.stderr)
        return 2
    out.close()
    return 0
