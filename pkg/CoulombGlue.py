# CoulombGlue - Gluing criteria for Coulomb branches of quiver gauge theories
# Copyright (C) 2026  coulomb-glue contributors
#
# This program is free software: you can redistribute it and/or modify
# it under the terms of the GNU General Public License as published by
# the Free Software Foundation, either version 3 of the License, or
# (at your option) any later version.
#
# This program is distributed in the hope that it will be useful,
# but WITHOUT ANY WARRANTY; without even the implied warranty of
# MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE.  See the
# GNU General Public License for more details.
#
# You should have received a copy of the GNU General Public License
# along with this program.  If not, see <https://www.gnu.org/licenses/>.

'''
Main CoulombGlue application.

    python CoulombGlue.py check-gluable [--json] [--scalar-flavor] [--quotient-scalar]
                                        [--normalize-orientation] FILE
    python CoulombGlue.py construct partition-quiver N PARTS
    python CoulombGlue.py construct a-legs PARTS
    python CoulombGlue.py construct comet --genus G --dim N [--puncture H ...] [--dismember] [--detach P]
    python CoulombGlue.py construct explode (FILE | --partition PARTS)
    python CoulombGlue.py construct dismember-finest [--normalize-orientation] FILE
    python CoulombGlue.py construct partition-gluing PARTS
    python CoulombGlue.py verify [--bound B] [--verbose] [--json] FILE
    python CoulombGlue.py corpus --kind {lemma,split,problems} [--seed S] [--count N] --out DIR

Exit codes: 0 success or gluable, 1 not gluable, 2 input error, 3 consistency failure.
'''

import argparse
import logging
import logging.handlers
import os
import sys

import config
import constructions
import corpus
import euler
import gluability
import problem_file
from errors import ConsistencyError, InputError, ProblemFileError
from gaugerep import torus_map_of_explosion, weights_of_quiver_rep
from problem_file import ProblemDocument
from quiver import (DimensionVector, finest_dismemberment, normalize_morphism_orientation,
                    normalize_orientation)

EXIT_OK = 0
EXIT_NOT_GLUABLE = 1
EXIT_INPUT_ERROR = 2
EXIT_CONSISTENCY = 3

logger = logging.getLogger(__name__)


def setup_logging(path=config.LOG_PATH):
    '''Attach the rotating log file to the root logger. Returns the handler.'''
    root = logging.getLogger()
    root.setLevel(logging.DEBUG)
    handler = logging.handlers.RotatingFileHandler(path, maxBytes=config.LOG_MAX_BYTES,
                                                   backupCount=config.LOG_BACKUP_COUNT, encoding='utf8')
    handler.setLevel(logging.DEBUG)
    handler.setFormatter(logging.Formatter(config.LOG_FORMAT))
    root.addHandler(handler)
    logger.info('Logger started.')
    return handler


def close_logging(handler):
    logger.info('Logger closed.')
    logging.getLogger().removeHandler(handler)
    handler.close()


def _flags(args, doc):
    '''File flags, switched on by the matching command-line options.'''
    return {name: doc.flags[name] or getattr(args, name, False) for name in problem_file.FLAG_NAMES}


def build_problem(doc, flags):
    '''The GluabilityProblem a parsed document describes.'''
    quotient = flags['quotient_scalar']
    if doc.kind == 'dismemberment':
        gamma = doc.dismemberment
        if flags['normalize_orientation']:
            gamma, _ = normalize_morphism_orientation(gamma)
        problem = gluability.dismemberment_problem(gamma.target, doc.dims, gamma, quotient)
    elif doc.kind == 'explosion':
        weights = weights_of_quiver_rep(doc.quiver, doc.dims)
        problem = gluability.quiver_map_problem(weights, torus_map_of_explosion(doc.explosion), quotient)
    elif doc.kind == 'problem':
        problem = gluability.quotient_problem(doc.problem) if quotient else doc.problem
    else:
        raise ProblemFileError('expected a dismemberment, an explosion or a problem', '<root>')
    if flags['scalar_flavor']:
        problem = gluability.scalar_extended_problem(problem)
    return problem


def _print_json(data):
    print(problem_file.dumps(data))


def cmd_check_gluable(args):
    doc = problem_file.load(args.file)
    flags = _flags(args, doc)
    workers = config.worker_count()
    if doc.kind == 'dismemberment':
        report = gluability.gluable_for_quiver_dismemberment(
            doc.quiver, doc.dims, doc.dismemberment,
            quotient_scalar=flags['quotient_scalar'],
            normalize_orientation=flags['normalize_orientation'],
            scalar_extension=flags['scalar_flavor'],
            workers=workers)
    else:
        report = gluability.is_gluable(build_problem(doc, flags), workers)
    logger.info(f'{args.file}: verdict {report.verdict}, {len(report.witnesses)} witnesses')
    if args.json:
        _print_json(report.to_dict())
    elif report.verdict:
        print(f'gluable ({report.pairs_checked} pairs checked)')
    else:
        print(f'not gluable: {len(report.witnesses)} witnesses')
        for w in report.witnesses:
            print(f'  xi1={list(w.xi1)} xi2={list(w.xi2)} mu={list(w.mu)}')
        if not report.injectivity_ok:
            print(f'  {len(report.injectivity_witnesses)} witnesses restrict to zero')
    return EXIT_OK if report.verdict else EXIT_NOT_GLUABLE


def _construct_document(args):
    what = args.what
    if what == 'partition-quiver':
        partition = constructions.Partition.parse(args.parts)
        if partition.n != args.n:
            raise InputError(f'Partition {partition.parts} does not add up to {args.n}.')
        quiver, dims = constructions.build_Q_partition(partition)
        return ProblemDocument(quiver, dims)
    if what == 'a-legs':
        quiver, dims = constructions.build_A_legs(constructions.Partition.parse(args.parts))
        return ProblemDocument(quiver, dims)
    if what == 'comet':
        punctures = [constructions.PunctureData.parse(p) for p in args.puncture]
        if args.dismember or args.detach is not None:
            comet, dims, _, _, gamma = constructions.comet_dismemberment(args.genus, args.dim, punctures,
                                                                         args.detach)
            return ProblemDocument(comet, dims, dismemberment=gamma)
        quiver, dims = constructions.build_comet(args.genus, args.dim, punctures)
        return ProblemDocument(quiver, dims)
    if what == 'explode':
        if (args.file is None) == (args.partition is None):
            raise InputError('explode needs exactly one of FILE and --partition.')
        if args.partition is not None:
            explosion = constructions.explode_A_chain(constructions.Partition.parse(args.partition))
        else:
            doc = problem_file.load(args.file)
            if doc.kind != 'explosion':
                raise ProblemFileError('expected an explosion', str(args.file))
            explosion = doc.explosion
        return ProblemDocument(explosion.quiver, explosion.dims)
    if what == 'dismember-finest':
        doc = problem_file.load(args.file)
        if doc.quiver is None:
            raise ProblemFileError('expected a quiver', str(args.file))
        quiver = doc.quiver
        if args.normalize_orientation:
            quiver, _ = normalize_orientation(quiver)
        _, _, gamma = finest_dismemberment(quiver, doc.dims)
        return ProblemDocument(quiver, DimensionVector(quiver, doc.dims), dismemberment=gamma)
    if what == 'partition-gluing':
        gluing = constructions.partition_gluing_map(constructions.Partition.parse(args.parts))
        return ProblemDocument(problem=gluing.problem(quotient_scalar=False),
                               flags={'quotient_scalar': True})
    raise InputError(f'Unknown construction "{what}".')


def cmd_construct(args):
    doc = _construct_document(args)
    logger.info(f'construct {args.what}: {doc!r}')
    _print_json(doc)
    return EXIT_OK


def _verdict_row(kind, verdict):
    common = '-' if verdict.common_factor is None else f'{list(verdict.common_factor[0])}~{list(verdict.common_factor[1])}'
    return (f'{kind.value:<12} {str(list(verdict.lam)):<24} left={int(verdict.left_nonzero)} '
            f'right={int(verdict.right_nonzero)} common={common} exact={int(verdict.exact)}')


def cmd_verify(args):
    doc = problem_file.load(args.file)
    problem = build_problem(doc, _flags(args, doc))
    workers = config.worker_count()
    report = euler.cross_check(problem, args.bound, keep_verdicts=args.verbose, workers=workers)
    logger.info(f'{args.file}: {report.summary()}')
    if args.json:
        _print_json(report.to_dict())
    else:
        if args.verbose:
            for kind, verdict in report.verdicts:
                print(_verdict_row(kind, verdict))
        print(f'{"gluable" if report.gluable else "not gluable"}, '
              f'{report.lambdas_checked} coweights checked: {report.summary()}')
        for d in report.discrepancies:
            print(f'  DISCREPANCY {_verdict_row(d.kind, d.verdict)}: {d.reason}')
    report.require_consistent()
    return EXIT_OK


def cmd_corpus(args):
    if args.count < 0:
        raise InputError(f'--count must be nonnegative, got {args.count}.')
    os.makedirs(args.out, exist_ok=True)
    if args.kind == 'lemma':
        docs = (ProblemDocument(c.quiver, c.dims, dismemberment=c.gamma)
                for c in corpus.lemma_corpus(args.count, args.seed))
    elif args.kind == 'split':
        docs = (ProblemDocument(c.quiver, c.dims, dismemberment=c.gamma)
                for c in corpus.split_parallel_corpus(args.count, args.seed))
    else:
        docs = (ProblemDocument(problem=p) for p in corpus.random_problems(args.count, args.seed))
    written = 0
    for k, doc in enumerate(docs, start=1):
        path = os.path.join(args.out, f'{args.kind}-{k:03d}.json')
        with open(path, 'w', encoding='utf-8') as f:
            f.write(problem_file.dumps(doc) + '\n')
        written += 1
    logger.info(f'Wrote {written} {args.kind} problem files to "{args.out}".')
    print(f'{written} files written to {args.out}')
    return EXIT_OK


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--json', action='store_true', help='machine-readable output')
    common.add_argument('--log-file', default=config.LOG_PATH, help='log file path')
    common.add_argument('--no-log', action='store_true', help='do not write a log file')
    flags = argparse.ArgumentParser(add_help=False)
    flags.add_argument('--scalar-flavor', action='store_true',
                       help='extend by a scalar flavor coordinate on both sides')
    flags.add_argument('--quotient-scalar', action='store_true',
                       help='quotient all tori by their scalar cocharacters')
    flags.add_argument('--normalize-orientation', action='store_true',
                       help='orient parallel edges alike before deciding')

    parser = argparse.ArgumentParser(prog='coulomb-glue',
                                     description='Gluing criteria for Coulomb branches of quiver gauge theories.')
    commands = parser.add_subparsers(dest='command', required=True)

    check = commands.add_parser('check-gluable', parents=[common, flags], help='decide gluability')
    check.add_argument('file')
    check.set_defaults(func=cmd_check_gluable)

    construct = commands.add_parser('construct', help='build named quivers')
    kinds = construct.add_subparsers(dest='what', required=True)
    p = kinds.add_parser('partition-quiver', parents=[common])
    p.add_argument('n', type=int)
    p.add_argument('parts', help='comma-separated parts, e.g. 2,2')
    p = kinds.add_parser('a-legs', parents=[common])
    p.add_argument('parts')
    p = kinds.add_parser('comet', parents=[common])
    p.add_argument('--genus', type=int, default=0)
    p.add_argument('--dim', type=int, required=True)
    p.add_argument('--puncture', action='append', default=[], help='weakly decreasing parts, e.g. 1,1,1')
    p.add_argument('--dismember', action='store_true', help='include the dismemberment at the centre')
    p.add_argument('--detach', type=int, help='only split off the leg of this puncture')
    p = kinds.add_parser('explode', parents=[common])
    p.add_argument('file', nargs='?')
    p.add_argument('--partition', help='explode the top vertex of the chain A_n')
    p = kinds.add_parser('dismember-finest', parents=[common])
    p.add_argument('file')
    p.add_argument('--normalize-orientation', action='store_true')
    p = kinds.add_parser('partition-gluing', parents=[common])
    p.add_argument('parts')
    construct.set_defaults(func=cmd_construct)

    verify = commands.add_parser('verify', parents=[common, flags], help='Euler-class cross-check')
    verify.add_argument('file')
    verify.add_argument('--bound', type=int, default=config.DEFAULT_BOUND)
    verify.add_argument('--verbose', action='store_true', help='print every coweight verdict')
    verify.set_defaults(func=cmd_verify)

    gen = commands.add_parser('corpus', parents=[common], help='write a random corpus of problem files')
    gen.add_argument('--kind', choices=['lemma', 'split', 'problems'], required=True)
    gen.add_argument('--seed', type=int, default=0)
    gen.add_argument('--count', type=int, default=10)
    gen.add_argument('--out', required=True)
    gen.set_defaults(func=cmd_corpus)
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    handler = None if args.no_log else setup_logging(args.log_file)
    try:
        return args.func(args)
    except InputError as exc:
        logger.error(str(exc))
        print(f'ERROR: {exc}', file=sys.stderr)
        return EXIT_INPUT_ERROR
    except ConsistencyError as exc:
        logger.critical(str(exc))
        print(f'CONSISTENCY FAILURE: {exc}', file=sys.stderr)
        return EXIT_CONSISTENCY
    finally:
        if handler is not None:
            close_logging(handler)


if __name__ == '__main__':
    raise SystemExit(main())
