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
Problem files: UTF-8 JSON documents describing a quiver with dimensions and
at most one of a dismemberment, an explosion or an explicit torus problem.

    {
      "quiver": {"vertices": ["a", "b"], "edges": [{"id": "e", "src": "a", "dst": "b"}]},
      "dims": {"a": 1, "b": 2},
      "dismemberment": {"quiver": {...}, "vertex_map": {...}, "edge_map": {...}},
      "explosion": {"parts": {"b": [1, 1]}},
      "problem": {"rank": 3, "weights": [[1, -1, 0], {"weight": [0, 1, -1], "multiplicity": 2}],
                  "restriction": [[1], [1], [1]], "gauge": [[1, 0], [0, 1], [0, 0]]},
      "flags": {"scalar_flavor": false, "quotient_scalar": false, "normalize_orientation": false}
    }

Files are validated against SCHEMA first and then for referential integrity.
Every failure is a ProblemFileError carrying the location of the problem.
'''

import json
import logging

from jsonschema import Draft202012Validator

from errors import InputError, ProblemFileError
from gaugerep import WeightMultiset
from gluability import GluabilityProblem
from lattice import TorusData, TorusMap
from quiver import DimensionVector, QuiverMorphism, QuiverSpec, explode

logger = logging.getLogger(__name__)

FLAG_NAMES = ('scalar_flavor', 'quotient_scalar', 'normalize_orientation')

_ID = {'type': 'string', 'minLength': 1}
_VECTOR = {'type': 'array', 'items': {'type': 'integer'}}
_MATRIX = {'type': 'array', 'items': _VECTOR}
_BLOCKS = {'type': 'array', 'items': {'type': 'integer', 'minimum': 0}}
_ID_MAP = {'type': 'object', 'additionalProperties': _ID}

_QUIVER = {
    'type': 'object',
    'required': ['vertices', 'edges'],
    'additionalProperties': False,
    'properties': {
        'vertices': {'type': 'array', 'items': _ID},
        'edges': {
            'type': 'array',
            'items': {
                'type': 'object',
                'required': ['id', 'src', 'dst'],
                'additionalProperties': False,
                'properties': {'id': _ID, 'src': _ID, 'dst': _ID},
            },
        },
    },
}

SCHEMA = {
    '$schema': 'https://json-schema.org/draft/2020-12/schema',
    'type': 'object',
    'additionalProperties': False,
    'anyOf': [{'required': ['quiver', 'dims']}, {'required': ['problem']}],
    'properties': {
        'quiver': _QUIVER,
        'dims': {'type': 'object', 'additionalProperties': {'type': 'integer', 'minimum': 0}},
        'dismemberment': {
            'type': 'object',
            'required': ['quiver', 'vertex_map', 'edge_map'],
            'additionalProperties': False,
            'properties': {'quiver': _QUIVER, 'vertex_map': _ID_MAP, 'edge_map': _ID_MAP},
        },
        'explosion': {
            'type': 'object',
            'required': ['parts'],
            'additionalProperties': False,
            'properties': {
                'parts': {
                    'type': 'object',
                    'additionalProperties': {
                        'type': 'array', 'minItems': 1, 'items': {'type': 'integer', 'minimum': 0}},
                },
            },
        },
        'problem': {
            'type': 'object',
            'required': ['rank', 'weights', 'restriction'],
            'additionalProperties': False,
            'properties': {
                'rank': {'type': 'integer', 'minimum': 1},
                'blocks': _BLOCKS,
                'source_blocks': _BLOCKS,
                'gauge_blocks': _BLOCKS,
                'weights': {
                    'type': 'array',
                    'items': {
                        'oneOf': [
                            _VECTOR,
                            {
                                'type': 'object',
                                'required': ['weight', 'multiplicity'],
                                'additionalProperties': False,
                                'properties': {
                                    'weight': _VECTOR,
                                    'multiplicity': {'type': 'integer', 'minimum': 1},
                                },
                            },
                        ],
                    },
                },
                'restriction': _MATRIX,
                'gauge': _MATRIX,
            },
        },
        'flags': {
            'type': 'object',
            'additionalProperties': False,
            'properties': {name: {'type': 'boolean'} for name in FLAG_NAMES},
        },
    },
}

_VALIDATOR = Draft202012Validator(SCHEMA)


class ProblemDocument:
    '''Parsed problem file.'''

    def __init__(self, quiver=None, dims=None, dismemberment=None, explosion=None,
                 problem=None, flags=None):
        self.quiver = quiver
        self.dims = dims
        # QuiverMorphism pieces -> quiver
        self.dismemberment = dismemberment
        # Explosion of quiver
        self.explosion = explosion
        # GluabilityProblem given by explicit matrices
        self.problem = problem
        self.flags = {name: False for name in FLAG_NAMES}
        self.flags.update(flags or {})

    @property
    def kind(self):
        for kind in ('dismemberment', 'explosion', 'problem'):
            if getattr(self, kind) is not None:
                return kind
        return 'quiver'

    def to_dict(self):
        doc = {}
        if self.quiver is not None:
            doc['quiver'] = quiver_to_dict(self.quiver)
            doc['dims'] = dict(self.dims)
        if self.dismemberment is not None:
            doc['dismemberment'] = morphism_to_dict(self.dismemberment)
        if self.explosion is not None:
            doc['explosion'] = {'parts': {v: [self.explosion.blocks[name].size for name in names]
                                          for v, names in self.explosion.preimages.items()
                                          if len(names) > 1}}
        if self.problem is not None:
            doc['problem'] = problem_to_dict(self.problem)
        if any(self.flags.values()):
            doc['flags'] = dict(self.flags)
        return doc

    def __repr__(self):
        return f'ProblemDocument({self.kind})'


def quiver_to_dict(quiver):
    return {
        'vertices': list(quiver.vertices),
        'edges': [{'id': e.id, 'src': e.src, 'dst': e.dst} for e in quiver.edges],
    }


def morphism_to_dict(gamma):
    return {
        'quiver': quiver_to_dict(gamma.source),
        'vertex_map': dict(gamma.vertex_map),
        'edge_map': dict(gamma.edge_map),
    }


def problem_to_dict(problem):
    '''Explicit-matrix form of a problem without central quotients.'''
    tori = (problem.ambient, problem.restriction.source, problem.gauge.source)
    if any(t.central_quotients for t in tori):
        raise InputError('Problems over quotient tori cannot be written to a problem file.')
    weights = [list(xi) if m == 1 else {'weight': list(xi), 'multiplicity': m}
               for xi, m in problem.weights.items()]
    return {
        'rank': problem.ambient.rank,
        'blocks': list(problem.ambient.blocks),
        'source_blocks': list(problem.restriction.source.blocks),
        'gauge_blocks': list(problem.gauge.source.blocks),
        'weights': weights,
        'restriction': problem.restriction.to_lists(),
        'gauge': problem.gauge.to_lists(),
    }


def dumps(doc):
    '''Stable JSON text: sorted keys, two-space indent.'''
    if isinstance(doc, ProblemDocument):
        doc = doc.to_dict()
    return json.dumps(doc, indent=2, sort_keys=True)


def _quiver_from_dict(data, location):
    try:
        return QuiverSpec(data['vertices'], [(e['id'], e['src'], e['dst']) for e in data['edges']])
    except InputError as exc:
        raise ProblemFileError(str(exc), location) from exc


def _torus(blocks, rank, location):
    if blocks is None:
        return TorusData(blocks=[1] * rank)
    if sum(blocks) != rank:
        raise ProblemFileError(f'blocks {blocks} do not add up to rank {rank}', location)
    return TorusData(blocks=blocks)


def _problem_from_dict(data):
    rank = data['rank']
    ambient = _torus(data.get('blocks'), rank, 'problem/blocks')
    rows = data['restriction']
    if len(rows) != rank:
        raise ProblemFileError(f'expected {rank} rows, got {len(rows)}', 'problem/restriction')
    source_rank = len(rows[0])
    weights = {}
    for k, item in enumerate(data['weights']):
        xi, mult = (item, 1) if isinstance(item, list) else (item['weight'], item['multiplicity'])
        if len(xi) != rank:
            raise ProblemFileError(f'weight has length {len(xi)}, expected {rank}', f'problem/weights/{k}')
        weights[tuple(xi)] = weights.get(tuple(xi), 0) + mult
    try:
        restriction = TorusMap(_torus(data.get('source_blocks'), source_rank, 'problem/source_blocks'),
                               ambient, rows)
    except InputError as exc:
        raise ProblemFileError(str(exc), 'problem/restriction') from exc
    gauge = None
    if 'gauge' in data:
        gauge_rows = data['gauge']
        if len(gauge_rows) != rank:
            raise ProblemFileError(f'expected {rank} rows, got {len(gauge_rows)}', 'problem/gauge')
        try:
            gauge = TorusMap(_torus(data.get('gauge_blocks'), len(gauge_rows[0]), 'problem/gauge_blocks'),
                             ambient, gauge_rows)
        except InputError as exc:
            raise ProblemFileError(str(exc), 'problem/gauge') from exc
    try:
        return GluabilityProblem(WeightMultiset(rank, weights), restriction, gauge)
    except InputError as exc:
        raise ProblemFileError(str(exc), 'problem') from exc


def parse(doc):
    '''Validate a decoded JSON document and build a ProblemDocument.'''
    errors = sorted(_VALIDATOR.iter_errors(doc), key=lambda e: [str(p) for p in e.absolute_path])
    if errors:
        first = errors[0]
        raise ProblemFileError(first.message, '/'.join(map(str, first.absolute_path)) or '<root>')
    present = [k for k in ('dismemberment', 'explosion', 'problem') if k in doc]
    if len(present) > 1:
        raise ProblemFileError(f'expected at most one of dismemberment, explosion, problem; got {present}',
                               '<root>')
    quiver = dims = dismemberment = explosion = problem = None
    if 'quiver' in doc:
        quiver = _quiver_from_dict(doc['quiver'], 'quiver')
        try:
            dims = DimensionVector(quiver, doc.get('dims', {}))
        except InputError as exc:
            raise ProblemFileError(str(exc), 'dims') from exc
    elif present and present[0] != 'problem':
        raise ProblemFileError(f'{present[0]} needs a quiver and dims', '<root>')
    if 'dismemberment' in doc:
        data = doc['dismemberment']
        pieces = _quiver_from_dict(data['quiver'], 'dismemberment/quiver')
        try:
            dismemberment = QuiverMorphism(pieces, quiver, data['vertex_map'], data['edge_map'])
        except InputError as exc:
            raise ProblemFileError(str(exc), 'dismemberment') from exc
    if 'explosion' in doc:
        try:
            explosion = explode(quiver, dims, doc['explosion']['parts'])
        except InputError as exc:
            raise ProblemFileError(str(exc), 'explosion/parts') from exc
    if 'problem' in doc:
        problem = _problem_from_dict(doc['problem'])
    document = ProblemDocument(quiver, dims, dismemberment, explosion, problem, doc.get('flags'))
    logger.debug(f'Parsed {document!r}.')
    return document


def load(path):
    '''Read and parse a problem file.'''
    try:
        with open(path, 'r', encoding='utf-8') as f:
            text = f.read()
    except OSError as exc:
        raise ProblemFileError(exc.strerror or str(exc), str(path)) from exc
    except UnicodeDecodeError as exc:
        raise ProblemFileError(f'invalid UTF-8: {exc.reason}', f'{path}:byte {exc.start}') from exc
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ProblemFileError(f'invalid JSON: {exc.msg}', f'{path}:{exc.lineno}:{exc.colno}') from exc
    return parse(doc)
