'''Tests for problem_file.'''

import json

import pytest

import problem_file
from errors import InputError, ProblemFileError
from gaugerep import WeightMultiset
from gluability import GluabilityProblem, is_gluable, quotient_problem
from lattice import TorusData, TorusMap
from quiver import is_dismemberment


def _problem_doc(**overrides):
    problem = {'rank': 2, 'restriction': [[1, 0], [0, 1]], 'weights': [[-1, 1]]}
    problem.update(overrides)
    return {'problem': problem}


def test_load_quiver_only(fixture_path):
    doc = problem_file.load(fixture_path('chain.json'))
    assert doc.kind == 'quiver'
    assert doc.quiver.edge_ids == ('e1', 'e2')
    assert dict(doc.dims) == {'a': 1, 'b': 2, 'c': 1}
    assert doc.flags == {'scalar_flavor': False, 'quotient_scalar': False, 'normalize_orientation': False}


def test_load_dismemberment(fixture_path):
    doc = problem_file.load(fixture_path('chain_finest.json'))
    assert doc.kind == 'dismemberment'
    assert doc.dismemberment.target == doc.quiver
    assert is_dismemberment(doc.dismemberment)


def test_load_explosion(fixture_path):
    doc = problem_file.load(fixture_path('explosion.json'))
    assert doc.kind == 'explosion'
    assert doc.explosion.quiver.vertices == ('a', 'xbb1', 'xbb2')
    assert doc.to_dict()['explosion'] == {'parts': {'b': [1, 1]}}


def test_load_explicit_problem(fixture_path):
    doc = problem_file.load(fixture_path('identity_problem.json'))
    assert doc.kind == 'problem'
    assert doc.quiver is None
    assert doc.problem.ambient.blocks == (1, 1)
    assert doc.problem.gauge.to_lists() == [[1, 0], [0, 1]]
    assert is_gluable(doc.problem).verdict


def test_dangling_edge_is_reported(fixture_path):
    with pytest.raises(ProblemFileError) as info:
        problem_file.load(fixture_path('dangling_edge.json'))
    assert info.value.location == 'quiver'


def test_missing_file(tmp_path):
    path = tmp_path / 'nope.json'
    with pytest.raises(ProblemFileError) as info:
        problem_file.load(path)
    assert info.value.location == str(path)


def test_invalid_json(tmp_path):
    path = tmp_path / 'broken.json'
    path.write_text('{"quiver": ', encoding='utf-8')
    with pytest.raises(ProblemFileError) as info:
        problem_file.load(path)
    assert info.value.location.startswith(f'{path}:1:')
    assert 'invalid JSON' in str(info.value)


def test_invalid_utf8(fixture_path):
    path = fixture_path('bad_utf8.json')
    with pytest.raises(ProblemFileError) as info:
        problem_file.load(path)
    assert info.value.location == f'{path}:byte 12'
    assert 'invalid UTF-8' in str(info.value)


@pytest.mark.parametrize('doc, location', [
    ({}, '<root>'),
    ({'quiver': {'vertices': ['a']}, 'dims': {}}, 'quiver'),
    ({'quiver': {'vertices': ['a'], 'edges': []}, 'dims': {'a': -1}}, 'dims/a'),
    ({'quiver': {'vertices': ['a'], 'edges': []}, 'dims': {'a': 1}, 'extra': 1}, '<root>'),
    ({'quiver': {'vertices': ['a'], 'edges': []}, 'dims': {'a': 1}, 'flags': {'verbose': True}}, 'flags'),
    (_problem_doc(weights=[[0.5, 1]]), 'problem/weights/0'),
    (_problem_doc(rank=0), 'problem/rank'),
])
def test_schema_errors(doc, location):
    with pytest.raises(ProblemFileError) as info:
        problem_file.parse(doc)
    assert info.value.location == location


@pytest.mark.parametrize('doc, location', [
    (_problem_doc(weights=[[1, 0, 0]]), 'problem/weights/0'),
    (_problem_doc(restriction=[[1, 0]]), 'problem/restriction'),
    (_problem_doc(blocks=[1]), 'problem/blocks'),
    (_problem_doc(gauge=[[1]]), 'problem/gauge'),
    (_problem_doc(restriction=[[1, 0], [0]]), 'problem/restriction'),
])
def test_problem_errors(doc, location):
    with pytest.raises(ProblemFileError) as info:
        problem_file.parse(doc)
    assert info.value.location == location


def test_missing_dims_entry():
    doc = {'quiver': {'vertices': ['a', 'b'], 'edges': []}, 'dims': {'a': 1}}
    with pytest.raises(ProblemFileError) as info:
        problem_file.parse(doc)
    assert info.value.location == 'dims'


def test_more_than_one_payload(fixture_path):
    with open(fixture_path('chain_finest.json'), encoding='utf-8') as f:
        doc = json.load(f)
    doc['explosion'] = {'parts': {'b': [1, 1]}}
    with pytest.raises(ProblemFileError) as info:
        problem_file.parse(doc)
    assert info.value.location == '<root>'


def test_bad_explosion_parts():
    doc = {'quiver': {'vertices': ['a'], 'edges': []}, 'dims': {'a': 2}, 'explosion': {'parts': {'a': [3]}}}
    with pytest.raises(ProblemFileError) as info:
        problem_file.parse(doc)
    assert info.value.location == 'explosion/parts'


def test_weight_multiplicities_merge():
    doc = problem_file.parse(_problem_doc(weights=[[1, -1], {'weight': [1, -1], 'multiplicity': 2}, [0, 0]]))
    assert doc.problem.weights.multiplicity((1, -1)) == 3
    out = problem_file.problem_to_dict(doc.problem)
    assert out['weights'] == [[0, 0], {'weight': [1, -1], 'multiplicity': 3}]
    assert out['blocks'] == [1, 1]


def test_flags_survive_serialization():
    raw = _problem_doc()
    raw['flags'] = {'scalar_flavor': True}
    doc = problem_file.parse(raw)
    assert doc.flags['scalar_flavor']
    assert not doc.flags['quotient_scalar']
    assert problem_file.parse(doc.to_dict()).flags == doc.flags


def test_dumps_is_stable(fixture_path):
    doc = problem_file.load(fixture_path('chain_finest.json'))
    text = problem_file.dumps(doc)
    assert text == problem_file.dumps(problem_file.parse(json.loads(text)))
    assert list(json.loads(text)) == ['dims', 'dismemberment', 'quiver']


def test_quotient_tori_are_not_written():
    torus = TorusData(rank=2, central_quotients=[(1, 1)])
    problem = GluabilityProblem(WeightMultiset(2, [(1, -1)]), TorusMap.identity(torus))
    with pytest.raises(InputError):
        problem_file.problem_to_dict(problem)


def test_quotient_problem_is_written_without_quotients(fixture_path):
    doc = problem_file.load(fixture_path('identity_problem.json'))
    out = problem_file.problem_to_dict(quotient_problem(doc.problem))
    assert out['rank'] == 1
    assert out['weights'] in ([[1]], [[-1]])
