'''Tests for gluability.'''

import logging
from fractions import Fraction

import numpy as np
import pytest

import corpus
from errors import ConsistencyError, DimensionError, QuiverValidationError
from gaugerep import WeightMultiset, weights_of_quiver_rep
from gluability import (GluabilityProblem, Witness, brute_force_gluable, check_shrinking_monotonicity,
                        dismemberment_problem, gluable_after_scalar, gluable_for_quiver_dismemberment,
                        gluable_with_scalar_extension, is_gluable, quotient_problem, scalar_extended_problem,
                        validate_witness)
from lattice import TorusData, TorusMap, pair
from quiver import Edge, QuiverMorphism, QuiverSpec, finest_dismemberment


def _split_pair(quiver):
    pieces = QuiverSpec(['a.1', 'b.1', 'a.2', 'b.2'],
                        [Edge('p1', 'a.1', 'b.1'), Edge('p2', 'a.2', 'b.2')])
    vertex_map = {'a.1': 'a', 'b.1': 'b', 'a.2': 'a', 'b.2': 'b'}
    return QuiverMorphism(pieces, quiver, vertex_map, {'p1': 'p1', 'p2': 'p2'})


def test_identity_single_weight_is_gluable():
    torus = TorusData(rank=2)
    problem = GluabilityProblem(WeightMultiset(2, [(-1, 1)]), TorusMap.identity(torus))
    report = is_gluable(problem)
    assert report.verdict
    assert report.witnesses == ()
    assert report.pairs_checked == 1


def test_empty_problem_is_gluable():
    problem = GluabilityProblem(WeightMultiset(1), TorusMap.identity(TorusData(rank=1)))
    assert is_gluable(problem).verdict
    assert gluable_after_scalar(problem).verdict


def test_chain_finest_dismemberment_is_gluable(chain):
    quiver, dims = chain
    _, _, gamma = finest_dismemberment(quiver, dims)
    report = gluable_for_quiver_dismemberment(quiver, dims, gamma)
    assert report.verdict
    assert report.lifting.satisfies_gluing_lemma


def test_parallel_finest_dismemberment_is_gluable(parallel_pair):
    quiver, dims = parallel_pair
    _, _, gamma = finest_dismemberment(quiver, dims)
    assert gluable_for_quiver_dismemberment(quiver, dims, gamma).verdict


def test_split_parallel_is_not_gluable(parallel_pair):
    quiver, dims = parallel_pair
    report = gluable_for_quiver_dismemberment(quiver, dims, _split_pair(quiver))
    assert not report.verdict
    assert not report.lifting.ok
    assert len(report.witnesses) == 1
    witness = report.witnesses[0]
    assert witness.xi1 == (-1, 1, 0, 0)
    assert witness.xi2 == (0, 0, -1, 1)
    assert witness.alpha == Fraction(1)
    assert not witness.alpha_unconstrained
    assert witness.mu == (-1, 0, 1, 0)
    assert pair(witness.xi1, witness.mu_ambient) * pair(witness.xi2, witness.mu_ambient) < 0
    assert report.injectivity_ok


def test_loop_identity_is_not_gluable(loop_quiver):
    quiver, dims = loop_quiver
    report = gluable_for_quiver_dismemberment(quiver, dims, QuiverMorphism.identity(quiver))
    assert not report.verdict
    assert [(w.xi1, w.xi2, w.mu) for w in report.witnesses] == [((-1, 1), (1, -1), (1, 0))]


def test_loop_identity_with_scalar_extension_is_gluable(loop_quiver):
    quiver, dims = loop_quiver
    report = gluable_for_quiver_dismemberment(quiver, dims, QuiverMorphism.identity(quiver),
                                              scalar_extension=True)
    assert report.verdict


def test_scalar_extension_does_not_repair_split_parallel(parallel_pair):
    quiver, dims = parallel_pair
    problem = dismemberment_problem(quiver, dims, _split_pair(quiver))
    assert not gluable_with_scalar_extension(problem).verdict
    assert gluable_after_scalar(problem).verdict


def test_normalize_orientation_option():
    quiver = QuiverSpec(['a', 'b'], [Edge('p1', 'a', 'b'), Edge('p2', 'b', 'a')])
    dims = {'a': 1, 'b': 1}
    _, _, gamma = finest_dismemberment(quiver, dims)
    plain = gluable_for_quiver_dismemberment(quiver, dims, gamma)
    assert not plain.lifting.same_orientation
    normalized = gluable_for_quiver_dismemberment(quiver, dims, gamma, normalize_orientation=True)
    assert normalized.verdict
    assert normalized.lifting.same_orientation


def test_dismemberment_problem_checks_target(chain, parallel_pair):
    quiver, dims = chain
    _, _, gamma = finest_dismemberment(quiver, dims)
    with pytest.raises(QuiverValidationError):
        dismemberment_problem(parallel_pair[0], parallel_pair[1], gamma)


def test_problem_rank_checks():
    torus = TorusData(rank=2)
    with pytest.raises(DimensionError):
        GluabilityProblem(WeightMultiset(3, [(1, 0, 0)]), TorusMap.identity(torus))
    with pytest.raises(DimensionError):
        GluabilityProblem(WeightMultiset(2), TorusMap.identity(torus), TorusMap.identity(TorusData(rank=3)))


def test_injectivity_witnesses():
    ambient = TorusData(rank=2)
    problem = GluabilityProblem(WeightMultiset(2, [(1, -1), (-1, 1)]), TorusMap.zero(TorusData(rank=0), ambient))
    report = is_gluable(problem)
    assert not report.verdict
    assert not report.injectivity_ok
    assert report.injectivity_witnesses == report.witnesses
    for witness in report.witnesses:
        assert witness.alpha is None
        assert witness.alpha_unconstrained
        assert witness.to_dict()['alpha'] is None
        assert witness.to_dict()['alpha_unconstrained'] is True


def test_validate_witness_rejects_bad_certificates():
    torus = TorusData(rank=2)
    problem = GluabilityProblem(WeightMultiset(2, [(1, 0), (0, 1)]), TorusMap.identity(torus))
    with pytest.raises(ConsistencyError):
        validate_witness(problem, Witness((1, 0), (0, 1), None, (1, -1), (1, -1)))
    zero = GluabilityProblem(problem.weights, TorusMap.zero(TorusData(rank=0), torus))
    with pytest.raises(ConsistencyError):
        validate_witness(zero, Witness((1, 0), (0, 1), None, (1, 1), (1, 1)))
    with pytest.raises(ConsistencyError):
        validate_witness(zero, Witness((1, 0), (0, 1), None, (1, -1), (1, 0)))


def test_oracle_box_gives_small_witnesses(parallel_pair):
    quiver, dims = parallel_pair
    problem = dismemberment_problem(quiver, dims, _split_pair(quiver))
    report = is_gluable(problem, oracle_box=2)
    assert not report.verdict
    assert max(abs(x) for x in report.witnesses[0].mu) == 1


def test_oracle_box_with_large_weights():
    big = 2 ** 40
    problem = GluabilityProblem(WeightMultiset(2, [(big, 0), (-big, 0)]), TorusMap.identity(TorusData(rank=2)))
    report = is_gluable(problem, oracle_box=1)
    assert not report.verdict
    assert [w.mu for w in report.witnesses] == [(-1, -1)]
    assert report.witnesses[0].alpha == Fraction(-1)
    assert brute_force_gluable(problem, box=1) == (False, [((-big, 0), (big, 0))])


def test_default_call_logs_to_module_logger(caplog):
    problem = GluabilityProblem(WeightMultiset(2, [(-1, 1)]), TorusMap.identity(TorusData(rank=2)))
    with caplog.at_level(logging.DEBUG, logger='gluability'):
        assert is_gluable(problem).verdict
    assert any(r.name == 'gluability' and 'is_gluable: 1 pairs' in r.getMessage() for r in caplog.records)


def test_report_is_independent_of_workers(rng):
    for problem in corpus.random_problems(20, rng=rng, max_rank=4, max_weights=10):
        assert is_gluable(problem, workers=1).to_dict() == is_gluable(problem, workers=4).to_dict()


def test_lemma_corpus_is_gluable():
    for case in corpus.lemma_corpus(200, seed=0):
        report = gluable_for_quiver_dismemberment(case.quiver, case.dims, case.gamma)
        assert report.lifting.satisfies_gluing_lemma
        assert report.verdict


def test_split_parallel_corpus_is_not_gluable():
    for case in corpus.split_parallel_corpus(50, seed=1):
        report = gluable_for_quiver_dismemberment(case.quiver, case.dims, case.gamma)
        assert not report.verdict
        problem = dismemberment_problem(case.quiver, case.dims, case.gamma)
        for witness in report.witnesses:
            validate_witness(problem, witness)


def test_gluable_after_scalar_on_corpora():
    cases = list(corpus.lemma_corpus(50, seed=3)) + list(corpus.split_parallel_corpus(50, seed=4))
    for case in cases:
        problem = dismemberment_problem(case.quiver, case.dims, case.gamma)
        assert gluable_after_scalar(problem).verdict


def test_shrinking_monotonicity(rng):
    for problem in corpus.random_problems(100, rng=rng):
        inclusion = corpus.random_sublattice(rng, problem.gauge.source.rank)
        assert check_shrinking_monotonicity(problem, inclusion)


def test_shrinking_requires_injective_inclusion():
    torus = TorusData(rank=2)
    problem = GluabilityProblem(WeightMultiset(2, [(1, 0)]), TorusMap.identity(torus))
    with pytest.raises(DimensionError):
        check_shrinking_monotonicity(problem, TorusMap(TorusData(rank=2), torus, [[1, 1], [1, 1]]))
    with pytest.raises(DimensionError):
        check_shrinking_monotonicity(problem, TorusMap.identity(TorusData(rank=3)))


def test_agrees_with_brute_force(rng):
    for problem in corpus.random_problems(80, rng=rng, max_rank=5, max_weights=12):
        verdict, bad = brute_force_gluable(problem, box=3)
        report = is_gluable(problem)
        assert report.verdict == verdict
        assert {(w.xi1, w.xi2) for w in report.witnesses} == set(bad)


def test_verdict_invariant_under_sign_flip_and_weyl_action(rng):
    for problem in corpus.random_problems(40, rng=rng):
        verdict = is_gluable(problem).verdict
        flipped = GluabilityProblem(problem.weights.negate(), problem.restriction)
        assert is_gluable(flipped).verdict == verdict
        perm = []
        for block in problem.ambient.block_ranges():
            perm.extend(reversed(block))
        moved = GluabilityProblem(problem.weights.permute(perm), problem.restriction.permute_target(perm))
        assert is_gluable(moved).verdict == verdict


def test_quotient_problem_keeps_verdicts():
    for case in list(corpus.lemma_corpus(20, seed=5, min_dim=1)) + list(corpus.split_parallel_corpus(10, seed=6)):
        problem = dismemberment_problem(case.quiver, case.dims, case.gamma)
        quotient = quotient_problem(problem)
        assert quotient.ambient.rank == problem.ambient.rank - 1
        assert is_gluable(quotient).verdict == is_gluable(problem).verdict


def test_scalar_weights_descend(chain):
    quiver, dims = chain
    weights = weights_of_quiver_rep(quiver, dims)
    ones = np.ones(weights.rank, dtype=int)
    assert all(int(np.dot(xi, ones)) == 0 for xi in weights)


def test_witnesses_are_logged_to_the_given_logger(caplog, loop_quiver):
    quiver, dims = loop_quiver
    problem = dismemberment_problem(quiver, dims, QuiverMorphism.identity(quiver))
    with caplog.at_level(logging.DEBUG, logger='glue.custom'):
        is_gluable(problem, logger=logging.getLogger('glue.custom'))
    assert any(r.name == 'glue.custom' and 'separated by (1, 0)' in r.getMessage() for r in caplog.records)


def test_gluable_after_scalar_rejects_flavored_problems():
    torus = TorusData(rank=2)
    problem = GluabilityProblem(WeightMultiset(2, [(1, -1)]), TorusMap.identity(torus))
    flavored = scalar_extended_problem(problem)
    assert flavored.weights.scalar_flavor
    with pytest.raises(QuiverValidationError):
        gluable_after_scalar(flavored)
