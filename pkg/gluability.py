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
Gluability of maps of gauge groups.

A problem consists of the weights of a representation N of a torus T~_G, a
torus map T~_H -> T~_G (characters restrict along it) and the inclusion of
the gauge torus T_G -> T~_G. It is gluable when no pair of weights xi1, xi2
satisfies both:

    1. the restrictions of xi1 and xi2 to T~_H are linearly dependent, and
    2. some cocharacter mu of T_G has <xi1, mu> * <xi2, mu> < 0.

A violating pair together with such a mu is a witness. Every witness
produced here is re-validated against these two conditions before it is
returned.
'''

import itertools
import logging
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from typing import NamedTuple, Optional

import numpy as np

import config
from errors import ConsistencyError, DimensionError, QuiverValidationError
from gaugerep import (add_scalar_flavor, scalar_extension, torus_map_of_dismemberment,
                      weights_of_quiver_rep)
from lattice import (TorusData, TorusMap, Vector, box_pairings, pair, proportional_over_Q,
                     quotient_split, quotient_torus_map, rank_at_most_one, sign_feasible)
from quiver import DimensionVector, normalize_morphism_orientation, parallel_lifting_check

logger = logging.getLogger(__name__)


class GluabilityProblem:
    '''Weights on the ambient torus, the restriction H -> ambient and the gauge inclusion G -> ambient.'''

    def __init__(self, weights, restriction, gauge=None):
        if gauge is None:
            gauge = TorusMap.identity(restriction.target)
        if weights.rank != restriction.target.rank:
            raise DimensionError(
                f'Weights have rank {weights.rank} but the restriction targets rank {restriction.target.rank}.')
        if gauge.target.rank != restriction.target.rank:
            raise DimensionError(
                f'Gauge inclusion targets rank {gauge.target.rank}, expected {restriction.target.rank}.')
        for xi in weights.support:
            restriction.target.check_character(xi)
        self.weights = weights
        self.restriction = restriction
        self.gauge = gauge

    @property
    def ambient(self):
        return self.restriction.target

    @property
    def gauge_torus(self):
        return self.gauge.source

    def with_gauge(self, inclusion):
        '''Same problem with the gauge torus shrunk along `inclusion`.'''
        if inclusion.target.rank != self.gauge.source.rank:
            raise DimensionError(
                f'Inclusion targets rank {inclusion.target.rank}, but the gauge torus has rank {self.gauge.source.rank}.')
        return GluabilityProblem(self.weights, self.restriction, self.gauge.compose(inclusion))

    def __repr__(self):
        return (f'GluabilityProblem({self.weights!r}, H rank {self.restriction.source.rank}, '
                f'G rank {self.gauge.source.rank})')


class Witness(NamedTuple):
    '''A violating pair of weights and a separating gauge cocharacter.'''
    xi1: Vector
    xi2: Vector
    # restriction of xi1 = alpha * restriction of xi2, None when xi2 restricts to 0
    alpha: Optional[Fraction]
    mu: Vector
    mu_ambient: Vector
    # both restrictions vanish, so any alpha fits
    alpha_unconstrained: bool = False

    def to_dict(self):
        return {
            'xi1': list(self.xi1),
            'xi2': list(self.xi2),
            'alpha': None if self.alpha is None else str(self.alpha),
            'alpha_unconstrained': self.alpha_unconstrained,
            'mu': list(self.mu),
            'mu_ambient': list(self.mu_ambient),
        }


class GluabilityReport:
    '''Verdict of is_gluable with all witnesses, sorted.'''

    def __init__(self, verdict, witnesses, injectivity_witnesses, pairs_checked=0, lifting=None):
        self.verdict = verdict
        self.witnesses = tuple(witnesses)
        self.injectivity_witnesses = tuple(injectivity_witnesses)
        self.injectivity_ok = not self.injectivity_witnesses
        self.pairs_checked = pairs_checked
        # LiftingReport when the problem came from a quiver dismemberment
        self.lifting = lifting

    def to_dict(self):
        out = {
            'verdict': self.verdict,
            'witnesses': [w.to_dict() for w in self.witnesses],
            'injectivity_ok': self.injectivity_ok,
            'injectivity_witnesses': [w.to_dict() for w in self.injectivity_witnesses],
            'pairs_checked': self.pairs_checked,
        }
        if self.lifting is not None:
            out['lifting'] = {
                'ok': self.lifting.ok,
                'violations': [list(p) for p in self.lifting.violations],
                'has_loops': self.lifting.has_loops,
                'same_orientation': self.lifting.same_orientation,
                'loops_preserved': self.lifting.loops_preserved,
            }
        return out

    def __repr__(self):
        return f'GluabilityReport(verdict={self.verdict}, {len(self.witnesses)} witnesses)'


def validate_witness(problem, witness):
    '''Raise ConsistencyError unless witness satisfies both violation conditions.'''
    r1 = problem.restriction.restrict(witness.xi1)
    r2 = problem.restriction.restrict(witness.xi2)
    if not rank_at_most_one(r1, r2):
        raise ConsistencyError(f'Witness {witness} has independent restrictions {r1}, {r2}.')
    if problem.gauge.cocharacter_image(witness.mu) != witness.mu_ambient:
        raise ConsistencyError(f'Witness {witness} has an inconsistent ambient cocharacter.')
    if pair(witness.xi1, witness.mu_ambient) * pair(witness.xi2, witness.mu_ambient) >= 0:
        raise ConsistencyError(f'Witness {witness} does not separate the pair.')


class _PairScanner:
    '''Checks batches of support pairs; shared read-only between worker threads.'''

    def __init__(self, problem, oracle_box=None, logger=None):
        self.logger = logger or logging.getLogger(__name__)
        self.problem = problem
        self.support = problem.weights.support
        self.restricted = [problem.restriction.restrict(xi) for xi in self.support]
        self.on_gauge = [problem.gauge.restrict(xi) for xi in self.support]
        self.grid = None
        self.values = None
        rank = problem.gauge.source.rank
        if oracle_box:
            if rank <= config.ORACLE_MAX_RANK:
                self.grid, self.values = box_pairings(self.on_gauge, rank, oracle_box)
            else:
                self.logger.warning(f'Gauge rank {rank} is too large for the box search; '
                                    f'witnesses come from exact linear algebra.')

    def scan(self, pairs):
        found = []
        for i, j in pairs:
            r1, r2 = self.restricted[i], self.restricted[j]
            if not rank_at_most_one(r1, r2):
                continue
            mu = sign_feasible(self.on_gauge[i], self.on_gauge[j], self.problem.gauge.source)
            if mu is None:
                continue
            if self.values is not None:
                hits = np.flatnonzero(self.values[:, i] * self.values[:, j] < 0)
                if hits.size:
                    mu = tuple(int(x) for x in self.grid[hits[0]])
            ratio = proportional_over_Q(r1, r2)
            alpha = None if ratio.unconstrained else ratio.alpha
            witness = Witness(self.support[i], self.support[j], alpha,
                              mu, self.problem.gauge.cocharacter_image(mu), ratio.unconstrained)
            validate_witness(self.problem, witness)
            self.logger.debug(f'Witness {witness.xi1}, {witness.xi2} separated by {witness.mu}')
            found.append(witness)
        return found


def is_gluable(problem, workers=None, oracle_box=None, logger=None):
    '''
    Decide gluability by checking every unordered pair of distinct weights, and
    every weight paired with itself.

    Pairs are split across `workers` threads (default: config.worker_count());
    the result does not depend on the split. With `oracle_box`, each witness
    cocharacter is replaced by the smallest one in the box, if there is one.
    '''
    if workers is None:
        workers = config.worker_count()
    scanner = _PairScanner(problem, oracle_box, logger)
    pairs = list(itertools.combinations_with_replacement(range(len(scanner.support)), 2))
    if workers > 1 and len(pairs) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            batches = list(pool.map(scanner.scan, [pairs[k::workers] for k in range(workers)]))
    else:
        batches = [scanner.scan(pairs)]
    witnesses = sorted((w for batch in batches for w in batch), key=lambda w: (w.xi1, w.xi2))
    injectivity = [w for w in witnesses
                   if not any(problem.restriction.restrict(w.xi1))
                   and not any(problem.restriction.restrict(w.xi2))]
    scanner.logger.debug(f'is_gluable: {len(pairs)} pairs, {len(witnesses)} witnesses, '
                 f'{len(injectivity)} injectivity witnesses')
    return GluabilityReport(not witnesses, witnesses, injectivity, len(pairs))


def brute_force_gluable(problem, box=config.ORACLE_BOX):
    '''Exhaustive decider over pairs and the cocharacter box {-box..box}^r.
    Returns (verdict, violating pairs).'''
    support = problem.weights.support
    rank = problem.gauge.source.rank
    restricted = [problem.restriction.restrict(xi) for xi in support]
    _, values = box_pairings([problem.gauge.restrict(xi) for xi in support], rank, box)
    bad = []
    for i, j in itertools.combinations_with_replacement(range(len(support)), 2):
        if rank_at_most_one(restricted[i], restricted[j]) and np.any(values[:, i] * values[:, j] < 0):
            bad.append((support[i], support[j]))
    return not bad, bad


def _scalar_gauge(problem):
    return problem.gauge.direct_sum(TorusMap.zero(TorusData(rank=0), TorusData(rank=1)))


def gluable_after_scalar(problem, workers=None):
    '''
    Gluability after adding the scalar flavor torus on the ambient side, with
    the identity as restriction and the original gauge torus. This is always
    gluable; a negative verdict raises ConsistencyError.
    '''
    weights = add_scalar_flavor(problem.weights)
    extended = GluabilityProblem(weights, TorusMap.identity(problem.ambient.extended()),
                                 _scalar_gauge(problem))
    report = is_gluable(extended, workers)
    if not report.verdict:
        raise ConsistencyError(
            f'Adding the scalar flavor did not make the problem gluable: {report.witnesses[0]}')
    return report


def scalar_extended_problem(problem):
    '''The problem with a scalar flavor coordinate on which the restriction is the identity.'''
    weights = add_scalar_flavor(problem.weights)
    return GluabilityProblem(weights, scalar_extension(problem.restriction), _scalar_gauge(problem))


def gluable_with_scalar_extension(problem, workers=None):
    '''Gluability of the map extended by the identity on a scalar flavor coordinate on both sides.'''
    return is_gluable(scalar_extended_problem(problem), workers)


def check_shrinking_monotonicity(problem, inclusion, workers=None):
    '''True when (gluable with the full gauge torus) implies (gluable with the image of `inclusion`).'''
    if inclusion.target.rank != problem.gauge.source.rank:
        raise DimensionError(
            f'Inclusion targets rank {inclusion.target.rank}, but the gauge torus has rank {problem.gauge.source.rank}.')
    if not inclusion.is_injective():
        raise DimensionError('The smaller gauge torus must include injectively.')
    large = is_gluable(problem, workers)
    small = is_gluable(problem.with_gauge(inclusion), workers)
    holds = small.verdict or not large.verdict
    if not holds:
        logger.error(f'Shrinking the gauge torus broke gluability: {small.witnesses[0]}')
    return holds


def quotient_problem(problem):
    '''Quotient the ambient, restriction-source and gauge tori by their diagonal scalar cocharacters.'''
    target = quotient_split(problem.ambient, (1,) * problem.ambient.rank)
    source = quotient_split(problem.restriction.source, (1,) * problem.restriction.source.rank)
    gauge = quotient_split(problem.gauge.source, (1,) * problem.gauge.source.rank)
    weights = problem.weights.translate(target.character_forward, target.torus.rank)
    return GluabilityProblem(weights,
                             quotient_torus_map(problem.restriction, source, target),
                             quotient_torus_map(problem.gauge, gauge, target))


def quiver_map_problem(weights, torus_map, quotient_scalar=False):
    '''Problem for a torus map T(H) -> T(G) with N given by `weights` on T(G) and the full gauge torus.'''
    problem = GluabilityProblem(weights, torus_map)
    if quotient_scalar:
        problem = quotient_problem(problem)
    return problem


def dismemberment_problem(quiver, dims, gamma, quotient_scalar=False):
    '''Problem for the diagonal map GL(V_Q) -> GL(V_pieces) of a dismemberment gamma.'''
    if gamma.target != quiver:
        raise QuiverValidationError('The dismemberment does not map onto the given quiver.')
    dims = DimensionVector(quiver, dims)
    restriction = torus_map_of_dismemberment(gamma, dims)
    weights = weights_of_quiver_rep(gamma.source, dims.pullback(gamma))
    return quiver_map_problem(weights, restriction, quotient_scalar)


def gluable_for_quiver_dismemberment(quiver, dims, gamma, quotient_scalar=False,
                                     normalize_orientation=False, scalar_extension=False,
                                     workers=None):
    '''
    Decide gluability of the diagonal map of a dismemberment.

    Without `scalar_extension` the verdict must be positive when the quiver has
    no loops and all parallel edges share their orientation and lift to
    parallel edges. With `scalar_extension` it must be positive as soon as
    parallel edges lift to parallel edges and loops lift to loops. Violations
    raise ConsistencyError.
    '''
    if gamma.target != quiver:
        raise QuiverValidationError('The dismemberment does not map onto the given quiver.')
    if normalize_orientation:
        gamma, _ = normalize_morphism_orientation(gamma)
        quiver = gamma.target
    lifting = parallel_lifting_check(gamma)
    problem = dismemberment_problem(quiver, dims, gamma, quotient_scalar)
    if scalar_extension:
        report = gluable_with_scalar_extension(problem, workers)
        expected = lifting.satisfies_scalar_extension
    else:
        report = is_gluable(problem, workers)
        expected = lifting.satisfies_gluing_lemma
    if expected and not report.verdict:
        raise ConsistencyError(
            f'Dismemberment satisfies the gluing hypotheses but is not gluable: {report.witnesses[0]}')
    report.lifting = lifting
    return report
