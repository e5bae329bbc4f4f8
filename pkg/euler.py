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
Euler-class factors per coweight and their exactness verdicts.

For a coweight lam, the left product collects the weights xi with
<xi, lam> < 0 and the right product those with <xi, lam> > 0, each with
multiplicity |<xi, lam>| times the weight multiplicity. A homological factor
stands for the linear form <xi, ->; a K-theoretic factor stands for the
binomial 1 - xi^-1.

Both kinds share the common-factor rule. Two linear forms share a factor
iff they are proportional. Two binomials 1 - a^-1 and 1 - b^-1 share an
irreducible factor iff a and b are powers of one primitive character c:
each binomial is then divisible by 1 - c up to a unit, and otherwise their
cyclotomic factors live in different variables. In both cases the test is
that the restricted characters are nonzero and proportional.
'''

import enum
import itertools
import logging
import math
from collections import Counter
from typing import NamedTuple, Optional, Tuple

import config
from errors import ConsistencyError, InputError
from lattice import (Vector, as_vector, dominantizing_permutation, pair, permute,
                     rank_at_most_one)

logger = logging.getLogger(__name__)


@enum.unique
class FactorKind(enum.Enum):
    '''Kind of Euler-class factor.'''
    HOMOLOGICAL = 'homological'
    K_THEORETIC = 'k_theoretic'


class FactorProduct:
    '''Product of factors, one per character, with multiplicities.'''

    def __init__(self, kind, rank, factors=None, vanishes=False):
        self.kind = kind
        self.rank = rank
        self.factors = {}
        for xi, mult in sorted((factors or {}).items()):
            if mult < 1:
                raise InputError(f'Factor multiplicity must be positive, got {mult}.')
            self.factors[as_vector(xi, rank, 'factor')] = mult
        # a trivial character gives the zero factor in both kinds
        self.vanishes = vanishes or any(not any(xi) for xi in self.factors)

    @property
    def degree(self):
        return sum(self.factors.values())

    @property
    def support(self):
        return tuple(self.factors)

    @property
    def is_zero(self):
        return self.vanishes

    def items(self):
        return self.factors.items()

    def __eq__(self, other):
        return (isinstance(other, FactorProduct) and self.kind == other.kind
                and self.rank == other.rank and self.factors == other.factors
                and self.vanishes == other.vanishes)

    def to_dict(self):
        return {
            'kind': self.kind.value,
            'factors': [[list(xi), m] for xi, m in self.items()],
            'vanishes': self.vanishes,
        }

    def __repr__(self):
        return f'FactorProduct({self.kind.value}, degree {self.degree}, vanishes={self.vanishes})'


def euler_factors(weights, lam, kind=FactorKind.HOMOLOGICAL):
    '''The left and right factor products of `weights` at the coweight lam.'''
    lam = as_vector(lam, weights.rank, 'coweight')
    left = Counter()
    right = Counter()
    for xi, mult in weights.items():
        value = pair(xi, lam)
        if value < 0:
            left[xi] += -value * mult
        elif value > 0:
            right[xi] += value * mult
    return FactorProduct(kind, weights.rank, left), FactorProduct(kind, weights.rank, right)


def k_theoretic_factors(weights, lam):
    return euler_factors(weights, lam, FactorKind.K_THEORETIC)


def _restrict_with(phi, restrict, rank):
    counts = Counter()
    for xi, mult in phi.items():
        counts[restrict(xi)] += mult
    return FactorProduct(phi.kind, rank, counts, vanishes=phi.vanishes)


def restrict_factors(phi, restriction):
    '''Restrict every factor along a torus map; factors restricting to 0 make the product vanish.'''
    if phi.rank != restriction.target.rank:
        raise InputError(f'Cannot restrict rank-{phi.rank} factors along {restriction!r}.')
    return _restrict_with(phi, restriction.restrict, restriction.source.rank)


class LambdaVerdict(NamedTuple):
    '''Exactness verdict at one coweight.'''
    lam: Vector
    left_nonzero: bool
    right_nonzero: bool
    # (left weight, right weight) with nonzero proportional restrictions
    common_factor: Optional[Tuple[Vector, Vector]]
    exact: bool

    def to_dict(self):
        return {
            'lam': list(self.lam),
            'left_nonzero': self.left_nonzero,
            'right_nonzero': self.right_nonzero,
            'common_factor': None if self.common_factor is None else [list(x) for x in self.common_factor],
            'exact': self.exact,
        }


def lambda_verdict(weights, lam, restriction, kind=FactorKind.HOMOLOGICAL, restricted=None):
    '''
    Restricted left and right products at lam are nonzero and coprime.
    `restricted` may hold precomputed restrictions of the weights.
    '''
    if restricted is None:
        restricted = {}

    def restrict(xi):
        if xi not in restricted:
            restricted[xi] = restriction.restrict(xi)
        return restricted[xi]

    left, right = euler_factors(weights, lam, kind)
    rank = restriction.source.rank
    left_nonzero = not _restrict_with(left, restrict, rank).vanishes
    right_nonzero = not _restrict_with(right, restrict, rank).vanishes
    common = None
    for x1, x2 in itertools.product(left.support, right.support):
        r1, r2 = restrict(x1), restrict(x2)
        if any(r1) and any(r2) and rank_at_most_one(r1, r2):
            common = (x1, x2)
            break
    exact = left_nonzero and right_nonzero and common is None
    return LambdaVerdict(tuple(lam), left_nonzero, right_nonzero, common, exact)


def _nonincreasing(size, bound):
    cur = [0] * size

    def rec(i, prev):
        if i == size:
            yield tuple(cur)
            return
        for v in range(-bound, prev + 1):
            cur[i] = v
            yield from rec(i + 1, v)

    yield from rec(0, bound)


def enumerate_dominant(torus, bound):
    '''Blockwise weakly decreasing coweights with entries in [-bound, bound], in lexicographic order.'''
    if bound < 0:
        raise InputError(f'Enumeration bound must be nonnegative, got {bound}.')
    per_block = [list(_nonincreasing(size, bound)) for size in torus.blocks]
    for combo in itertools.product(*per_block):
        yield sum(combo, ())


def count_dominant(torus, bound):
    '''Number of coweights enumerate_dominant yields.'''
    return math.prod(math.comb(size + 2 * bound, size) for size in torus.blocks)


class Discrepancy(NamedTuple):
    kind: FactorKind
    verdict: LambdaVerdict
    reason: str

    def to_dict(self):
        return {'kind': self.kind.value, 'verdict': self.verdict.to_dict(), 'reason': self.reason}


class CrossCheckReport:
    '''Outcome of cross_check. Consistency is only ever claimed up to the bound.'''

    def __init__(self, gluable, bound, kinds, lambdas_checked, discrepancies, verdicts=None):
        self.gluable = gluable
        self.bound = bound
        self.kinds = tuple(kinds)
        self.lambdas_checked = lambdas_checked
        self.discrepancies = tuple(discrepancies)
        self.verdicts = tuple(verdicts or ())

    @property
    def consistent(self):
        return not self.discrepancies

    def summary(self):
        if self.consistent:
            return f'consistent up to bound {self.bound}'
        return f'{len(self.discrepancies)} discrepancies up to bound {self.bound}'

    def require_consistent(self):
        if not self.consistent:
            first = self.discrepancies[0]
            raise ConsistencyError(f'Euler cross-check failed ({first.kind.value}): {first.reason} at {first.verdict.lam}')
        return self

    def to_dict(self):
        return {
            'gluable': self.gluable,
            'bound': self.bound,
            'kinds': [k.value for k in self.kinds],
            'lambdas_checked': self.lambdas_checked,
            'consistent': self.consistent,
            'summary': self.summary(),
            'discrepancies': [d.to_dict() for d in self.discrepancies],
        }


def _witness_view(problem, witness):
    '''Weights, restriction and coweight at the dominant translate of a witness.'''
    perm = dominantizing_permutation(witness.mu, problem.gauge.source)
    embedding = problem.gauge.coordinate_embedding()
    if embedding is None:
        logger.warning('Gauge inclusion is not a coordinate embedding; checking the witness undominantized.')
        return problem.weights, problem.restriction, witness.mu_ambient
    ambient_perm = list(range(problem.ambient.rank))
    for k, src in enumerate(perm):
        ambient_perm[embedding[k]] = embedding[src]
    lam = problem.gauge.cocharacter_image(permute(witness.mu, perm))
    return problem.weights.permute(ambient_perm), problem.restriction.permute_target(ambient_perm), lam


def cross_check(problem, bound=config.DEFAULT_BOUND, kinds=tuple(FactorKind), report=None,
                keep_verdicts=False, workers=None):
    '''
    Compare the gluability verdict with exactness of the Euler-class factors.

    Not gluable: every witness, moved to its dominant Weyl translate, must give
    a non-exact coweight. Gluable: every dominant gauge coweight up to `bound`
    must be exact.
    '''
    # imported here so gluability stays free of euler
    from gluability import is_gluable
    if report is None:
        report = is_gluable(problem, workers)
    checked = 0
    discrepancies = []
    verdicts = []
    restricted = {}
    for kind in kinds:
        if not report.verdict:
            for witness in report.witnesses:
                weights, restriction, lam = _witness_view(problem, witness)
                verdict = lambda_verdict(weights, lam, restriction, kind)
                checked += 1
                if keep_verdicts:
                    verdicts.append((kind, verdict))
                if verdict.exact:
                    discrepancies.append(Discrepancy(kind, verdict, 'witness coweight is exact'))
        else:
            for lam in enumerate_dominant(problem.gauge.source, bound):
                verdict = lambda_verdict(problem.weights, problem.gauge.cocharacter_image(lam),
                                         problem.restriction, kind, restricted)
                checked += 1
                if keep_verdicts:
                    verdicts.append((kind, verdict))
                if not verdict.exact:
                    discrepancies.append(Discrepancy(kind, verdict, 'gluable problem has a non-exact coweight'))
    result = CrossCheckReport(report.verdict, bound, kinds, checked, discrepancies, verdicts)
    logger.debug(f'cross_check: {checked} coweights, {result.summary()}')
    return result
