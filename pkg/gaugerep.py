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
Gauge tori of quivers and the torus weights of their representations.

The gauge group of a quiver with dimension vector n is the product of
GL(n_i) over the vertices; its maximal torus has one coordinate (i, a) for
every vertex i and 1 <= a <= n_i, grouped into one Weyl block per vertex.
'''

import logging
from collections import Counter
from collections.abc import Mapping

import numpy as np

from errors import InputError, QuiverValidationError
from lattice import TorusData, TorusMap, as_vector, permute, quotient_split
from quiver import DimensionVector, is_dismemberment

logger = logging.getLogger(__name__)


class GaugeTorus:
    '''Maximal torus of the gauge group of a quiver, coordinates ordered by vertex.'''

    def __init__(self, quiver, dims):
        self.quiver = quiver
        self.dims = DimensionVector(quiver, dims)
        self.offsets = {}
        start = 0
        for v in quiver.vertices:
            self.offsets[v] = start
            start += self.dims[v]
        self.torus = TorusData(blocks=[self.dims[v] for v in quiver.vertices])

    @property
    def rank(self):
        return self.torus.rank

    def index(self, vertex, a):
        '''Zero-based position of coordinate (vertex, a), with a counted from 1.'''
        if not 1 <= a <= self.dims[vertex]:
            raise QuiverValidationError(
                f'Coordinate {a} is out of range for vertex "{vertex}" of dimension {self.dims[vertex]}.')
        return self.offsets[vertex] + a - 1

    @property
    def coordinates(self):
        return [(v, a) for v in self.quiver.vertices for a in range(1, self.dims[v] + 1)]

    def scalar_cocharacter(self):
        return (1,) * self.rank

    def __repr__(self):
        return f'GaugeTorus({self.torus!r})'


class WeightMultiset:
    '''
    Torus weights with multiplicities, stored deduplicated.

    `weights` is either an iterable of vectors (each counted once) or a
    mapping vector -> multiplicity. With `scalar_flavor` the last coordinate
    is the scalar flavor coordinate.
    '''

    def __init__(self, rank, weights=(), scalar_flavor=False):
        counts = Counter()
        items = weights.items() if isinstance(weights, Mapping) else ((w, 1) for w in weights)
        for xi, mult in items:
            xi = as_vector(xi, rank, 'weight')
            if isinstance(mult, bool) or not isinstance(mult, int) or mult < 1:
                raise InputError(f'Multiplicity of weight {xi} must be a positive integer, got {mult!r}.')
            counts[xi] += mult
        self.rank = rank
        self.scalar_flavor = scalar_flavor
        self._counts = dict(sorted(counts.items()))

    @property
    def support(self):
        return tuple(self._counts)

    def items(self):
        return self._counts.items()

    def multiplicity(self, xi):
        return self._counts.get(tuple(xi), 0)

    @property
    def total(self):
        return sum(self._counts.values())

    def __len__(self):
        return len(self._counts)

    def __iter__(self):
        return iter(self._counts)

    def __eq__(self, other):
        return (isinstance(other, WeightMultiset) and self.rank == other.rank
                and self.scalar_flavor == other.scalar_flavor and self._counts == other._counts)

    def restrict(self, torus_map):
        '''Restrict every weight along torus_map, merging equal restrictions.'''
        if torus_map.target.rank != self.rank:
            raise InputError(f'Cannot restrict rank-{self.rank} weights along {torus_map!r}.')
        counts = Counter()
        for xi, mult in self.items():
            counts[torus_map.restrict(xi)] += mult
        return WeightMultiset(torus_map.source.rank, counts)

    def translate(self, function, rank):
        '''Apply a coordinate change to every weight.'''
        counts = Counter()
        for xi, mult in self.items():
            counts[function(xi)] += mult
        return WeightMultiset(rank, counts, self.scalar_flavor)

    def permute(self, perm):
        return self.translate(lambda xi: permute(xi, perm), self.rank)

    def negate(self):
        return self.translate(lambda xi: tuple(-x for x in xi), self.rank)

    def to_list(self):
        return [[list(xi), mult] for xi, mult in self.items()]

    def __repr__(self):
        flavor = ', scalar_flavor' if self.scalar_flavor else ''
        return f'WeightMultiset(rank={self.rank}, {len(self)} distinct, total {self.total}{flavor})'


def weights_of_quiver_rep(quiver, dims):
    '''Weights of the sum over edges i -> j of Hom(C^n_i, C^n_j): -e(i, a) + e(j, b).'''
    gauge = GaugeTorus(quiver, dims)
    counts = Counter()
    for e in quiver.edges:
        for a in range(1, gauge.dims[e.src] + 1):
            for b in range(1, gauge.dims[e.dst] + 1):
                vec = [0] * gauge.rank
                vec[gauge.index(e.src, a)] -= 1
                vec[gauge.index(e.dst, b)] += 1
                counts[tuple(vec)] += 1
    return WeightMultiset(gauge.rank, counts)


def add_scalar_flavor(weights):
    '''Append the scalar flavor coordinate, on which every weight is 1.'''
    if weights.scalar_flavor:
        raise QuiverValidationError('The weights already carry a scalar flavor coordinate.')
    return WeightMultiset(weights.rank + 1, {xi + (1,): m for xi, m in weights.items()},
                          scalar_flavor=True)


def torus_map_of_morphism(gamma, dims):
    '''
    Torus map T(target) -> T(source) of a quiver morphism: coordinate (i, a)
    goes to the sum of (j, a) over the vertices j with gamma(j) = i.
    '''
    dims = DimensionVector(gamma.target, dims)
    big = GaugeTorus(gamma.target, dims)
    small = GaugeTorus(gamma.source, dims.pullback(gamma))
    matrix = np.zeros((small.rank, big.rank), dtype=int)
    for j in gamma.source.vertices:
        i = gamma.vertex_map[j]
        for a in range(1, small.dims[j] + 1):
            matrix[small.index(j, a), big.index(i, a)] = 1
    return TorusMap(big.torus, small.torus, matrix.tolist())


def torus_map_of_dismemberment(gamma, dims, pieces_dims=None):
    '''Diagonal torus map of a dismemberment gamma into the quiver with dimensions `dims`.'''
    if not is_dismemberment(gamma):
        raise QuiverValidationError('Not a dismemberment.')
    dims = DimensionVector(gamma.target, dims)
    if pieces_dims is not None and dict(DimensionVector(gamma.source, pieces_dims)) != dict(dims.pullback(gamma)):
        raise QuiverValidationError('Dimensions of the pieces are not pulled back from the quiver.')
    return torus_map_of_morphism(gamma, dims)


def torus_map_of_explosion(explosion):
    '''Levi inclusion T(exploded) -> T(original) following the block assignment.'''
    exploded = GaugeTorus(explosion.quiver, explosion.dims)
    original = GaugeTorus(explosion.source, explosion.source_dims)
    matrix = np.zeros((original.rank, exploded.rank), dtype=int)
    for name, block in explosion.blocks.items():
        for a in range(1, block.size + 1):
            matrix[original.index(block.original, block.offset + a), exploded.index(name, a)] = 1
    return TorusMap(exploded.torus, original.torus, matrix.tolist())


def quotient_by_scalar(torus):
    '''Split off the diagonal scalar cocharacter (1, ..., 1).'''
    if isinstance(torus, GaugeTorus):
        torus = torus.torus
    return quotient_split(torus, (1,) * torus.rank)


def scalar_extension(torus_map):
    '''torus_map times the identity on one extra scalar coordinate.'''
    return torus_map.direct_sum(TorusMap.identity(TorusData(rank=1)))
