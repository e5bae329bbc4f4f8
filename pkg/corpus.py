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

'''Seeded random corpora of quivers, dismemberments and torus problems.'''

import logging
from typing import NamedTuple

import numpy as np

from gaugerep import WeightMultiset
from gluability import GluabilityProblem
from lattice import TorusData, TorusMap
from quiver import (DimensionVector, Edge, QuiverMorphism, QuiverSpec, finest_dismemberment,
                    normalize_orientation)

logger = logging.getLogger(__name__)


class DismembermentCase(NamedTuple):
    quiver: QuiverSpec
    dims: DimensionVector
    pieces: QuiverSpec
    pieces_dims: DimensionVector
    gamma: QuiverMorphism


def _rng(seed=None, rng=None):
    return rng if rng is not None else np.random.default_rng(seed)


def random_quiver(rng, max_vertices=5, max_edges=6, max_dim=3, min_dim=0, loops=False):
    '''Random quiver "v1".."vN" with edges "e1".."eM" and random dimensions.'''
    n_vertices = int(rng.integers(1, max_vertices + 1))
    vertices = [f'v{k}' for k in range(1, n_vertices + 1)]
    n_edges = int(rng.integers(0, max_edges + 1)) if (n_vertices > 1 or loops) else 0
    edges = []
    for k in range(1, n_edges + 1):
        if loops:
            src, dst = rng.choice(n_vertices, size=2, replace=True)
        else:
            src, dst = rng.choice(n_vertices, size=2, replace=False)
        edges.append(Edge(f'e{k}', vertices[src], vertices[dst]))
    quiver = QuiverSpec(vertices, edges)
    dims = {v: int(rng.integers(min_dim, max_dim + 1)) for v in vertices}
    return quiver, DimensionVector(quiver, dims)


def lemma_corpus(count=200, seed=0, rng=None, **limits):
    '''Loop-free random quivers, orientation-normalized, with their finest dismemberments.'''
    rng = _rng(seed, rng)
    for _ in range(count):
        quiver, dims = random_quiver(rng, **limits)
        quiver, _ = normalize_orientation(quiver)
        dims = DimensionVector(quiver, dims)
        pieces, pieces_dims, gamma = finest_dismemberment(quiver, dims)
        yield DismembermentCase(quiver, dims, pieces, pieces_dims, gamma)


def split_parallel_case(rng, max_vertices=4, max_extra_edges=3, max_dim=3):
    '''
    Random quiver with parallel edges "p1", "p2": v1 -> v2, dismembered so
    that "p2" lies in its own component "v1.s" -> "v2.s".
    '''
    quiver, dims = random_quiver(rng, max_vertices=max(max_vertices, 2), max_edges=max_extra_edges,
                                 max_dim=max_dim)
    vertices = list(quiver.vertices)
    if len(vertices) < 2:
        vertices.append('v2')
    dims = dict(dims)
    for v in ('v1', 'v2'):
        dims[v] = max(1, dims.get(v, 0))
    edges = [Edge('p1', 'v1', 'v2'), Edge('p2', 'v1', 'v2')] + list(quiver.edges)
    quiver = QuiverSpec(vertices, edges)
    dims = DimensionVector(quiver, dims)
    fine, _, fine_gamma = finest_dismemberment(quiver, dims)
    # detach p2 from the component holding p1
    edge = fine.edge('p2')
    ends = {'v1': 'v1.s', 'v2': 'v2.s'}
    pieces_edges = [Edge('p2', ends[edge.src.split('.')[0]], ends[edge.dst.split('.')[0]])
                    if e.id == 'p2' else e for e in fine.edges]
    vertex_map = dict(fine_gamma.vertex_map)
    vertex_map.update({'v1.s': 'v1', 'v2.s': 'v2'})
    pieces = QuiverSpec(list(fine.vertices) + ['v1.s', 'v2.s'], pieces_edges)
    gamma = QuiverMorphism(pieces, quiver, vertex_map, fine_gamma.edge_map)
    return DismembermentCase(quiver, dims, pieces, dims.pullback(gamma), gamma)


def split_parallel_corpus(count=50, seed=1, rng=None, **limits):
    '''Dismemberments that split a parallel pair; none of them is gluable.'''
    rng = _rng(seed, rng)
    for _ in range(count):
        yield split_parallel_case(rng, **limits)


def _composition(rng, rank):
    '''Random block structure of a torus of the given rank.'''
    blocks = []
    left = rank
    while left:
        size = int(rng.integers(1, left + 1))
        blocks.append(size)
        left -= size
    return blocks


def random_problem(rng, max_rank=4, max_weights=8, entries=(-1, 0, 1)):
    '''Random problem with the identity gauge inclusion and small integer data.'''
    rank = int(rng.integers(1, max_rank + 1))
    ambient = TorusData(blocks=_composition(rng, rank))
    source_rank = int(rng.integers(0, rank + 1))
    matrix = rng.choice(entries, size=(rank, source_rank)).tolist()
    restriction = TorusMap(TorusData(rank=source_rank), ambient, matrix)
    n_weights = int(rng.integers(1, max_weights + 1))
    weights = [tuple(int(x) for x in row) for row in rng.choice(entries, size=(n_weights, rank))]
    return GluabilityProblem(WeightMultiset(rank, weights), restriction)


def random_problems(count=100, seed=2, rng=None, **limits):
    rng = _rng(seed, rng)
    for _ in range(count):
        yield random_problem(rng, **limits)


def random_sublattice(rng, rank, entries=(-2, -1, 0, 1, 2), max_tries=100):
    '''Injective torus map from a random lower or equal rank torus into Z^rank.'''
    sub_rank = int(rng.integers(1, rank + 1))
    for _ in range(max_tries):
        matrix = rng.choice(entries, size=(rank, sub_rank)).tolist()
        inclusion = TorusMap(TorusData(blocks=[1] * sub_rank), TorusData(rank=rank), matrix)
        if inclusion.is_injective():
            return inclusion
    logger.warning(f'No injective sublattice found in {max_tries} tries; using coordinate inclusion.')
    matrix = np.eye(rank, sub_rank, dtype=int).tolist()
    return TorusMap(TorusData(blocks=[1] * sub_rank), TorusData(rank=rank), matrix)
