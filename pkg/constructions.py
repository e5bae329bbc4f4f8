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
Named quivers: the chain A_n, the disjoint legs A_m of a partition m, the
star quiver Q_m, comet-shaped quivers and the partition gluing map
GL(Q_m) -> GL(A_m) x GL(A_n).

Orientation: chains and legs point toward the vertex of higher dimension.
The edges joining the chain of Q_m to its legs point from c(n-1) into each
leg head, comet legs point into the centre.
'''

import logging

from errors import ConsistencyError, InputError, QuiverValidationError, UnsupportedQuiverError
from gaugerep import torus_map_of_explosion, torus_map_of_morphism, weights_of_quiver_rep
from quiver import DimensionVector, Edge, QuiverMorphism, QuiverSpec, explode

logger = logging.getLogger(__name__)


def _positive_parts(parts, what):
    parts = tuple(parts)
    if not parts:
        raise QuiverValidationError(f'A {what} needs at least one part.')
    for m in parts:
        if isinstance(m, bool) or not isinstance(m, int) or m < 1:
            raise QuiverValidationError(f'Parts of a {what} must be positive integers, got {parts}.')
    return parts


class Partition:
    '''Ordered partition n = m_1 + ... + m_l with positive parts.'''

    def __init__(self, parts):
        self.parts = _positive_parts(parts, 'partition')

    @classmethod
    def parse(cls, text):
        '''Parse "2,2" style text.'''
        try:
            parts = [int(p) for p in text.split(',')]
        except ValueError:
            raise InputError(f'Cannot parse partition "{text}"; expected comma-separated integers.') from None
        return cls(parts)

    @property
    def n(self):
        return sum(self.parts)

    def __len__(self):
        return len(self.parts)

    def __iter__(self):
        return iter(self.parts)

    def __eq__(self, other):
        return isinstance(other, Partition) and self.parts == other.parts

    def __hash__(self):
        return hash(self.parts)

    def __repr__(self):
        return f'Partition({",".join(map(str, self.parts))})'


class PunctureData:
    '''Weakly decreasing partition h_1 >= ... >= h_k labelling a puncture.'''

    def __init__(self, parts):
        parts = _positive_parts(parts, 'puncture partition')
        if any(a < b for a, b in zip(parts, parts[1:])):
            raise QuiverValidationError(f'Puncture partition {parts} is not weakly decreasing.')
        self.parts = parts

    @classmethod
    def parse(cls, text):
        try:
            return cls([int(p) for p in text.split(',')])
        except ValueError:
            raise InputError(f'Cannot parse puncture "{text}"; expected comma-separated integers.') from None

    @property
    def n(self):
        return sum(self.parts)

    def leg_dims(self):
        '''n_m = h_(m+1) + ... + h_k for m = 1, 2, ... while positive.'''
        return tuple(sum(self.parts[m:]) for m in range(1, len(self.parts)))

    def __eq__(self, other):
        return isinstance(other, PunctureData) and self.parts == other.parts

    def __repr__(self):
        return f'PunctureData({",".join(map(str, self.parts))})'


def _leg(k, size):
    '''Leg k with vertices L{k}v1 .. L{k}v{size}, dims size .. 1.'''
    vertices = [f'L{k}v{m}' for m in range(1, size + 1)]
    dims = {f'L{k}v{m}': size - m + 1 for m in range(1, size + 1)}
    edges = [Edge(f'L{k}v{m + 1}>L{k}v{m}', f'L{k}v{m + 1}', f'L{k}v{m}') for m in range(1, size)]
    return vertices, dims, edges


def build_Q_partition(partition):
    '''Star quiver Q_m: chain c1..c(n-1) with one leg per part joined at c(n-1).'''
    n = partition.n
    if n < 2:
        raise UnsupportedQuiverError(f'The star quiver needs n >= 2, got {partition!r}.')
    vertices = [f'c{d}' for d in range(1, n)]
    dims = {f'c{d}': d for d in range(1, n)}
    edges = [Edge(f'c{d}>c{d + 1}', f'c{d}', f'c{d + 1}') for d in range(1, n - 1)]
    for k, size in enumerate(partition, start=1):
        leg_vertices, leg_dims, leg_edges = _leg(k, size)
        vertices += leg_vertices
        dims.update(leg_dims)
        edges += leg_edges
        edges.append(Edge(f'c{n - 1}>L{k}v1', f'c{n - 1}', f'L{k}v1'))
    quiver = QuiverSpec(vertices, edges)
    return quiver, DimensionVector(quiver, dims)


def build_A_legs(partition):
    '''Disjoint legs, leg k with dims m_k, m_k - 1, ..., 1.'''
    vertices, dims, edges = [], {}, []
    for k, size in enumerate(partition, start=1):
        leg_vertices, leg_dims, leg_edges = _leg(k, size)
        vertices += leg_vertices
        dims.update(leg_dims)
        edges += leg_edges
    quiver = QuiverSpec(vertices, edges)
    return quiver, DimensionVector(quiver, dims)


def build_A_chain(n):
    '''Chain A1 -> ... -> An with dims 1..n.'''
    if isinstance(n, bool) or not isinstance(n, int) or n < 1:
        raise QuiverValidationError(f'Chain length must be a positive integer, got {n!r}.')
    quiver = QuiverSpec([f'A{d}' for d in range(1, n + 1)],
                        [Edge(f'A{d}>A{d + 1}', f'A{d}', f'A{d + 1}') for d in range(1, n)])
    return quiver, DimensionVector(quiver, {f'A{d}': d for d in range(1, n + 1)})


def explode_A_chain(partition):
    '''A_n with its dimension-n vertex exploded into the parts of the partition.'''
    quiver, dims = build_A_chain(partition.n)
    return explode(quiver, dims, {f'A{partition.n}': list(partition)})


def build_comet(genus, dim, punctures=()):
    '''
    Central vertex "o" of dimension `dim` with `genus` loops "o~1", "o~2", ...
    and one leg P{p}v1 -> ... per puncture, dims n_1 > n_2 > ... > 0.
    '''
    for value, what in ((genus, 'genus'), (dim, 'central dimension')):
        if isinstance(value, bool) or not isinstance(value, int) or value < 0:
            raise QuiverValidationError(f'The {what} must be a nonnegative integer, got {value!r}.')
    vertices = ['o']
    dims = {'o': dim}
    edges = [Edge(f'o~{g}', 'o', 'o') for g in range(1, genus + 1)]
    for p, puncture in enumerate(punctures, start=1):
        if puncture.n != dim:
            raise QuiverValidationError(
                f'Puncture {p} partition {puncture.parts} does not add up to {dim}.')
        leg = puncture.leg_dims()
        for m, size in enumerate(leg, start=1):
            vertices.append(f'P{p}v{m}')
            dims[f'P{p}v{m}'] = size
            head = 'o' if m == 1 else f'P{p}v{m - 1}'
            edges.append(Edge(f'P{p}v{m}>{head}', f'P{p}v{m}', head))
    quiver = QuiverSpec(vertices, edges)
    return quiver, DimensionVector(quiver, dims)


def leg_is_concave(leg, dim):
    '''2 n_m <= n_(m-1) + n_(m+1) along a leg, with n_0 = dim and a trailing 0.'''
    values = [dim] + list(leg) + [0]
    return all(2 * values[m] <= values[m - 1] + values[m + 1] for m in range(1, len(values) - 1))


def _leg_index(edge):
    '''Puncture number of a leg edge "P{p}v{m}>...".'''
    return int(edge.id[1:edge.id.index('v')])


def comet_dismemberment(genus, dim, punctures=(), detach=None):
    '''
    Dismember a comet at its centre.

    By default the loops stay at "o.0" and every nonempty leg p gets its own
    copy "o.p" of the centre. With `detach` only leg `detach` is split off;
    the rest stays attached to "o". Returns (comet, comet dims, pieces,
    pieces dims, morphism).
    '''
    comet, dims = build_comet(genus, dim, punctures)
    legs = [p for p, h in enumerate(punctures, start=1) if h.leg_dims()]
    if detach is not None and detach not in legs:
        raise QuiverValidationError(f'Puncture {detach} has no leg to detach.')
    split = legs if detach is None else [detach]
    rest = 'o.0' if detach is None else 'o'
    edges = []
    for e in comet.edges:
        copy = rest if e.is_loop or _leg_index(e) not in split else f'o.{_leg_index(e)}'
        edges.append(Edge(e.id, copy if e.src == 'o' else e.src, copy if e.dst == 'o' else e.dst))
    used = {v for e in edges for v in (e.src, e.dst)}
    # a comet without edges keeps its isolated centre
    centres = [c for c in [rest] + [f'o.{p}' for p in split] if c in used] or ['o']
    vertices = centres + [v for v in comet.vertices if v != 'o']
    vertex_map = {v: 'o' if v in centres else v for v in vertices}
    pieces = QuiverSpec(vertices, edges)
    gamma = QuiverMorphism(pieces, comet, vertex_map, {e: e for e in comet.edge_ids})
    logger.debug(f'comet_dismemberment: genus {genus}, {len(split)} legs split off')
    return comet, dims, pieces, dims.pullback(gamma), gamma


class PartitionGluing:
    '''
    Q_m as a gluing of A_m and the explosion of A_n along the partition.

    `gamma` maps the exploded quiver A_m + A_n* onto Q_m, identifying the
    exploded vertex t with the head of leg t and A_d with c_d. `torus_map`
    is T(Q_m) -> T(A_m) x T(A_n): the diagonal map of gamma followed by the
    Levi inclusion of the explosion.
    '''

    def __init__(self, partition, quiver, dims, disjoint, disjoint_dims, explosion, gamma, torus_map):
        self.partition = partition
        self.quiver = quiver
        self.dims = dims
        self.disjoint = disjoint
        self.disjoint_dims = disjoint_dims
        self.explosion = explosion
        self.gamma = gamma
        self.torus_map = torus_map

    @property
    def weights(self):
        '''Weights of the representation of A_m + A_n.'''
        return weights_of_quiver_rep(self.disjoint, self.disjoint_dims)

    def problem(self, quotient_scalar=True):
        # imported here so constructions only needs gluability for this call
        from gluability import quiver_map_problem
        return quiver_map_problem(self.weights, self.torus_map, quotient_scalar)

    def __repr__(self):
        return f'PartitionGluing({self.partition!r})'


def partition_gluing_map(partition):
    '''Build the gluing of Q_m from A_m and the exploded A_n.'''
    n = partition.n
    quiver, dims = build_Q_partition(partition)
    legs, leg_dims = build_A_legs(partition)
    chain, chain_dims = build_A_chain(n)
    disjoint = QuiverSpec.disjoint_union(legs, chain)
    disjoint_dims = DimensionVector(disjoint, {**leg_dims, **chain_dims})
    explosion = explode(disjoint, disjoint_dims, {f'A{n}': list(partition)})
    exploded = explosion.quiver
    heads = {name: f'L{k}v1' for k, name in enumerate(explosion.preimages[f'A{n}'], start=1)}

    vertex_map = {}
    for v in exploded.vertices:
        if v in heads:
            vertex_map[v] = heads[v]
        elif v.startswith('A'):
            vertex_map[v] = f'c{v[1:]}'
        else:
            vertex_map[v] = v
    edge_map = {}
    for e in exploded.edges:
        if e.dst in heads:
            edge_map[e.id] = f'c{n - 1}>{heads[e.dst]}'
        elif e.src.startswith('A'):
            edge_map[e.id] = f'c{e.src[1:]}>c{e.dst[1:]}'
        else:
            edge_map[e.id] = e.id
    gamma = QuiverMorphism(exploded, quiver, vertex_map, edge_map)
    if dict(dims.pullback(gamma)) != dict(explosion.dims):
        raise ConsistencyError(f'Gluing of {partition!r} does not preserve dimensions.')
    torus_map = torus_map_of_explosion(explosion).compose(torus_map_of_morphism(gamma, dims))
    logger.debug(f'partition_gluing_map: {partition!r}, {torus_map!r}')
    return PartitionGluing(partition, quiver, dims, disjoint, disjoint_dims, explosion, gamma, torus_map)
