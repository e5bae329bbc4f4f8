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

'''Quivers, dimension vectors, quiver morphisms, dismemberments and explosions.'''

import itertools
import logging
from collections.abc import Mapping
from typing import NamedTuple, Tuple

import networkx as nx

from errors import QuiverValidationError, UnsupportedQuiverError

logger = logging.getLogger(__name__)


class Edge(NamedTuple):
    '''A directed edge src -> dst.'''
    id: str
    src: str
    dst: str

    @property
    def is_loop(self):
        return self.src == self.dst

    def endpoints(self):
        return frozenset((self.src, self.dst))

    def flipped(self):
        return Edge(self.id, self.dst, self.src)


def _check_id(value, what):
    if not isinstance(value, str) or not value:
        raise QuiverValidationError(f'{what} ids must be nonempty strings, got {value!r}.')
    return value


class QuiverSpec:
    '''A quiver with string vertex and edge ids. Loops and parallel edges are allowed.'''

    def __init__(self, vertices, edges):
        self.vertices = tuple(_check_id(v, 'Vertex') for v in vertices)
        if len(set(self.vertices)) != len(self.vertices):
            raise QuiverValidationError(f'Duplicate vertex ids in {self.vertices}.')
        declared = set(self.vertices)
        checked = []
        for edge in edges:
            edge = Edge(*edge)
            _check_id(edge.id, 'Edge')
            for end in (edge.src, edge.dst):
                if end not in declared:
                    raise QuiverValidationError(
                        f'Edge "{edge.id}" refers to undeclared vertex {end!r}.')
            checked.append(edge)
        self.edges = tuple(checked)
        self._by_id = {e.id: e for e in self.edges}
        if len(self._by_id) != len(self.edges):
            raise QuiverValidationError('Duplicate edge ids.')

    @property
    def edge_ids(self):
        return tuple(e.id for e in self.edges)

    def edge(self, edge_id):
        try:
            return self._by_id[edge_id]
        except KeyError:
            raise QuiverValidationError(f'Unknown edge id {edge_id!r}.') from None

    def edges_at(self, vertex):
        return [e for e in self.edges if vertex in (e.src, e.dst)]

    def is_isolated(self, vertex):
        return not self.edges_at(vertex)

    def has_loops(self):
        return any(e.is_loop for e in self.edges)

    def parallel_classes(self):
        '''Edges grouped by unordered endpoints, in order of first appearance.
        Loops at one vertex form one class.'''
        classes = {}
        for e in self.edges:
            classes.setdefault(e.endpoints(), []).append(e)
        return classes

    def to_graph(self):
        '''The quiver as a networkx MultiDiGraph keyed by edge id.'''
        graph = nx.MultiDiGraph()
        graph.add_nodes_from(self.vertices)
        for e in self.edges:
            graph.add_edge(e.src, e.dst, key=e.id)
        return graph

    def is_connected(self):
        if not self.vertices:
            return False
        return nx.is_weakly_connected(self.to_graph())

    def is_tree(self):
        '''Underlying graph is a tree; loops and parallel edges are cycles.'''
        if not self.vertices:
            return False
        return nx.is_tree(self.to_graph().to_undirected())

    def flip_edges(self, edge_ids):
        '''Copy of this quiver with the given edges reversed.'''
        edge_ids = set(edge_ids)
        unknown = edge_ids - set(self._by_id)
        if unknown:
            raise QuiverValidationError(f'Unknown edge ids {sorted(unknown)}.')
        return QuiverSpec(self.vertices,
                          [e.flipped() if e.id in edge_ids else e for e in self.edges])

    @classmethod
    def disjoint_union(cls, *quivers):
        vertices = [v for q in quivers for v in q.vertices]
        edges = [e for q in quivers for e in q.edges]
        return cls(vertices, edges)

    def __eq__(self, other):
        return (isinstance(other, QuiverSpec) and self.vertices == other.vertices
                and self.edges == other.edges)

    def __hash__(self):
        return hash((self.vertices, self.edges))

    def __repr__(self):
        return f'QuiverSpec({len(self.vertices)} vertices, {len(self.edges)} edges)'


class DimensionVector(Mapping):
    '''Nonnegative integer dimension at every vertex of a quiver.'''

    def __init__(self, quiver, dims):
        dims = dict(dims)
        missing = [v for v in quiver.vertices if v not in dims]
        extra = [v for v in dims if v not in set(quiver.vertices)]
        if missing or extra:
            raise QuiverValidationError(
                f'Dimension vector does not match the vertices: missing {missing}, extra {extra}.')
        checked = {}
        for v in quiver.vertices:
            n = dims[v]
            if isinstance(n, bool) or not isinstance(n, int) or n < 0:
                raise QuiverValidationError(
                    f'Dimension at vertex "{v}" must be a nonnegative integer, got {n!r}.')
            checked[v] = n
        self.quiver = quiver
        self._dims = checked

    def __getitem__(self, vertex):
        return self._dims[vertex]

    def __iter__(self):
        return iter(self._dims)

    def __len__(self):
        return len(self._dims)

    @property
    def total(self):
        return sum(self._dims.values())

    def pullback(self, morphism):
        '''The dimension vector n o vertex_map on the source of `morphism`.'''
        return DimensionVector(morphism.source,
                               {v: self[morphism.vertex_map[v]] for v in morphism.source.vertices})

    def __repr__(self):
        return f'DimensionVector({self._dims})'


class QuiverMorphism:
    '''Vertex and edge maps source -> target compatible with sources and targets of edges.'''

    def __init__(self, source, target, vertex_map, edge_map):
        self.source = source
        self.target = target
        self.vertex_map = dict(vertex_map)
        self.edge_map = dict(edge_map)
        if set(self.vertex_map) != set(source.vertices):
            raise QuiverValidationError('The vertex map must be defined on exactly the source vertices.')
        if set(self.edge_map) != set(source.edge_ids):
            raise QuiverValidationError('The edge map must be defined on exactly the source edges.')
        targets = set(target.vertices)
        for v, image in self.vertex_map.items():
            if image not in targets:
                raise QuiverValidationError(f'Vertex "{v}" maps to unknown vertex {image!r}.')
        for e in source.edges:
            image = target.edge(self.edge_map[e.id])
            if self.vertex_map[e.src] != image.src or self.vertex_map[e.dst] != image.dst:
                raise QuiverValidationError(
                    f'Edge "{e.id}" maps to "{image.id}" but their endpoints do not match.')

    @classmethod
    def identity(cls, quiver):
        return cls(quiver, quiver, {v: v for v in quiver.vertices}, {e: e for e in quiver.edge_ids})

    def vertex_preimages(self, vertex):
        return [v for v in self.source.vertices if self.vertex_map[v] == vertex]

    def edge_preimages(self, edge_id):
        return [e for e in self.source.edge_ids if self.edge_map[e] == edge_id]

    def __repr__(self):
        return f'QuiverMorphism({self.source!r} -> {self.target!r})'


class LiftingReport(NamedTuple):
    '''Outcome of parallel_lifting_check.'''
    ok: bool
    # pairs of edge ids of the target that are parallel but whose lifts are not
    violations: Tuple[Tuple[str, str], ...]
    has_loops: bool
    same_orientation: bool
    # every loop lifts to a loop
    loops_preserved: bool

    @property
    def satisfies_gluing_lemma(self):
        return self.ok and not self.has_loops and self.same_orientation

    @property
    def satisfies_scalar_extension(self):
        return self.ok and self.loops_preserved


def is_dismemberment(gamma):
    '''Edge map bijective and vertex map bijective between isolated vertices.'''
    if not isinstance(gamma, QuiverMorphism):
        raise QuiverValidationError(f'Expected a QuiverMorphism, got {type(gamma).__name__}.')
    images = list(gamma.edge_map.values())
    if len(set(images)) != len(images) or set(images) != set(gamma.target.edge_ids):
        return False
    isolated_images = [gamma.vertex_map[v] for v in gamma.source.vertices
                       if gamma.source.is_isolated(v)]
    isolated_target = {v for v in gamma.target.vertices if gamma.target.is_isolated(v)}
    return (len(set(isolated_images)) == len(isolated_images)
            and set(isolated_images) == isolated_target)


def finest_dismemberment(quiver, dims):
    '''
    Split a quiver into one component per pair of adjacent vertices.

    All edges between a pair (and all loops at a vertex) stay together. The
    copy of vertex v in component k is named "v.k"; isolated vertices and
    edge ids are kept. Returns (quiver, dims, morphism).
    '''
    vertices = []
    vertex_map = {}
    copies = {}
    for k, (ends, edges) in enumerate(quiver.parallel_classes().items(), start=1):
        first = edges[0]
        for v in dict.fromkeys((first.src, first.dst)):
            name = f'{v}.{k}'
            vertices.append(name)
            vertex_map[name] = v
            copies[ends, v] = name
    for v in quiver.vertices:
        if quiver.is_isolated(v):
            vertices.append(v)
            vertex_map[v] = v
    edges = [Edge(e.id, copies[e.endpoints(), e.src], copies[e.endpoints(), e.dst])
             for e in quiver.edges]
    pieces = QuiverSpec(vertices, edges)
    gamma = QuiverMorphism(pieces, quiver, vertex_map, {e: e for e in quiver.edge_ids})
    logger.debug(f'finest_dismemberment: {len(quiver.parallel_classes())} components')
    return pieces, DimensionVector(quiver, dims).pullback(gamma), gamma


def parallel_lifting_check(gamma):
    '''Check that edges parallel in the target lift to parallel edges.'''
    if not is_dismemberment(gamma):
        raise QuiverValidationError('parallel_lifting_check needs a dismemberment.')
    lift = {image: e for e, image in gamma.edge_map.items()}
    violations = []
    same_orientation = True
    for ends, edges in gamma.target.parallel_classes().items():
        for e1, e2 in itertools.combinations(edges, 2):
            if len(ends) == 2 and (e1.src, e1.dst) != (e2.src, e2.dst):
                same_orientation = False
            lifted1 = gamma.source.edge(lift[e1.id])
            lifted2 = gamma.source.edge(lift[e2.id])
            if lifted1.endpoints() != lifted2.endpoints():
                violations.append((e1.id, e2.id))
    loops_preserved = all(gamma.source.edge(lift[e.id]).is_loop
                          for e in gamma.target.edges if e.is_loop)
    return LiftingReport(not violations, tuple(violations), gamma.target.has_loops(),
                         same_orientation, loops_preserved)


def normalize_orientation(quiver):
    '''Flip edges so all edges between two vertices point the way the first one does.
    Returns the new quiver and the flipped edge ids.'''
    flipped = []
    for ends, edges in quiver.parallel_classes().items():
        if len(ends) < 2:
            continue
        ref = edges[0]
        flipped.extend(e.id for e in edges[1:] if (e.src, e.dst) != (ref.src, ref.dst))
    if flipped:
        logger.debug(f'normalize_orientation: flipping {flipped}')
    return quiver.flip_edges(flipped), tuple(flipped)


def normalize_morphism_orientation(gamma):
    '''normalize_orientation on the target of gamma, flipping the lifted edges along.'''
    target, flipped = normalize_orientation(gamma.target)
    lifted = [e for e, image in gamma.edge_map.items() if image in set(flipped)]
    source = gamma.source.flip_edges(lifted)
    return QuiverMorphism(source, target, gamma.vertex_map, gamma.edge_map), flipped


class BlockAssignment(NamedTuple):
    '''Coordinates offset+1 .. offset+size of `original` belong to one exploded vertex.'''
    original: str
    offset: int
    size: int


class Explosion:
    '''Result of explode().'''

    def __init__(self, source, source_dims, quiver, dims, blocks, preimages, edge_origin):
        self.source = source
        self.source_dims = source_dims
        self.quiver = quiver
        self.dims = dims
        self.blocks = blocks
        self.preimages = preimages
        self.edge_origin = edge_origin

    def __repr__(self):
        return f'Explosion({self.source!r} -> {self.quiver!r})'


def explode(quiver, dims, parts=None):
    '''
    Replace each vertex v by len(parts[v]) vertices with dimensions parts[v].

    Every edge i -> j becomes the complete bipartite set of edges between the
    preimages of i and j. Vertices not listed in `parts` are kept. Exploded
    vertex t of v is named "xvbt"; exploded edges are named "e.s.t".
    '''
    dims = DimensionVector(quiver, dims)
    if quiver.has_loops():
        raise UnsupportedQuiverError('Quivers with loops cannot be exploded.')
    parts = dict(parts or {})
    unknown = [v for v in parts if v not in set(quiver.vertices)]
    if unknown:
        raise QuiverValidationError(f'Explosion refers to unknown vertices {unknown}.')
    vertices = []
    exploded_dims = {}
    blocks = {}
    preimages = {}
    for v in quiver.vertices:
        sizes = list(parts.get(v, [dims[v]]))
        if not sizes:
            raise QuiverValidationError(f'Vertex "{v}" must explode into at least one part.')
        if any(isinstance(s, bool) or not isinstance(s, int) or s < 0 for s in sizes):
            raise QuiverValidationError(f'Parts of vertex "{v}" must be nonnegative integers.')
        if sum(sizes) != dims[v]:
            raise QuiverValidationError(
                f'Parts {sizes} of vertex "{v}" do not add up to its dimension {dims[v]}.')
        names = [v] if len(sizes) == 1 else [f'x{v}b{t}' for t in range(1, len(sizes) + 1)]
        offset = 0
        for name, size in zip(names, sizes):
            vertices.append(name)
            exploded_dims[name] = size
            blocks[name] = BlockAssignment(v, offset, size)
            offset += size
        preimages[v] = tuple(names)
    edges = []
    edge_origin = {}
    for e in quiver.edges:
        sources, targets = preimages[e.src], preimages[e.dst]
        single = len(sources) * len(targets) == 1
        for (s, a), (t, b) in itertools.product(enumerate(sources, 1), enumerate(targets, 1)):
            name = e.id if single else f'{e.id}.{s}.{t}'
            edges.append(Edge(name, a, b))
            edge_origin[name] = e.id
    exploded = QuiverSpec(vertices, edges)
    return Explosion(quiver, dims, exploded, DimensionVector(exploded, exploded_dims),
                     blocks, preimages, edge_origin)
