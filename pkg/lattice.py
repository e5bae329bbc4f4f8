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
Exact lattice arithmetic on characters and cocharacters of tori.

Characters and cocharacters are tuples of Python ints. Matrices are numpy
arrays of dtype object holding Python ints, so nothing ever overflows or
rounds. Ranks, inverses and Smith normal forms are delegated to sympy.
'''

import functools
import itertools
import logging
import math
import numbers
from fractions import Fraction
from typing import NamedTuple, Optional, Tuple

import numpy as np
import sympy
from sympy.polys.domains import ZZ
from sympy.polys.matrices import DM
from sympy.polys.matrices.normalforms import smith_normal_decomp

import config
from errors import ConsistencyError, DimensionError, InputError, InvalidQuotientError

logger = logging.getLogger(__name__)

Vector = Tuple[int, ...]


def _to_int(value, what):
    if isinstance(value, (bool, np.bool_)):
        raise InputError(f'{what} entries must be integers, got {value!r}.')
    if isinstance(value, numbers.Integral):
        return int(value)
    if isinstance(value, numbers.Rational) and value.denominator == 1:
        return int(value.numerator)
    raise InputError(f'{what} entries must be integers, got {value!r}.')


def as_vector(values, length=None, what='vector'):
    '''Return `values` as a tuple of Python ints, optionally checking its length.'''
    vec = tuple(_to_int(x, what) for x in values)
    if length is not None and len(vec) != length:
        raise DimensionError(f'{what} has length {len(vec)}, expected {length}.')
    return vec


def integer_matrix(rows, n_rows, n_cols, what='matrix'):
    '''Exact integer matrix of shape (n_rows, n_cols) as an object ndarray.'''
    rows = list(rows)
    if len(rows) != n_rows:
        raise DimensionError(f'{what} has {len(rows)} rows, expected {n_rows}.')
    out = np.zeros((n_rows, n_cols), dtype=object)
    for i, row in enumerate(rows):
        for j, x in enumerate(as_vector(row, n_cols, what)):
            out[i, j] = x
    return out


def _matmul(a, b):
    out = np.zeros((a.shape[0], b.shape[1]), dtype=object)
    if a.shape[1] and out.size:
        out[...] = a.dot(b)
    return out


def _matvec(a, vec):
    col = np.zeros((len(vec), 1), dtype=object)
    for k, x in enumerate(vec):
        col[k, 0] = x
    return tuple(int(x) for x in _matmul(a, col)[:, 0])


def _to_sympy(a):
    return sympy.Matrix(a.shape[0], a.shape[1], [int(x) for x in a.flat])


def _from_sympy(m):
    return integer_matrix(m.tolist(), m.rows, m.cols)


def pair(xi, mu):
    '''The pairing of a character with a cocharacter.'''
    xi = as_vector(xi, what='character')
    mu = as_vector(mu, len(xi), what='cocharacter')
    return sum(a * b for a, b in zip(xi, mu))


def _first_nonzero_minor(v1, v2):
    for i, j in itertools.combinations(range(len(v1)), 2):
        det = v1[i] * v2[j] - v1[j] * v2[i]
        if det:
            return i, j, det
    return None


def rank_at_most_one(v1, v2):
    '''True when the 2 x r matrix with rows v1, v2 has rational rank <= 1.'''
    v1 = as_vector(v1)
    v2 = as_vector(v2, len(v1))
    return _first_nonzero_minor(v1, v2) is None


class Proportionality(NamedTuple):
    '''Outcome of a proportionality test v1 = alpha * v2.'''
    alpha: Optional[Fraction]
    rank_at_most_one: bool
    # alpha is meaningless when both vectors vanish
    unconstrained: bool


def proportional_over_Q(v1, v2):
    '''Find alpha with v1 = alpha * v2 over the rationals.'''
    v1 = as_vector(v1)
    v2 = as_vector(v2, len(v1))
    low_rank = _first_nonzero_minor(v1, v2) is None
    if not any(v2):
        if not any(v1):
            return Proportionality(Fraction(0), True, True)
        return Proportionality(None, True, False)
    if not low_rank:
        return Proportionality(None, False, False)
    j = next(k for k, x in enumerate(v2) if x)
    return Proportionality(Fraction(v1[j], v2[j]), True, False)


def _in_span(vec, vectors):
    if not any(vec):
        return True
    if not vectors:
        return False
    span = sympy.Matrix([list(v) for v in vectors])
    return span.rank() == span.col_join(sympy.Matrix([list(vec)])).rank()


class TorusData:
    '''
    Cocharacter lattice Z^rank of a torus.

    `blocks` partitions the coordinates into consecutive GL-factor blocks; the
    Weyl group permutes coordinates inside each block. `central_quotients`
    lists primitive cocharacters that are considered quotiented out: such a
    torus only accepts characters vanishing on them.
    '''

    def __init__(self, rank=None, blocks=None, central_quotients=()):
        if blocks is None:
            if rank is None:
                raise DimensionError('A torus needs a rank or a block structure.')
            blocks = (rank,) if rank else ()
        blocks = tuple(_to_int(b, 'block size') for b in blocks)
        if any(b < 0 for b in blocks):
            raise DimensionError(f'Block sizes must be nonnegative, got {blocks}.')
        if rank is None:
            rank = sum(blocks)
        if rank != sum(blocks):
            raise DimensionError(f'Blocks {blocks} do not add up to rank {rank}.')
        quotients = []
        for v in central_quotients:
            v = as_vector(v, rank, 'central cocharacter')
            if not any(v) or math.gcd(*v) != 1:
                raise InvalidQuotientError(f'Central cocharacter {v} is not primitive.')
            quotients.append(v)
        self.rank = rank
        self.blocks = blocks
        self.central_quotients = tuple(quotients)

    @classmethod
    def free(cls, rank):
        return cls(rank=rank)

    def block_ranges(self):
        '''Coordinate ranges of the blocks, in order.'''
        ranges = []
        start = 0
        for size in self.blocks:
            ranges.append(range(start, start + size))
            start += size
        return ranges

    def check(self, vector, what='vector'):
        return as_vector(vector, self.rank, what)

    def check_character(self, xi):
        '''Validate a character, which must vanish on the central quotients.'''
        xi = self.check(xi, 'character')
        for v in self.central_quotients:
            if pair(xi, v):
                raise DimensionError(
                    f'Character {xi} does not vanish on the quotiented cocharacter {v}.')
        return xi

    def extended(self, extra=1):
        '''This torus times a torus of rank `extra` in its own block.'''
        quotients = [v + (0,) * extra for v in self.central_quotients]
        return TorusData(blocks=self.blocks + ((extra,) if extra else ()),
                         central_quotients=quotients)

    def _key(self):
        return (self.rank, self.blocks, self.central_quotients)

    def __eq__(self, other):
        return isinstance(other, TorusData) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        extra = f', central_quotients={self.central_quotients}' if self.central_quotients else ''
        return f'TorusData(rank={self.rank}, blocks={self.blocks}{extra})'


class TorusMap:
    '''
    Homomorphism of tori, given by an integer matrix acting on cocharacters.
    The matrix has shape (target.rank, source.rank); characters restrict by
    the transpose.
    '''

    def __init__(self, source, target, matrix):
        self.source = source
        self.target = target
        self.matrix = integer_matrix(matrix, target.rank, source.rank, 'torus map')
        for v in source.central_quotients:
            if not _in_span(self.cocharacter_image(v), target.central_quotients):
                raise DimensionError(
                    f'Quotiented cocharacter {v} does not map into the quotiented part of the target.')

    @classmethod
    def identity(cls, torus):
        return cls(torus, torus, np.eye(torus.rank, dtype=int).tolist())

    @classmethod
    def zero(cls, source, target):
        return cls(source, target, [[0] * source.rank for _ in range(target.rank)])

    def cocharacter_image(self, mu):
        mu = self.source.check(mu, 'cocharacter')
        return _matvec(self.matrix, mu)

    def restrict(self, xi):
        '''Pull a character of the target back to the source.'''
        xi = self.target.check(xi, 'character')
        return _matvec(self.matrix.T, xi)

    def compose(self, other):
        '''The composite self o other.'''
        if other.target.rank != self.source.rank:
            raise DimensionError(
                f'Cannot compose: inner ranks {other.target.rank} and {self.source.rank} differ.')
        return TorusMap(other.source, self.target, _matmul(self.matrix, other.matrix).tolist())

    def direct_sum(self, other):
        '''Block-diagonal map between the product tori.'''
        source = TorusData(blocks=self.source.blocks + other.source.blocks,
                           central_quotients=_stack_quotients(self.source, other.source))
        target = TorusData(blocks=self.target.blocks + other.target.blocks,
                           central_quotients=_stack_quotients(self.target, other.target))
        matrix = np.zeros((target.rank, source.rank), dtype=object)
        matrix[:self.target.rank, :self.source.rank] = self.matrix
        matrix[self.target.rank:, self.source.rank:] = other.matrix
        return TorusMap(source, target, matrix.tolist())

    def permute_target(self, perm):
        '''Compose with the coordinate permutation new[k] = old[perm[k]] on the target.'''
        perm = list(perm)
        if sorted(perm) != list(range(self.target.rank)):
            raise DimensionError(f'{perm} is not a permutation of the target coordinates.')
        target = TorusData(blocks=self.target.blocks,
                           central_quotients=[permute(v, perm) for v in self.target.central_quotients])
        return TorusMap(self.source, target, self.matrix[perm, :].tolist())

    def rank(self):
        return _to_sympy(self.matrix).rank()

    def is_injective(self):
        return self.rank() == self.source.rank

    def coordinate_embedding(self):
        '''Target coordinate of each source coordinate, when every column is a
        distinct unit vector; otherwise None.'''
        images = []
        for j in range(self.source.rank):
            column = [int(x) for x in self.matrix[:, j]]
            if sorted(column) != [0] * (len(column) - 1) + [1]:
                return None
            images.append(column.index(1))
        if len(set(images)) != len(images):
            return None
        return tuple(images)

    def to_lists(self):
        return [[int(x) for x in row] for row in self.matrix]

    def __eq__(self, other):
        return (isinstance(other, TorusMap) and self.source == other.source
                and self.target == other.target and self.to_lists() == other.to_lists())

    def __repr__(self):
        return f'TorusMap({self.source.rank} -> {self.target.rank}, {self.to_lists()})'


def _stack_quotients(first, second):
    return ([v + (0,) * second.rank for v in first.central_quotients]
            + [(0,) * first.rank + v for v in second.central_quotients])


def sign_feasible(xi1, xi2, torus=None):
    '''
    Find an integral cocharacter mu with <xi1, mu> * <xi2, mu> < 0.

    Such mu exists exactly when xi1 and xi2 are linearly independent, or when
    xi1 = c * xi2 with c < 0 and xi2 != 0. Returns None when there is none.
    '''
    xi1 = as_vector(xi1, what='character')
    xi2 = as_vector(xi2, len(xi1), what='character')
    if torus is not None:
        torus.check_character(xi1)
        torus.check_character(xi2)
    minor = _first_nonzero_minor(xi1, xi2)
    if minor is not None:
        # solve <xi1, mu> = |det|, <xi2, mu> = -|det| on two coordinates
        i, j, det = minor
        sign = 1 if det > 0 else -1
        mu = [0] * len(xi1)
        mu[i] = sign * (xi1[j] + xi2[j])
        mu[j] = -sign * (xi1[i] + xi2[i])
        g = math.gcd(mu[i], mu[j])
        mu = tuple(x // g for x in mu)
    else:
        j = next((k for k, x in enumerate(xi2) if x), None)
        if j is None or xi1[j] * xi2[j] >= 0:
            return None
        mu = tuple(int(k == j) for k in range(len(xi1)))
    if pair(xi1, mu) * pair(xi2, mu) >= 0:
        raise ConsistencyError(f'sign_feasible produced a bad cocharacter {mu} for {xi1}, {xi2}.')
    return mu


@functools.lru_cache(maxsize=32)
def cocharacter_box(rank, box):
    '''All of {-box..box}^rank as an int64 array, by sup-norm and then lexicographically.'''
    points = list(itertools.product(range(-box, box + 1), repeat=rank))
    grid = np.array(points, dtype=np.int64).reshape((len(points), rank))
    if rank:
        grid = grid[np.argsort(np.abs(grid).max(axis=1), kind='stable')]
    grid.setflags(write=False)
    return grid


def box_pairings(rows, rank, box):
    '''
    The box grid and the pairings of every row with every grid point, one
    column per row. Uses exact Python integers once int64 products of two
    pairings could overflow.
    '''
    grid = cocharacter_box(rank, box)
    largest = max((abs(int(x)) for row in rows for x in row), default=0)
    if (largest * box * rank) ** 2 < 2 ** 62:
        chars = np.array(rows, dtype=np.int64).reshape((len(rows), rank))
        return grid, grid.dot(chars.T)
    chars = np.array([[int(x) for x in row] for row in rows], dtype=object).reshape((len(rows), rank))
    return grid, grid.astype(object).dot(chars.T)


def brute_force_sign_feasible(xi1, xi2, box=config.SIGN_ORACLE_BOX):
    '''Smallest mu in the box with <xi1, mu> * <xi2, mu> < 0, or None.'''
    xi1 = as_vector(xi1, what='character')
    xi2 = as_vector(xi2, len(xi1), what='character')
    grid, values = box_pairings([xi1, xi2], len(xi1), box)
    hits = np.flatnonzero(values[:, 0] * values[:, 1] < 0)
    if not hits.size:
        return None
    return tuple(int(x) for x in grid[hits[0]])


class QuotientSplit:
    '''
    Splitting Z^r = Z v + C adapted to a primitive cocharacter v.

    `basis` is a unimodular matrix whose first column is v; the remaining
    columns span the complement C, which is the cocharacter lattice of the
    quotient torus.
    '''

    def __init__(self, parent, vector, basis, basis_inverse):
        self.parent = parent
        self.vector = vector
        self.basis = basis
        self.basis_inverse = basis_inverse
        self.torus = TorusData(rank=parent.rank - 1)

    def character_forward(self, xi):
        '''Character of the parent vanishing on v, in quotient coordinates.'''
        xi = self.parent.check(xi, 'character')
        if pair(xi, self.vector):
            raise DimensionError(f'Character {xi} does not vanish on {self.vector}.')
        return _matvec(self.basis.T, xi)[1:]

    def character_backward(self, eta):
        eta = self.torus.check(eta, 'character')
        return _matvec(self.basis_inverse.T, (0,) + eta)

    def cocharacter_forward(self, mu):
        '''Image of mu in the quotient lattice.'''
        mu = self.parent.check(mu, 'cocharacter')
        return _matvec(self.basis_inverse, mu)[1:]

    def cocharacter_backward(self, y):
        '''Coset representative of y lying in the complement C.'''
        y = self.torus.check(y, 'cocharacter')
        return _matvec(self.basis, (0,) + y)

    def __repr__(self):
        return f'QuotientSplit({self.parent!r} / {self.vector})'


def quotient_split(torus, v):
    '''Split off the primitive cocharacter v using the Smith normal form of v^T.'''
    v = as_vector(v, torus.rank, 'quotient cocharacter')
    if not any(v):
        raise InvalidQuotientError('Cannot quotient by the zero cocharacter.')
    if math.gcd(*v) != 1:
        raise InvalidQuotientError(f'Cocharacter {v} is not primitive.')
    smf, s, t = (m.to_Matrix() for m in smith_normal_decomp(DM([list(v)], ZZ)))
    # s * v^T * t = (d, 0, ..., 0) with d, s = +-1, so (t^T)^-1 e1 = c v
    c = int(smf[0, 0]) * int(s[0, 0])
    basis = t.T.inv()
    basis[:, 0] = c * basis[:, 0]
    basis_inverse = t.T.copy()
    basis_inverse[0, :] = c * basis_inverse[0, :]
    if list(basis[:, 0]) != list(v) or basis * basis_inverse != sympy.eye(torus.rank):
        raise ConsistencyError(f'Smith normal form splitting failed for {v}.')
    logger.debug(f'quotient_split: v = {v}, basis = {basis.tolist()}')
    return QuotientSplit(torus, v, _from_sympy(basis), _from_sympy(basis_inverse))


def quotient_torus_map(torus_map, source_split, target_split):
    '''Map induced on quotient tori; requires the source vector to land in Z times the target vector.'''
    if (source_split.parent.rank != torus_map.source.rank
            or target_split.parent.rank != torus_map.target.rank):
        raise DimensionError('Quotient splittings do not match the torus map.')
    full = _matmul(_matmul(target_split.basis_inverse, torus_map.matrix), source_split.basis)
    if any(full[1:, 0]):
        raise DimensionError(
            f'{source_split.vector} does not map into the span of {target_split.vector}.')
    return TorusMap(source_split.torus, target_split.torus, full[1:, 1:].tolist())


def dominantizing_permutation(mu, torus):
    '''Permutation perm with mu[perm[k]] weakly decreasing inside each block.'''
    mu = torus.check(mu, 'cocharacter')
    perm = []
    for block in torus.block_ranges():
        perm.extend(sorted(block, key=lambda k: -mu[k]))
    return tuple(perm)


def permute(vector, perm):
    '''new[k] = vector[perm[k]].'''
    return tuple(vector[k] for k in perm)


def dominantize(mu, torus):
    '''Dominant Weyl translate of mu.'''
    mu = torus.check(mu, 'cocharacter')
    return permute(mu, dominantizing_permutation(mu, torus))
