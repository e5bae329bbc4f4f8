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

'''Shared pytest fixtures.'''

import os
import sys

import numpy as np
import pytest

ROOT = os.path.dirname(os.path.abspath(__file__))
if ROOT not in sys.path:
    sys.path.insert(0, ROOT)

from quiver import Edge, QuiverSpec  # noqa: E402

FIXTURES = os.path.join(ROOT, 'fixtures')


@pytest.fixture
def fixture_path():
    '''Path of a checked-in problem file.'''
    return lambda name: os.path.join(FIXTURES, name)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture
def chain():
    '''a -> b -> c with dims (1, 2, 1).'''
    quiver = QuiverSpec(['a', 'b', 'c'], [Edge('e1', 'a', 'b'), Edge('e2', 'b', 'c')])
    return quiver, {'a': 1, 'b': 2, 'c': 1}


@pytest.fixture
def parallel_pair():
    '''a => b, two edges, dims (1, 1).'''
    quiver = QuiverSpec(['a', 'b'], [Edge('p1', 'a', 'b'), Edge('p2', 'a', 'b')])
    return quiver, {'a': 1, 'b': 1}


@pytest.fixture
def loop_quiver():
    '''One vertex of dimension 2 with one loop.'''
    quiver = QuiverSpec(['o'], [Edge('l', 'o', 'o')])
    return quiver, {'o': 2}
