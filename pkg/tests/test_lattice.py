'''Tests for lattice.'''

import itertools
from fractions import Fraction

import numpy as np
import pytest
import sympy

from errors import DimensionError, InputError, InvalidQuotientError
from lattice import (TorusData, TorusMap, box_pairings, brute_force_sign_feasible, cocharacter_box, dominantize,
                     dominantizing_permutation, pair, permute, proportional_over_Q, quotient_split,
                     quotient_torus_map, rank_at_most_one, sign_feasible)


@pytest.mark.parametrize('xi, mu, expected', [
    ((1, -1), (2, 1), 1),
    ((0, 0), (5, 7), 0),
    ((-1, 1), (1, 0), -1),
])
def test_pair(xi, mu, expected):
    assert pair(xi, mu) == expected


def test_pair_length_mismatch():
    with pytest.raises(DimensionError):
        pair((1, 2), (1, 2, 3))


def test_pair_rejects_non_integers():
    with pytest.raises(InputError):
        pair((1.5, 0), (1, 0))
    with pytest.raises(InputError):
        pair((True, 0), (1, 0))


def test_pair_is_bilinear(rng):
    for _ in range(50):
        a, b, c = (tuple(int(x) for x in rng.integers(-5, 6, size=4)) for _ in range(3))
        s = int(rng.integers(-3, 4))
        ab = tuple(x + s * y for x, y in zip(a, b))
        assert pair(ab, c) == pair(a, c) + s * pair(b, c)
        assert pair(c, ab) == pair(c, a) + s * pair(c, b)


def test_proportional_over_Q():
    result = proportional_over_Q((2, -4), (1, -2))
    assert result.alpha == Fraction(2)
    assert result.rank_at_most_one
    result = proportional_over_Q((1, 0), (0, 1))
    assert result.alpha is None
    assert not result.rank_at_most_one
    result = proportional_over_Q((0, 0), (0, 0))
    assert result.alpha == 0
    assert result.unconstrained
    assert result.rank_at_most_one
    result = proportional_over_Q((1, 2), (0, 0))
    assert result.alpha is None
    assert result.rank_at_most_one
    assert proportional_over_Q((1, 3), (2, 6)).alpha == Fraction(1, 2)


def test_proportional_length_mismatch():
    with pytest.raises(DimensionError):
        proportional_over_Q((1, 2), (1,))


def test_rank_flag_matches_sympy(rng):
    for _ in range(100):
        v1, v2 = (tuple(int(x) for x in rng.integers(-2, 3, size=3)) for _ in range(2))
        assert rank_at_most_one(v1, v2) == (sympy.Matrix([v1, v2]).rank() <= 1)


@pytest.mark.parametrize('xi1, xi2, expected', [
    ((1, -1), (1, -1), None),
    ((1, 0), (0, -1), (1, 1)),
    ((1, -1), (-2, 2), (1, 0)),
    ((0, 0), (1, 0), None),
])
def test_sign_feasible_examples(xi1, xi2, expected):
    assert sign_feasible(xi1, xi2) == expected


def test_sign_feasible_separates(rng):
    for _ in range(200):
        r = int(rng.integers(1, 5))
        xi1, xi2 = (tuple(int(x) for x in rng.integers(-3, 4, size=r)) for _ in range(2))
        mu = sign_feasible(xi1, xi2)
        if mu is not None:
            assert pair(xi1, mu) * pair(xi2, mu) < 0
            assert np.gcd.reduce(np.array(mu)) == 1


def test_sign_feasible_agrees_with_box_search(rng):
    for _ in range(300):
        r = int(rng.integers(1, 5))
        xi1, xi2 = (tuple(int(x) for x in rng.choice([-1, 0, 1], size=r)) for _ in range(2))
        assert (sign_feasible(xi1, xi2) is None) == (brute_force_sign_feasible(xi1, xi2, box=4) is None)


def test_box_search_success_implies_sign_feasible(rng):
    for _ in range(200):
        r = int(rng.integers(1, 4))
        xi1, xi2 = (tuple(int(x) for x in rng.integers(-3, 4, size=r)) for _ in range(2))
        if brute_force_sign_feasible(xi1, xi2, box=3) is not None:
            assert sign_feasible(xi1, xi2) is not None


def test_sign_feasible_checks_quotients():
    torus = TorusData(rank=2, central_quotients=[(1, 1)])
    assert sign_feasible((1, -1), (-1, 1), torus) is not None
    with pytest.raises(DimensionError):
        sign_feasible((1, 0), (0, 1), torus)


def test_cocharacter_box_order():
    grid = cocharacter_box(2, 2)
    assert grid.shape == (25, 2)
    assert tuple(grid[0]) == (0, 0)
    norms = np.abs(grid).max(axis=1)
    assert list(norms) == sorted(norms)
    assert [tuple(p) for p in grid[1:9]] == sorted(tuple(p) for p in grid[1:9])
    with pytest.raises(ValueError):
        grid[0, 0] = 5


def test_brute_force_sign_feasible_is_smallest():
    assert brute_force_sign_feasible((1, 0), (-1, 0), box=2) == (-1, -1)
    assert brute_force_sign_feasible((1, 1), (1, 1), box=2) is None


def test_box_pairings_stay_exact_for_large_characters():
    big = 2 ** 40
    grid, values = box_pairings([(1, -1), (2, 0)], 2, 1)
    assert values.dtype == np.int64
    assert [int(v) for v in values[:, 0]] == [int(p[0]) - int(p[1]) for p in grid]
    _, values = box_pairings([(big, 0), (-big, 1)], 2, 1)
    assert values.dtype == object
    assert brute_force_sign_feasible((big, 0), (-big, 0), box=2) == (-1, -1)
    assert brute_force_sign_feasible((big, 1), (big, 1), box=2) is None


def test_torus_data_validation():
    assert TorusData(blocks=[2, 1]).rank == 3
    assert TorusData(rank=3).blocks == (3,)
    assert TorusData(rank=0).blocks == ()
    with pytest.raises(DimensionError):
        TorusData(rank=4, blocks=[2, 1])
    with pytest.raises(DimensionError):
        TorusData()
    with pytest.raises(InvalidQuotientError):
        TorusData(rank=2, central_quotients=[(2, 2)])
    with pytest.raises(InvalidQuotientError):
        TorusData(rank=2, central_quotients=[(0, 0)])


def test_torus_data_extended_keeps_quotients():
    torus = TorusData(blocks=[2], central_quotients=[(1, 1)])
    extended = torus.extended()
    assert extended.blocks == (2, 1)
    assert extended.central_quotients == ((1, 1, 0),)


def test_torus_map_basics():
    source = TorusData(rank=2)
    target = TorusData(blocks=[1, 1, 1])
    inclusion = TorusMap(source, target, [[1, 0], [0, 0], [0, 1]])
    assert inclusion.cocharacter_image((3, 4)) == (3, 0, 4)
    assert inclusion.restrict((1, 2, 3)) == (1, 3)
    assert inclusion.is_injective()
    assert inclusion.coordinate_embedding() == (0, 2)
    assert TorusMap(source, target, [[1, 1], [0, 0], [0, 0]]).coordinate_embedding() is None
    assert not TorusMap.zero(source, target).is_injective()
    with pytest.raises(DimensionError):
        TorusMap(source, target, [[1, 0], [0, 1]])


def test_torus_map_compose_and_direct_sum():
    a = TorusMap(TorusData(rank=1), TorusData(rank=2), [[1], [2]])
    b = TorusMap(TorusData(rank=2), TorusData(rank=1), [[1, 1]])
    assert b.compose(a).to_lists() == [[3]]
    assert a.compose(b).to_lists() == [[1, 1], [2, 2]]
    total = a.direct_sum(TorusMap.identity(TorusData(rank=1)))
    assert total.to_lists() == [[1, 0], [2, 0], [0, 1]]
    assert total.source.blocks == (1, 1)
    assert total.target.blocks == (2, 1)
    with pytest.raises(DimensionError):
        a.compose(a)


def test_torus_map_permute_target():
    identity = TorusMap.identity(TorusData(rank=3))
    swapped = identity.permute_target([1, 0, 2])
    assert swapped.to_lists() == [[0, 1, 0], [1, 0, 0], [0, 0, 1]]
    with pytest.raises(DimensionError):
        identity.permute_target([0, 0, 1])


def test_torus_map_quotients_must_map_to_quotients():
    quotiented = TorusData(rank=2, central_quotients=[(1, 1)])
    with pytest.raises(DimensionError):
        TorusMap(quotiented, TorusData(rank=2), [[1, 0], [0, 1]])
    assert TorusMap(quotiented, quotiented, [[0, 1], [1, 0]]).rank() == 2


def test_quotient_split_rank_two():
    split = quotient_split(TorusData(rank=2), (1, 1))
    assert split.torus.rank == 1
    assert split.character_forward((1, -1)) in ((1,), (-1,))
    assert split.cocharacter_forward((1, 1)) == (0,)
    with pytest.raises(DimensionError):
        split.character_forward((1, 0))


def test_quotient_split_rank_one():
    split = quotient_split(TorusData(rank=1), (1,))
    assert split.torus.rank == 0
    assert split.cocharacter_forward((5,)) == ()


@pytest.mark.parametrize('v', [(1, 1, 1), (2, 3, 0), (0, 0, 1), (-1, 4, 6)])
def test_quotient_split_round_trips(v):
    split = quotient_split(TorusData(rank=3), v)
    assert split.torus.rank == 2
    assert list(split.basis[:, 0]) == list(v)
    for xi in itertools.product(range(-2, 3), repeat=3):
        if pair(xi, v) == 0:
            assert split.character_backward(split.character_forward(xi)) == xi
    for y in itertools.product(range(-2, 3), repeat=2):
        mu = split.cocharacter_backward(y)
        assert split.cocharacter_forward(mu) == y
    assert split.cocharacter_forward(v) == (0, 0)


def test_quotient_split_pairing_is_preserved():
    split = quotient_split(TorusData(rank=3), (1, 1, 1))
    xi = (1, -2, 1)
    for mu in [(1, 0, 0), (0, 3, -1), (2, 2, 5)]:
        assert pair(split.character_forward(xi), split.cocharacter_forward(mu)) == pair(xi, mu)


@pytest.mark.parametrize('v', [(0, 0), (2, 4)])
def test_quotient_split_invalid(v):
    with pytest.raises(InvalidQuotientError):
        quotient_split(TorusData(rank=2), v)


def test_quotient_torus_map():
    diagonal = TorusMap(TorusData(rank=1), TorusData(rank=2), [[1], [1]])
    assert quotient_torus_map(diagonal, quotient_split(TorusData(rank=1), (1,)),
                              quotient_split(TorusData(rank=2), (1, 1))).matrix.shape == (1, 0)
    swap = TorusMap(TorusData(rank=2), TorusData(rank=2), [[0, 1], [1, 0]])
    split = quotient_split(TorusData(rank=2), (1, 1))
    induced = quotient_torus_map(swap, split, split)
    # the swap acts by -1 on Z^2 / Z(1, 1)
    assert induced.to_lists() == [[-1]]
    skew = TorusMap(TorusData(rank=2), TorusData(rank=2), [[1, 0], [0, 2]])
    with pytest.raises(DimensionError):
        quotient_torus_map(skew, split, split)


def test_dominantize():
    torus = TorusData(blocks=[2, 1])
    assert dominantize((1, 3, 2), torus) == (3, 1, 2)
    assert dominantize((3, 1, 2), torus) == (3, 1, 2)
    assert dominantize((0, 0, 0), torus) == (0, 0, 0)
    perm = dominantizing_permutation((1, 3, 2), torus)
    assert permute((1, 3, 2), perm) == (3, 1, 2)


def test_dominantize_keeps_block_multisets(rng):
    torus = TorusData(blocks=[3, 2, 1])
    for _ in range(30):
        mu = tuple(int(x) for x in rng.integers(-3, 4, size=6))
        dominant = dominantize(mu, torus)
        assert dominantize(dominant, torus) == dominant
        for block in torus.block_ranges():
            assert sorted(mu[k] for k in block) == sorted(dominant[k] for k in block)
