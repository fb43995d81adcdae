"""Exact tiling solver: frozen counts, oracle agreement, enumeration."""

import random

import pytest

from tilogic.lattice import Region, box_region, builtin_tileset, region_from_cells
from tilogic.solver import (
    count_tilings,
    enumerate_tilings,
    exists_tiling,
    oracle_count,
    placements,
)

TROMINO = builtin_tileset(["right_tromino"])
DOMINO2 = builtin_tileset(["domino2"])


def random_region(rng: random.Random, dim: int, max_cells: int) -> Region:
    n = rng.randint(1, max_cells)
    cells = {(0,) * dim}
    while len(cells) < n:
        base = rng.choice(sorted(cells))
        axis = rng.randrange(dim)
        sign = rng.choice([-1, 1])
        cells.add(tuple(base[i] + (sign if i == axis else 0)
                        for i in range(dim)))
    return Region(frozenset(cells))


def test_2x3_trominoes():
    assert count_tilings(box_region(2, 3), TROMINO) == 2


def test_domino_fibonacci():
    fib = [1, 2, 3, 5, 8, 13, 21, 34]
    for n, want in enumerate(fib, start=1):
        assert count_tilings(box_region(2, n), DOMINO2) == want


def test_empty_region():
    assert count_tilings(Region(frozenset(), 2), DOMINO2) == 1
    assert exists_tiling(Region(frozenset(), 2), DOMINO2)


def test_untileable():
    assert count_tilings(box_region(1, 3), DOMINO2) == 0
    assert not exists_tiling(box_region(1, 3), DOMINO2)


def test_oracle_agreement_random():
    rng = random.Random(2024)
    for _ in range(60):
        dim = rng.choice([2, 3])
        region = random_region(rng, dim, 12)
        names = (["right_tromino", "square_tetromino", "domino2"] if dim == 2
                 else ["domino3", "straight_tromino3"])
        tiles = builtin_tileset(rng.sample(names, rng.randint(1, len(names))))
        assert count_tilings(region, tiles) == oracle_count(region, tiles)


def test_enumerate_limit_and_truncation():
    region = box_region(2, 8)
    tilings, truncated = enumerate_tilings(region, DOMINO2, limit=5)
    assert len(tilings) == 5 and truncated
    tilings, truncated = enumerate_tilings(region, DOMINO2, limit=100)
    assert len(tilings) == 34 and not truncated
    for t in tilings:
        assert t.is_partition_of(region)
    with pytest.raises(ValueError):
        enumerate_tilings(region, DOMINO2, limit=0)


def test_enumeration_deterministic():
    region = box_region(2, 5)
    a, _ = enumerate_tilings(region, DOMINO2, limit=10)
    b, _ = enumerate_tilings(region, DOMINO2, limit=10)
    assert [sorted(p.sort_key() for p in t.placements) for t in a] == \
           [sorted(p.sort_key() for p in t.placements) for t in b]


def test_placements_stay_inside():
    region = region_from_cells([(0, 0), (1, 0), (1, 1), (2, 1)], 2)
    for p in placements(region, TROMINO):
        assert p.cells <= region.cells


def test_dim_mismatch_rejected():
    with pytest.raises(Exception):
        count_tilings(box_region(2, 2, 2), DOMINO2)
