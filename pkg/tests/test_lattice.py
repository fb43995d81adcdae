"""Lattice primitives: tiles, regions, and their file formats."""

import pytest

from tilogic.lattice import (
    BUILTIN_TILES,
    LatticeError,
    Region,
    TileShape,
    box_region,
    builtin_tileset,
    emit_region,
    emit_tileset,
    is_connected,
    normalize_cells,
    parity,
    parse_region,
    parse_tileset,
    region_from_cells,
)


def test_builtin_tiles_present():
    for name in ("right_tromino", "square_tetromino", "domino2", "domino3",
                 "straight_tromino3", "domino4", "straight_tromino4"):
        assert name in BUILTIN_TILES


def test_orientation_counts():
    assert len(BUILTIN_TILES["domino2"].orientations()) == 2
    assert len(BUILTIN_TILES["square_tetromino"].orientations()) == 1
    assert len(BUILTIN_TILES["right_tromino"].orientations()) == 4
    assert len(BUILTIN_TILES["domino3"].orientations()) == 3
    assert len(BUILTIN_TILES["straight_tromino3"].orientations()) == 3
    assert len(BUILTIN_TILES["domino4"].orientations()) == 4


def test_normalize_translation_invariance():
    a = normalize_cells([(0, 0), (1, 0), (1, 1)])
    b = normalize_cells([(5, -2), (6, -2), (6, -1)])
    assert a == b


def test_region_dim_inference_and_empty():
    assert Region(frozenset({(0, 0)})).dim == 2
    assert Region(frozenset(), 3).dim == 3
    with pytest.raises(LatticeError):
        Region(frozenset())  # empty region needs an explicit dimension


def test_box_region():
    r = box_region(2, 3)
    assert len(r) == 6 and r.dim == 2
    assert box_region(2, 2, 2).dim == 3


def test_connectivity():
    assert is_connected([(0, 0), (0, 1)])
    assert not is_connected([(0, 0), (0, 2)])


def test_parity():
    assert parity((0, 0)) == 0
    assert parity((2, 1)) == 1
    assert parity((1, 1, 1)) == 1


def test_region_roundtrip():
    r = region_from_cells([(0, 0, 0), (0, 1, 0), (-2, 1, 3)], 3)
    text = emit_region(r)
    assert parse_region(text) == r
    assert emit_region(parse_region(text)) == text


def test_parse_region_errors():
    with pytest.raises(LatticeError):
        parse_region("0 0\n")  # no header
    with pytest.raises(LatticeError):
        parse_region("dim 5\n0 0 0 0 0\n")
    with pytest.raises(LatticeError):
        parse_region("dim 2\n0 0\n0 0\n")  # duplicate cell
    with pytest.raises(LatticeError):
        parse_region("dim 2\n0 0 0\n")  # wrong coordinate count


def test_tileset_roundtrip():
    tiles = builtin_tileset(["right_tromino", "domino2"])
    text = emit_tileset(tiles)
    again = parse_tileset(text)
    assert [t.name for t in again] == [t.name for t in tiles]
    assert emit_tileset(again) == text


def test_tileshape_validation():
    with pytest.raises(LatticeError):
        TileShape("bad", frozenset({(0, 0), (0, 2)}))  # disconnected
    with pytest.raises(LatticeError):
        builtin_tileset(["nonexistent_tile"])
