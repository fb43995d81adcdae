"""Gadget catalog: every truth table is exact, including absent rows."""

import itertools

import pytest

from tilogic.gadgets import CATALOG, GadgetError, get_gadget
from tilogic.lattice import Region, builtin_tileset
from tilogic.solver import count_tilings


@pytest.mark.parametrize("name", sorted(CATALOG))
def test_catalog_table_exact(name):
    g = CATALOG[name]
    tiles = builtin_tileset(g.tileset)
    for values in itertools.product([False, True], repeat=len(g.ports)):
        expected = g.truth_table.get(values, 0)
        region = Region(g.must_tile_cells(values), g.dim)
        assert count_tilings(region, tiles) == expected, (name, values)


def test_get_gadget_unknown():
    with pytest.raises(GadgetError):
        get_gadget("no_such_gadget")


def test_and2d_rows():
    table = get_gadget("and2d").truth_table
    assert table == {(a, b, a and b): 1
                     for a in (False, True) for b in (False, True)}


def test_not2d_rows():
    table = get_gadget("not2d").truth_table
    assert table == {(False, True): 1, (True, False): 1}


def test_bulb_free_choice():
    table = get_gadget("bulb2d").truth_table
    assert table == {(False,): 1, (True,): 1}


def test_terminator_forces_true():
    table = get_gadget("terminator2d").truth_table
    assert table == {(True,): 1}


def test_variable_node_all_equal():
    table = get_gadget("variable_node").truth_table
    assert set(table) == {(False, False, False), (True, True, True)}


def test_clause_node_one_hot():
    table = get_gadget("clause_node").truth_table
    assert set(table) == {
        (True, False, False), (False, True, False), (False, False, True)
    }


def test_3d_gates_parity_dependent():
    and_g = get_gadget("gate3d_and")
    or_g = get_gadget("gate3d_or")
    assert and_g.truth_table == {(a, b, a and b): 1
                                 for a in (False, True) for b in (False, True)}
    assert or_g.truth_table == {(a, b, a or b): 1
                                for a in (False, True) for b in (False, True)}
    # Same bar shape; only the centre-cell parity differs.
    centre_and = sorted(and_g.cells)[1]
    centre_or = sorted(or_g.cells)[1]
    assert sum(centre_and) % 2 != sum(centre_or) % 2


def test_pairing_wire_complementary():
    table = get_gadget("pairing_wire3d_sample").truth_table
    assert set(table) == {(True, False), (False, True)}


def test_translated_preserves_table():
    g = get_gadget("and2d").translated((4, 6))
    tiles = builtin_tileset(g.tileset)
    for values, expected in g.truth_table.items():
        region = Region(g.must_tile_cells(values), g.dim)
        assert count_tilings(region, tiles) == expected


def test_parity_gadget_rejects_odd_offset():
    g = get_gadget("gate3d_and")
    with pytest.raises(GadgetError):
        g.translated((1, 0, 0))
    g.translated((1, 1, 0))  # even offsets are fine


def test_transformed_reflection_preserves_table():
    mat = ((-1, 0), (0, 1))  # mirror in x; the 2D tilesets are closed under it
    g = get_gadget("not2d").transformed(mat, (0, 0))
    tiles = builtin_tileset(g.tileset)
    for values, expected in g.truth_table.items():
        region = Region(g.must_tile_cells(values), g.dim)
        assert count_tilings(region, tiles) == expected
