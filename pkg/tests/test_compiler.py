"""Compilers: 2D circuits, tromino-only 1-in-3, 3D circuits, 4D lift."""

import itertools
import random

import pytest

from tilogic.compiler import (
    CompileError,
    TILESET_2D,
    TILESET_2D_TROMINO,
    TILESET_3D,
    compile_1in3_2d,
    compile_circuit_2d,
    compile_monotone_3d,
    lift_4d,
)
from tilogic.formula import (
    Circuit,
    Formula1in3,
    Gate,
    brute_force_models,
    circuit_models,
    eval_circuit,
    monotonize,
)
from tilogic.lattice import Region, builtin_tileset
from tilogic.solver import count_tilings, enumerate_tilings, exists_tiling

T2 = builtin_tileset(TILESET_2D)
T1 = builtin_tileset(TILESET_2D_TROMINO)
T3 = builtin_tileset(TILESET_3D)
T4 = builtin_tileset(["domino4", "straight_tromino4"])


CIRCUITS_2D = [
    Circuit(("x",), (), "x"),
    Circuit(("x",), (Gate("not", "n", ("x",)),), "n"),
    Circuit(("x", "y"), (Gate("and", "g", ("x", "y")),), "g"),
    Circuit(("x", "y"), (Gate("or", "g", ("x", "y")),), "g"),
    Circuit(("x",), (Gate("and", "g", ("x", "x")),), "g"),
    Circuit(("x", "y"),
            (Gate("and", "g", ("x", "y")), Gate("not", "h", ("g",))), "h"),
    Circuit(("x", "y", "z"),
            (Gate("and", "g", ("x", "y")), Gate("or", "h", ("g", "z"))), "h"),
]


@pytest.mark.parametrize("c", CIRCUITS_2D, ids=lambda c: c.output + str(len(c.gates)))
def test_compile_circuit_2d_parsimonious(c):
    inst = compile_circuit_2d(c)
    assert inst.tileset == TILESET_2D
    models = len(circuit_models(c))
    assert count_tilings(inst.region, T2) == models


def test_compile_circuit_2d_deterministic():
    c = CIRCUITS_2D[2]
    a = compile_circuit_2d(c)
    b = compile_circuit_2d(c)
    assert a.region == b.region and a.provenance == b.provenance


SAT3 = Formula1in3(3, ((1, 2, 3), (1, 2, 3), (1, 2, 3)))
UNSAT4 = Formula1in3(4, ((1, 2, 3), (1, 2, 4), (1, 3, 4), (2, 3, 4)))


def test_compile_1in3_counts_models():
    for f in (SAT3, UNSAT4):
        n_models, _ = brute_force_models(f)
        inst = compile_1in3_2d(f)
        assert inst.tileset == TILESET_2D_TROMINO
        assert count_tilings(inst.region, T1) == n_models


def test_compile_1in3_rejects_noncubic():
    with pytest.raises(CompileError):
        compile_1in3_2d(Formula1in3(3, ((1, 2, 3),)))


CIRCUITS_3D = [
    Circuit(("a",), (), "a"),
    Circuit(("a",), (Gate("not", "n", ("a",)),), "n"),
    Circuit(("a", "b"), (Gate("and", "g", ("a", "b")),), "g"),
    Circuit(("a", "b"), (Gate("or", "g", ("a", "b")),), "g"),
    Circuit(("a",), (Gate("not", "n", ("a",)),
                     Gate("and", "g", ("a", "n"))), "g"),  # unsat
    Circuit(("a",), (Gate("not", "n", ("a",)),
                     Gate("or", "g", ("a", "n"))), "g"),  # tautology
    Circuit(("a", "b"), (Gate("and", "p", ("a", "b")),
                         Gate("or", "q", ("a", "b")),
                         Gate("and", "g", ("p", "q"))), "g"),  # fan-out
    Circuit(("a",), (Gate("not", "na", ("a",)),
                     Gate("and", "p", ("a", "a")),
                     Gate("and", "g", ("p", "na"))), "g"),  # unsat, fan-out
]


@pytest.mark.parametrize("c", CIRCUITS_3D,
                         ids=lambda c: f"{c.output}{len(c.gates)}g")
def test_compile_monotone_3d_existence(c):
    sat = bool(circuit_models(c))
    inst = compile_monotone_3d(monotonize(c))
    assert inst.tileset == TILESET_3D
    assert exists_tiling(inst.region, T3) == sat


def random_region_3d(rng, max_cells):
    n = rng.randint(1, max_cells)
    cells = {(0, 0, 0)}
    while len(cells) < n:
        base = rng.choice(sorted(cells))
        axis = rng.randrange(3)
        sign = rng.choice([-1, 1])
        cells.add(tuple(base[i] + (sign if i == axis else 0)
                        for i in range(3)))
    return Region(frozenset(cells))


def test_lift_4d_preserves_counts():
    rng = random.Random(11)
    for _ in range(20):
        r = random_region_3d(rng, 8)
        assert count_tilings(lift_4d(r), T4) == count_tilings(r, T3)


def test_lift_4d_peg_pairing():
    r = Region(frozenset({(0, 0, 0), (1, 0, 0), (0, 1, 0), (1, 1, 0)}))
    lifted = lift_4d(r)
    pegs = {c for c in lifted.cells if c[3] != 0}
    assert not pegs  # full box: no complement, no pegs
    r = Region(frozenset({(0, 0, 0), (1, 0, 0), (0, 1, 0)}))
    lifted = lift_4d(r)
    pegs = {c for c in lifted.cells if c[3] != 0}
    assert pegs
    tilings, truncated = enumerate_tilings(lifted, T4, limit=50)
    assert not truncated
    for t in tilings:
        for p in t.placements:
            cells = sorted(p.cells)
            for peg in pegs:
                if peg in p.cells:
                    base = (*peg[:3], 0)
                    assert set(cells) == {peg, base}


def test_lift_4d_requires_3d():
    with pytest.raises(CompileError):
        lift_4d(Region(frozenset({(0, 0)})))
