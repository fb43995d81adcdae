"""Catalog of verified tiling gadgets and their truth conventions.

A gadget is a finite cell set with boundary *ports*.  Each port is a junction
cell where a wire attaches; a Boolean value determines whether the junction
cell belongs to the must-tile region:

* ``coverage2d`` (square lattice, right tromino / square tetromino tiles):
  a junction carries TRUE when it is covered by the upstream component's
  tiles.  So for an in-port the junction is removed (already covered
  upstream) iff the value is true; for an out-port iff the value is false.

* ``parity3d`` (cubic lattice, domino / straight tromino tiles): wires are
  zig-zag paths covered by dominoes, and a junction carries TRUE when the
  covering domino ends on an odd cell.  An in-port junction is removed iff
  value XOR even(junction); an out-port junction iff value XOR odd(junction).

Every catalog entry's truth table is exact: for each port-value row the
stated number is the exact count of tilings of the must-tile region, and all
rows not listed have zero tilings.  All ports of the 2D gadgets end in a
one-link *stalk* so that no tile of the tileset can straddle the boundary
between a gadget and an attached wire.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .lattice import (
    Cell,
    LatticeError,
    _apply,
    _rotation_matrices,
    add,
    neighbors,
    parity,
    phase_color,
)

CONVENTION_COVERAGE_2D = "coverage2d"
CONVENTION_PARITY_3D = "parity3d"

TILESET_2D = ("right_tromino", "square_tetromino")
TILESET_2D_TROMINO = ("right_tromino",)
TILESET_3D = ("domino3", "straight_tromino3")

N, S, E, W = (0, 1), (0, -1), (1, 0), (-1, 0)


class GadgetError(ValueError):
    """Invalid gadget geometry or port data."""


@dataclass(frozen=True)
class Port:
    """Wire attachment point: junction cell, outward direction, and role."""

    anchor: Cell
    direction: Cell
    io: str
    phase: int
    convention: str

    def __post_init__(self) -> None:
        if self.io not in ("in", "out"):
            raise GadgetError(f"port io must be 'in' or 'out', got {self.io!r}")
        if self.convention not in (CONVENTION_COVERAGE_2D, CONVENTION_PARITY_3D):
            raise GadgetError(f"unknown convention {self.convention!r}")

    def removed_when(self, value: bool) -> bool:
        """Whether the junction cell is excluded from the must-tile region."""
        if self.convention == CONVENTION_COVERAGE_2D:
            return value if self.io == "in" else not value
        even = 1 - parity(self.anchor)
        return bool(value) != bool(even if self.io == "in" else 1 - even)


@dataclass(frozen=True)
class GadgetGeometry:
    """Cells, ports, tileset, and the exact tiling-count truth table."""

    name: str
    dim: int
    convention: str
    tileset: tuple[str, ...]
    cells: frozenset[Cell]
    ports: tuple[Port, ...]
    truth_table: Mapping[tuple[bool, ...], int]

    def __post_init__(self) -> None:
        for p in self.ports:
            if p.anchor not in self.cells:
                raise GadgetError(f"port anchor {p.anchor} not a gadget cell")
        for row in self.truth_table:
            if len(row) != len(self.ports):
                raise GadgetError("truth table row width != number of ports")

    def must_tile_cells(self, values: Sequence[bool]) -> frozenset[Cell]:
        """Gadget cells minus junctions covered from outside under `values`."""
        if len(values) != len(self.ports):
            raise GadgetError(
                f"expected {len(self.ports)} port values, got {len(values)}"
            )
        removed = {
            p.anchor
            for p, v in zip(self.ports, values)
            if p.removed_when(bool(v))
        }
        return frozenset(self.cells - removed)

    def expected_count(self, values: Sequence[bool]) -> int:
        return self.truth_table.get(tuple(bool(v) for v in values), 0)

    def translated(self, offset: Cell, name: str | None = None) -> "GadgetGeometry":
        return self.transformed(_identity(self.dim), offset, name)

    def transformed(
        self,
        matrix: tuple[tuple[int, ...], ...],
        offset: Cell,
        name: str | None = None,
    ) -> "GadgetGeometry":
        """Apply a signed-permutation matrix then translate.

        Parity-convention gadgets only admit parity-preserving moves
        (even-sum offsets), since their truth tables depend on cell parity.
        """
        if self.convention == CONVENTION_PARITY_3D and parity(offset) != 0:
            raise GadgetError("parity gadgets require even-parity offsets")
        mv = lambda c: add(_apply(matrix, c), offset)
        ports = tuple(
            Port(mv(p.anchor), _apply(matrix, p.direction), p.io, _phase(mv(p.anchor), self.convention), self.convention)
            for p in self.ports
        )
        return GadgetGeometry(
            name or self.name,
            self.dim,
            self.convention,
            self.tileset,
            frozenset(mv(c) for c in self.cells),
            ports,
            self.truth_table,
        )


def _identity(dim: int) -> tuple[tuple[int, ...], ...]:
    return tuple(tuple(int(i == j) for j in range(dim)) for i in range(dim))


def placement_transforms(dim: int) -> list[tuple[tuple[int, ...], ...]]:
    """All signed-permutation matrices (rotations and reflections)."""
    return _rotation_matrices(dim, reflections=True)


def _phase(cell: Cell, convention: str) -> int:
    if convention == CONVENTION_COVERAGE_2D:
        return phase_color(cell)
    return parity(cell)


# 2D wire construction ---------------------------------------------------------

def perp(d: Cell) -> Cell:
    return (-d[1], d[0])


def neg(d: Cell) -> Cell:
    return tuple(-x for x in d)


def bump_link(j: Cell, direction: Cell, side: int) -> tuple[set[Cell], Cell]:
    """One wire link from junction j: interior {mid, bump}, next junction.

    The link advances two cells along ``direction``; ``side`` (+1/-1) picks
    which perpendicular side holds the bump cell.
    """
    mid = add(j, direction)
    p = perp(direction)
    bump = add(mid, p if side > 0 else neg(p))
    return {mid, bump}, add(mid, direction)


def stalk_cells(j: Cell, direction: Cell, side: int) -> tuple[Cell, Cell, Cell]:
    """(mid, bump, outer junction) of a stalk leaving j along direction."""
    interior, outer = bump_link(j, direction, side)
    mid = add(j, direction)
    (bump,) = interior - {mid}
    return mid, bump, outer


def _with_stalks(
    cells: Iterable[Cell],
    raw_ports: Sequence[tuple[Cell, str, Cell]],
) -> tuple[frozenset[Cell], list[tuple[Cell, str, Cell]]]:
    """Append one stalk per port; the outer junction becomes the new port.

    The bump side is chosen so the stalk neither overlaps nor touches the
    existing cells, which keeps the outer junction's only gadget neighbour
    collinear with the wire approach: no tile can then straddle the boundary.
    """
    grown = set(cells)
    new_ports: list[tuple[Cell, str, Cell]] = []
    for j, io, d in raw_ports:
        for side in (1, -1):
            mid, bump, outer = stalk_cells(j, d, side)
            if {mid, bump, outer} & grown:
                continue
            if any(n in grown for n in neighbors(bump) if n != mid):
                continue
            break
        else:
            raise GadgetError(f"no collision-free stalk at {j} toward {d}")
        grown |= {mid, bump, outer}
        new_ports.append((outer, io, d))
    return frozenset(grown), new_ports


def _gadget2d(
    name: str,
    cells: Iterable[Cell],
    raw_ports: Sequence[tuple[Cell, str, Cell]],
    table: Mapping[tuple[bool, ...], int],
    tileset: tuple[str, ...] = TILESET_2D,
    stalks: bool = True,
) -> GadgetGeometry:
    if stalks:
        full, ports3 = _with_stalks(cells, raw_ports)
    else:
        full, ports3 = frozenset(cells), list(raw_ports)
    ports = tuple(
        Port(a, d, io, _phase(a, CONVENTION_COVERAGE_2D), CONVENTION_COVERAGE_2D)
        for a, io, d in ports3
    )
    table = {tuple(map(bool, k)): v for k, v in table.items()}
    return GadgetGeometry(
        name, 2, CONVENTION_COVERAGE_2D, tileset, full, ports, table
    )


def _gadget3d(
    name: str,
    cells: Iterable[Cell],
    raw_ports: Sequence[tuple[Cell, str, Cell]],
    table: Mapping[tuple[bool, ...], int],
) -> GadgetGeometry:
    ports = tuple(
        Port(a, d, io, _phase(a, CONVENTION_PARITY_3D), CONVENTION_PARITY_3D)
        for a, io, d in raw_ports
    )
    table = {tuple(map(bool, k)): v for k, v in table.items()}
    return GadgetGeometry(
        name, 3, CONVENTION_PARITY_3D, TILESET_3D, frozenset(cells), ports, table
    )


def _build_catalog() -> dict[str, GadgetGeometry]:
    cat: dict[str, GadgetGeometry] = {}

    def put(g: GadgetGeometry) -> None:
        cat[g.name] = g

    # Conjunction: output covered upstream exactly when both inputs are.
    put(_gadget2d(
        "and2d",
        [(0, 1), (1, 1), (0, 0), (1, 0), (1, -1)],
        [((0, 1), "in", N), ((1, 1), "in", N), ((1, -1), "out", S)],
        {(a, b, a and b): 1 for a in (False, True) for b in (False, True)},
    ))
    put(_gadget2d(
        "not2d",
        [(-1, 1), (0, 0), (1, 0), (0, 1), (1, 1), (2, 0)],
        [((-1, 1), "in", W), ((2, 0), "out", E)],
        {(False, True): 1, (True, False): 1},
    ))
    # Free Boolean source: exactly one tiling per output value.
    put(_gadget2d(
        "bulb2d",
        [(0, 0), (1, 0), (0, 1), (1, 1)],
        [((1, 1), "out", N)],
        {(False,): 1, (True,): 1},
    ))
    # Forces its input true: no tiling exists for a false input.
    put(_gadget2d(
        "terminator2d",
        [(0, 0), (1, 0), (2, 0), (2, 1)],
        [((0, 0), "in", W)],
        {(True,): 1},
    ))
    # Fan-out built from an inverting three-cell core plus two inverters.
    is_cells = [(0, 2), (0, 1), (1, 2)]
    not_a = [(0, 1), (-1, 0), (-1, -1), (0, 0), (0, -1), (-1, -2)]
    not_b = [(1, 2), (2, 1), (3, 1), (2, 2), (3, 2), (4, 1)]
    put(_gadget2d(
        "splitter2d",
        set(is_cells) | set(not_a) | set(not_b),
        [((0, 2), "in", N), ((-1, -2), "out", S), ((4, 1), "out", E)],
        {(False, False, False): 1, (True, True, True): 1},
    ))
    # Planar wire crossing: the two signals pass straight through.
    xo = [(0, 0), (0, 1), (1, 0), (1, 2), (2, 0), (2, 1), (2, 2),
          (3, 0), (4, 0), (4, 1), (2, 3), (-1, 1), (2, -1), (5, 1)]
    xo_ports = [((2, 3), "in", N), ((-1, 1), "in", W),
                ((2, -1), "out", S), ((5, 1), "out", E)]
    xo_table = {(a, b, a, b): 1 for a in (False, True) for b in (False, True)}
    put(_gadget2d("crossover2d", xo, xo_ports, xo_table))
    put(_gadget2d("crossover2d_t1", xo, xo_ports, xo_table,
                  tileset=TILESET_2D_TROMINO))
    # Literal source for tromino-only instances: all three outputs agree.
    put(_gadget2d(
        "variable_node",
        [(0, 1), (0, 0), (1, 0)],
        [((0, 1), "out", N), ((0, 0), "out", W), ((1, 0), "out", S)],
        {(False, False, False): 1, (True, True, True): 1},
        tileset=TILESET_2D_TROMINO,
    ))
    # Tileable exactly when one input is true.
    put(_gadget2d(
        "clause_node",
        [(0, 1), (1, 1), (1, 0), (0, 0)],
        [((0, 1), "in", N), ((1, 1), "in", E), ((1, 0), "in", S)],
        {v: 1 for v in itertools.product([False, True], repeat=3) if sum(v) == 1},
        tileset=TILESET_2D_TROMINO,
    ))

    # Wire fragments (verified as two-port gadgets in their own right).
    for ts, suffix in ((TILESET_2D, ""), (TILESET_2D_TROMINO, "_t1")):
        put(_gadget2d(
            "wire2d_straight" + suffix,
            [(0, 0), (1, 0), (1, 1), (2, 0)],
            [((0, 0), "in", W), ((2, 0), "out", E)],
            {(False, False): 1, (True, True): 1},
            tileset=ts, stalks=False,
        ))
        put(_gadget2d(
            "wire2d_turn" + suffix,
            [(0, 0), (1, 0), (1, 1), (2, 0), (2, -1), (3, -1), (2, -2)],
            [((0, 0), "in", W), ((2, -2), "out", S)],
            {(False, False): 1, (True, True): 1},
            tileset=ts, stalks=False,
        ))
        put(_gadget2d(
            "wire2d_jog" + suffix,
            [(0, 0), (1, 0), (1, 1), (2, 1)],
            [((0, 0), "in", W), ((2, 1), "out", E)],
            {(False, False): 1, (True, True): 1},
            tileset=ts, stalks=False,
        ))

    # 3D crossbar gates: three collinear cells fed by zig-zag wires.  With an
    # even centre the output domino direction is forced to the AND of the
    # inputs; shifting the bar to odd centre parity yields OR.
    put(_gadget3d(
        "gate3d_and",
        [(-1, 0, 0), (0, 0, 0), (1, 0, 0)],
        [((1, 0, 0), "in", (0, 1, 0)), ((-1, 0, 0), "in", (0, 1, 0)),
         ((0, 0, 0), "out", (0, 1, 0))],
        {(a, b, a and b): 1 for a in (False, True) for b in (False, True)},
    ))
    put(_gadget3d(
        "gate3d_or",
        [(-1, 0, 1), (0, 0, 1), (1, 0, 1)],
        [((1, 0, 1), "in", (0, 1, 0)), ((-1, 0, 1), "in", (0, 1, 0)),
         ((0, 0, 1), "out", (0, 1, 0))],
        {(a, b, a or b): 1 for a in (False, True) for b in (False, True)},
    ))
    # Fan-out with slack: a true input may emerge on either or both branches;
    # a false input forces both branches false.
    put(_gadget3d(
        "dirty_splitter3d",
        [(-1, 0, 0), (0, 0, 0), (1, 0, 0)],
        [((0, 0, 0), "in", (0, 1, 0)), ((1, 0, 0), "out", (0, 1, 0)),
         ((-1, 0, 0), "out", (0, 1, 0))],
        {(True, True, True): 1, (True, True, False): 1,
         (True, False, True): 1, (False, False, False): 1},
    ))
    put(_gadget3d(
        "terminator3d_true",
        [(0, 0, 0), (0, 1, 0)],
        [((0, 0, 0), "in", (1, 0, 0))],
        {(True,): 1},
    ))
    put(_gadget3d(
        "terminator3d_false",
        [(0, 0, 1), (0, 1, 1)],
        [((0, 0, 1), "in", (1, 0, 0))],
        {(False,): 1},
    ))
    put(_gadget3d(
        "bulb3d",
        [(0, 1, 0), (0, 0, 0), (1, 0, 0), (2, 0, 0)],
        [((0, 1, 0), "out", (0, 1, 0))],
        {(False,): 1, (True,): 1},
    ))
    put(_gadget3d(
        "wire3d_sample",
        [(0, 0, 0), (1, 0, 0), (1, 1, 0), (2, 1, 0), (2, 2, 0)],
        [((0, 0, 0), "in", (-1, 0, 0)), ((2, 2, 0), "out", (0, 1, 0))],
        {(False, False): 1, (True, True): 1},
    ))
    # Both ends are in-ports: the two attached signals must be complementary.
    put(_gadget3d(
        "pairing_wire3d_sample",
        [(0, 0, 0), (1, 0, 0), (1, 1, 0), (2, 1, 0), (2, 2, 0)],
        [((0, 0, 0), "in", (-1, 0, 0)), ((2, 2, 0), "in", (0, 1, 0))],
        {(True, False): 1, (False, True): 1},
    ))
    return cat


CATALOG: dict[str, GadgetGeometry] = _build_catalog()


def get_gadget(name: str) -> GadgetGeometry:
    try:
        return CATALOG[name]
    except KeyError:
        raise GadgetError(f"unknown gadget {name!r}") from None
