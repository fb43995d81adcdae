"""Integer-lattice geometry: cells, regions, tile shapes, colorings, file I/O.

Cells are plain tuples of ints (length 2, 3 or 4).  Regions and tile shapes
are immutable; every function here is pure.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

Cell = tuple[int, ...]

SUPPORTED_DIMS = (2, 3, 4)

SYMMETRY_FIXED = "fixed"
SYMMETRY_ROTATIONS = "rotations"
SYMMETRY_FULL = "rotations+reflections"

_SYMMETRIES = (SYMMETRY_FIXED, SYMMETRY_ROTATIONS, SYMMETRY_FULL)


class LatticeError(ValueError):
    """Invalid lattice data (bad dimension, disconnected shape, ...)."""


def _check_dim(cells: Iterable[Cell]) -> int:
    dims = {len(c) for c in cells}
    if len(dims) != 1:
        raise LatticeError(f"mixed or missing dimensions: {sorted(dims)}")
    (d,) = dims
    if d not in SUPPORTED_DIMS:
        raise LatticeError(f"unsupported dimension {d}")
    return d


def unit_steps(dim: int) -> list[Cell]:
    """All 2*dim signed unit vectors."""
    steps = []
    for axis in range(dim):
        for sign in (1, -1):
            v = [0] * dim
            v[axis] = sign
            steps.append(tuple(v))
    return steps


def add(c: Cell, v: Cell) -> Cell:
    return tuple(a + b for a, b in zip(c, v))


def neighbors(c: Cell) -> list[Cell]:
    return [add(c, s) for s in unit_steps(len(c))]


def is_connected(cells: Iterable[Cell]) -> bool:
    """Unit-step connectivity; the empty set counts as connected."""
    cells = set(cells)
    if not cells:
        return True
    _check_dim(cells)
    start = min(cells)
    seen = {start}
    stack = [start]
    while stack:
        cur = stack.pop()
        for nb in neighbors(cur):
            if nb in cells and nb not in seen:
                seen.add(nb)
                stack.append(nb)
    return len(seen) == len(cells)


def parity(cell: Cell) -> int:
    """Checkerboard color: (sum of coordinates) mod 2. 0 = even, 1 = odd."""
    return sum(cell) % 2


def phase_color(cell: Cell) -> int:
    """Five-coloring (x + 2y) mod 5 of the plane, periodic under knight moves."""
    if len(cell) != 2:
        raise LatticeError("phase_color is defined for 2D cells only")
    x, y = cell
    return (x + 2 * y) % 5


def normalize_cells(cells: Iterable[Cell]) -> frozenset[Cell]:
    """Translate a nonempty connected cell set so every axis minimum is 0.

    Idempotent and translation-invariant; raises on empty, disconnected or
    mixed-dimension input.
    """
    cells = frozenset(cells)
    if not cells:
        raise LatticeError("empty cell set")
    d = _check_dim(cells)
    if not is_connected(cells):
        raise LatticeError("disconnected cell set")
    mins = [min(c[i] for c in cells) for i in range(d)]
    return frozenset(tuple(x - m for x, m in zip(c, mins)) for c in cells)


def _rotation_matrices(dim: int, reflections: bool) -> list[tuple[tuple[int, ...], ...]]:
    """Hypercubic symmetry group as signed permutation matrices.

    Signed permutations with determinant +1 are the proper rotations;
    including determinant -1 gives the full group with reflections.
    """
    from itertools import permutations, product

    mats = []
    for perm in permutations(range(dim)):
        for signs in product((1, -1), repeat=dim):
            det_sign = 1
            # parity of the permutation
            inv = 0
            for i in range(dim):
                for j in range(i + 1, dim):
                    if perm[i] > perm[j]:
                        inv += 1
            det_sign = (-1) ** inv
            for s in signs:
                det_sign *= s
            if reflections or det_sign == 1:
                rows = []
                for i in range(dim):
                    row = [0] * dim
                    row[perm[i]] = signs[i]
                    rows.append(tuple(row))
                mats.append(tuple(rows))
    return mats


def _apply(mat: tuple[tuple[int, ...], ...], cell: Cell) -> Cell:
    return tuple(sum(m * x for m, x in zip(row, cell)) for row in mat)


@dataclass(frozen=True)
class TileShape:
    """A canonical polyomino/polycube with a symmetry policy."""

    name: str
    cells: frozenset[Cell]
    symmetry: str = SYMMETRY_ROTATIONS

    def __post_init__(self) -> None:
        if self.symmetry not in _SYMMETRIES:
            raise LatticeError(f"unknown symmetry {self.symmetry!r}")
        canon = normalize_cells(self.cells)
        object.__setattr__(self, "cells", canon)

    @property
    def dim(self) -> int:
        return len(next(iter(self.cells)))

    @property
    def size(self) -> int:
        return len(self.cells)

    def orientations(self) -> list[frozenset[Cell]]:
        """Distinct normalized images under the requested symmetry group."""
        if self.symmetry == SYMMETRY_FIXED:
            return [self.cells]
        mats = _rotation_matrices(self.dim, self.symmetry == SYMMETRY_FULL)
        seen = set()
        out = []
        for mat in mats:
            img = normalize_cells(_apply(mat, c) for c in self.cells)
            if img not in seen:
                seen.add(img)
                out.append(img)
        out.sort(key=lambda s: sorted(s))
        return out


@dataclass(frozen=True)
class Region:
    """A finite set of lattice cells of one dimension."""

    cells: frozenset[Cell]
    dim: int = field(default=0)

    def __post_init__(self) -> None:
        cells = frozenset(self.cells)
        if cells:
            d = _check_dim(cells)
            if self.dim and self.dim != d:
                raise LatticeError(f"declared dim {self.dim} != cell dim {d}")
            object.__setattr__(self, "dim", d)
        elif self.dim not in SUPPORTED_DIMS:
            raise LatticeError("empty region needs an explicit dim in {2,3,4}")
        object.__setattr__(self, "cells", cells)

    def __len__(self) -> int:
        return len(self.cells)

    def __contains__(self, cell: Cell) -> bool:
        return cell in self.cells

    def sorted_cells(self) -> list[Cell]:
        """Canonical (lexicographic) cell order used everywhere for determinism."""
        return sorted(self.cells)

    def translate(self, v: Cell) -> "Region":
        return Region(frozenset(add(c, v) for c in self.cells), self.dim)

    def union(self, other: "Region") -> "Region":
        if other.dim != self.dim:
            raise LatticeError("dimension mismatch in union")
        return Region(self.cells | other.cells, self.dim)

    def is_connected(self) -> bool:
        return is_connected(self.cells)

    def bounding_box(self) -> tuple[Cell, Cell]:
        if not self.cells:
            raise LatticeError("empty region has no bounding box")
        lo = tuple(min(c[i] for c in self.cells) for i in range(self.dim))
        hi = tuple(max(c[i] for c in self.cells) for i in range(self.dim))
        return lo, hi


def region_from_cells(cells: Iterable[Cell], dim: int | None = None) -> Region:
    cells = frozenset(cells)
    if not cells:
        if dim is None:
            raise LatticeError("empty region needs an explicit dim")
        return Region(cells, dim)
    return Region(cells)


def box_region(*sizes: int) -> Region:
    """Axis-aligned box [0,s1) x [0,s2) x ... as a Region."""
    from itertools import product

    return Region(frozenset(product(*(range(s) for s in sizes))))


# Built-in tile shapes ------------------------------------------------------

def _shape(name: str, cells: Sequence[Cell], symmetry: str = SYMMETRY_ROTATIONS) -> TileShape:
    return TileShape(name, frozenset(cells), symmetry)


BUILTIN_TILES: dict[str, TileShape] = {
    t.name: t
    for t in (
        _shape("right_tromino", [(0, 0), (1, 0), (0, 1)]),
        _shape("square_tetromino", [(0, 0), (1, 0), (0, 1), (1, 1)]),
        _shape("domino2", [(0, 0), (1, 0)]),
        _shape("domino3", [(0, 0, 0), (1, 0, 0)]),
        _shape("straight_tromino3", [(0, 0, 0), (1, 0, 0), (2, 0, 0)]),
        _shape("domino4", [(0, 0, 0, 0), (1, 0, 0, 0)]),
        _shape("straight_tromino4", [(0, 0, 0, 0), (1, 0, 0, 0), (2, 0, 0, 0)]),
    )
}


def builtin_tileset(names: Iterable[str]) -> list[TileShape]:
    out = []
    for n in names:
        if n not in BUILTIN_TILES:
            raise LatticeError(f"unknown built-in tile {n!r}")
        out.append(BUILTIN_TILES[n])
    return out


# File formats --------------------------------------------------------------

def parse_region(text: str) -> Region:
    """Parse the region file format: `dim D` line, then one cell per line."""
    dim = None
    cells: list[Cell] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if dim is None:
            parts = line.split()
            if len(parts) != 2 or parts[0] != "dim":
                raise LatticeError(f"line {lineno}: expected 'dim D' header")
            dim = int(parts[1])
            if dim not in SUPPORTED_DIMS:
                raise LatticeError(f"line {lineno}: dim must be one of {SUPPORTED_DIMS}")
            continue
        parts = line.split()
        if len(parts) != dim:
            raise LatticeError(f"line {lineno}: expected {dim} coordinates")
        cells.append(tuple(int(p) for p in parts))
    if dim is None:
        raise LatticeError("missing 'dim D' header")
    if len(set(cells)) != len(cells):
        raise LatticeError("duplicate cells in region file")
    return region_from_cells(cells, dim)


def emit_region(region: Region) -> str:
    lines = [f"dim {region.dim}"]
    for c in region.sorted_cells():
        lines.append(" ".join(str(x) for x in c))
    return "\n".join(lines) + "\n"


def parse_tileset(text: str) -> list[TileShape]:
    """Parse tileset files: blocks of `tile NAME` / `symmetry S` / cell lines."""
    tiles: list[TileShape] = []
    name = None
    symmetry = SYMMETRY_ROTATIONS
    cells: list[Cell] = []

    def flush() -> None:
        nonlocal name, symmetry, cells
        if name is None:
            return
        if not cells:
            raise LatticeError(f"tile {name!r} has no cells")
        tiles.append(TileShape(name, frozenset(cells), symmetry))
        name, symmetry, cells = None, SYMMETRY_ROTATIONS, []

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if parts[0] == "tile":
            flush()
            if len(parts) != 2:
                raise LatticeError(f"line {lineno}: expected 'tile NAME'")
            if parts[1] in BUILTIN_TILES and len(parts) == 2:
                name = parts[1]
            else:
                name = parts[1]
        elif parts[0] == "symmetry":
            if name is None:
                raise LatticeError(f"line {lineno}: 'symmetry' before any tile")
            if parts[1] not in _SYMMETRIES:
                raise LatticeError(f"line {lineno}: unknown symmetry {parts[1]!r}")
            symmetry = parts[1]
        else:
            if name is None:
                raise LatticeError(f"line {lineno}: cell line before any tile")
            cells.append(tuple(int(p) for p in parts))
    flush()
    if not tiles:
        raise LatticeError("empty tileset file")
    return tiles


def emit_tileset(tiles: Sequence[TileShape]) -> str:
    lines = []
    for t in tiles:
        lines.append(f"tile {t.name}")
        lines.append(f"symmetry {t.symmetry}")
        for c in sorted(t.cells):
            lines.append(" ".join(str(x) for x in c))
    return "\n".join(lines) + "\n"
