"""Exact tiling search: decision, counting, and enumeration over finite regions.

Two independent algorithms are provided.  The main solver is exact-cover
backtracking that always branches on the cell covered by the fewest remaining
placements.  ``oracle_count`` is a structurally different reference
implementation (branch on the lexicographically first uncovered cell) used to
cross-validate the main solver on small inputs.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, Sequence

from .lattice import Cell, LatticeError, Region, TileShape, add

ORACLE_SOFT_CAP = 30


@dataclass(frozen=True)
class Placement:
    """One oriented, translated copy of a tile."""

    tile: str
    orientation: int
    offset: Cell
    cells: frozenset[Cell] = field(compare=False, hash=False)

    def sort_key(self) -> tuple:
        return (self.tile, self.orientation, self.offset)


@dataclass(frozen=True)
class Tiling:
    """An exact partition of a region into placements."""

    placements: tuple[Placement, ...]

    def covered_cells(self) -> frozenset[Cell]:
        out: set[Cell] = set()
        for p in self.placements:
            out |= p.cells
        return frozenset(out)

    def is_partition_of(self, region: Region) -> bool:
        total = sum(len(p.cells) for p in self.placements)
        return total == len(region) and self.covered_cells() == region.cells


def _check_dims(region: Region, tileset: Sequence[TileShape]) -> None:
    for t in tileset:
        if t.dim != region.dim:
            raise LatticeError(
                f"tile {t.name!r} has dim {t.dim}, region has dim {region.dim}"
            )


def placements(region: Region, tileset: Sequence[TileShape]) -> list[Placement]:
    """All placements fully inside the region, in canonical order."""
    _check_dims(region, tileset)
    cells = region.cells
    out: list[Placement] = []
    if not cells:
        return out
    lo, hi = region.bounding_box()
    for tile in tileset:
        for oi, orient in enumerate(tile.orientations()):
            omax = [max(c[i] for c in orient) for i in range(region.dim)]
            from itertools import product

            ranges = [range(lo[i], hi[i] - omax[i] + 1) for i in range(region.dim)]
            for off in product(*ranges):
                placed = frozenset(add(c, off) for c in orient)
                if placed <= cells:
                    out.append(Placement(tile.name, oi, tuple(off), placed))
    out.sort(key=Placement.sort_key)
    return out


def _area_prunable(n_cells: int, tileset: Sequence[TileShape]) -> bool:
    """True if simple size arithmetic already rules out any exact cover."""
    sizes = sorted({t.size for t in tileset})
    if not sizes:
        return n_cells > 0
    if len(sizes) == 1:
        return n_cells % sizes[0] != 0
    # With mixed sizes, reachability of n as a nonneg combination; cheap DP.
    reach = [False] * (n_cells + 1)
    reach[0] = True
    for i in range(1, n_cells + 1):
        reach[i] = any(i >= s and reach[i - s] for s in sizes)
    return not reach[n_cells]


class _Search:
    """Shared backtracking core over a cell → placements index."""

    def __init__(self, region: Region, tileset: Sequence[TileShape]):
        self.cells = region.sorted_cells()
        self.all_placements = placements(region, tileset)
        self.by_cell: dict[Cell, list[Placement]] = {c: [] for c in self.cells}
        for p in self.all_placements:
            for c in p.cells:
                self.by_cell[c].append(p)

    def _pick_most_constrained(self, uncovered: set[Cell], active: dict[Cell, int]) -> Cell:
        return min(uncovered, key=lambda c: (active[c], c))

    def iter_tilings(self, most_constrained: bool) -> Iterator[tuple[Placement, ...]]:
        """Exact-cover search with incremental candidate counts.

        Each uncovered cell tracks how many placements can still cover it;
        cells with at most one candidate are branched on first, so forced
        runs (corridors, wires) propagate without scanning.  An explicit
        stack avoids the interpreter recursion limit on large regions.
        """
        uncovered = set(self.cells)
        if not uncovered:
            yield ()
            return
        P = self.all_placements
        by_cell_idx: dict[Cell, list[int]] = {c: [] for c in self.cells}
        for i, p in enumerate(P):
            for c in p.cells:
                by_cell_idx[c].append(i)
        alive = [True] * len(P)
        col_size = {c: len(by_cell_idx[c]) for c in self.cells}
        tight = {c for c, s in col_size.items() if s <= 1}

        def cover(pi: int) -> tuple[list[Cell], list[int]]:
            cols = sorted(P[pi].cells)
            for c in cols:
                uncovered.discard(c)
                tight.discard(c)
            kills: list[int] = []
            for c in cols:
                for qi in by_cell_idx[c]:
                    if alive[qi]:
                        alive[qi] = False
                        kills.append(qi)
                        for c2 in P[qi].cells:
                            if c2 in uncovered:
                                s = col_size[c2] - 1
                                col_size[c2] = s
                                if s <= 1:
                                    tight.add(c2)
            return cols, kills

        def uncover(cols: list[Cell], kills: list[int]) -> None:
            for qi in reversed(kills):
                alive[qi] = True
                for c2 in P[qi].cells:
                    if c2 in uncovered:
                        s = col_size[c2] + 1
                        col_size[c2] = s
                        if s > 1:
                            tight.discard(c2)
            for c in cols:
                uncovered.add(c)
                if col_size[c] <= 1:
                    tight.add(c)

        def branch() -> list[int]:
            if tight:
                cell = min(tight)
            elif most_constrained:
                cell = min(uncovered, key=lambda c: (col_size[c], c))
            else:
                cell = min(uncovered)
            return [qi for qi in by_cell_idx[cell] if alive[qi]]

        chosen: list[int] = []
        trail: list[tuple[list[Cell], list[int]]] = []
        stack: list[list[int]] = [branch()]
        while stack:
            cands = stack[-1]
            if not cands:
                stack.pop()
                if chosen:
                    chosen.pop()
                    uncover(*trail.pop())
                continue
            pi = cands.pop(0)
            trail.append(cover(pi))
            chosen.append(pi)
            if not uncovered:
                yield tuple(P[i] for i in chosen)
                chosen.pop()
                uncover(*trail.pop())
            else:
                stack.append(branch())


def count_tilings(region: Region, tileset: Sequence[TileShape]) -> int:
    """Exact number of distinct tilings (arbitrary precision)."""
    _check_dims(region, tileset)
    if not region.cells:
        return 1
    if _area_prunable(len(region), tileset):
        return 0
    search = _Search(region, tileset)
    return sum(1 for _ in search.iter_tilings(most_constrained=True))


def exists_tiling(region: Region, tileset: Sequence[TileShape]) -> bool:
    """True iff at least one tiling exists; the empty region is tilable."""
    _check_dims(region, tileset)
    if not region.cells:
        return True
    if _area_prunable(len(region), tileset):
        return False
    search = _Search(region, tileset)
    return next(search.iter_tilings(most_constrained=True), None) is not None


def enumerate_tilings(
    region: Region, tileset: Sequence[TileShape], limit: int
) -> tuple[list[Tiling], bool]:
    """Up to ``limit`` tilings in deterministic order, plus a truncation flag."""
    if limit <= 0:
        raise ValueError("limit must be positive")
    _check_dims(region, tileset)
    if not region.cells:
        return [Tiling(())], False
    if _area_prunable(len(region), tileset):
        return [], False
    search = _Search(region, tileset)
    out: list[Tiling] = []
    it = search.iter_tilings(most_constrained=True)
    for placed in it:
        out.append(Tiling(tuple(sorted(placed, key=Placement.sort_key))))
        if len(out) == limit:
            truncated = next(it, None) is not None
            return out, truncated
    return out, False


def oracle_count(region: Region, tileset: Sequence[TileShape]) -> int:
    """Reference count by branching on the lexicographically first free cell.

    Intended for small regions only (soft cap ``ORACLE_SOFT_CAP`` cells); it
    performs no clever pruning and exists to cross-check count_tilings.
    """
    _check_dims(region, tileset)
    if not region.cells:
        return 1
    if len(region) > ORACLE_SOFT_CAP:
        raise ValueError(
            f"oracle_count is limited to ~{ORACLE_SOFT_CAP} cells; got {len(region)}"
        )
    search = _Search(region, tileset)
    return sum(1 for _ in search.iter_tilings(most_constrained=False))
