"""Compilers from logic instances to lattice tiling regions.

Three compilers share a deterministic layout engine:

* ``compile_circuit_2d``: Boolean circuit -> square-lattice region over
  {right tromino, square tetromino}; tilings correspond one-to-one with
  satisfying assignments.
* ``compile_1in3_2d``: cubic monotone 1-in-3 formula -> region over
  {right tromino} tilable iff the formula is satisfiable.
* ``compile_monotone_3d``: NOT-free circuit with complementary input pairs
  -> cubic-lattice region over {domino, straight tromino} tilable iff
  satisfiable (not parsimonious: fan-out uses dirty splitters).

``lift_4d`` embeds any 3D region into a simply-connected 4D region with the
exact same tiling count.

2D layout: gadgets sit in one row; every port is led by a short adapter wire
to a "pin" on a common horizontal line; each net runs from its source pin up
a vertical riser to a private horizontal track and down a riser into the
sink pin.  Risers and tracks cross at isolated points where a crossover
gadget is spliced into both wires.  All choices are lexicographic, so
compiled regions are byte-reproducible.
"""

from __future__ import annotations

import heapq
import itertools
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .formula import (
    Circuit,
    Formula1in3,
    FormulaError,
    MonotonePairing,
    occurrence_counts,
)
from .gadgets import (
    CATALOG,
    GadgetGeometry,
    Port,
    TILESET_2D,
    TILESET_2D_TROMINO,
    TILESET_3D,
    get_gadget,
)
from .lattice import Cell, Region, add, neighbors


class CompileError(ValueError):
    """Layout or routing failed (with an explanation)."""


def gadget(name: str) -> GadgetGeometry:
    """Catalog lookup (verified geometry by name)."""
    return get_gadget(name)


@dataclass(frozen=True)
class PlacedInstance:
    """A compiled region plus the bookkeeping needed to interpret it."""

    region: Region
    tileset: tuple[str, ...]
    input_map: Mapping[str, Cell]  # input name -> source port junction
    output_port: Cell | None
    provenance: tuple[str, ...]

    def provenance_text(self) -> str:
        return "\n".join(self.provenance) + "\n"


# 2D wire pieces ---------------------------------------------------------------

_E, _N, _W, _S = (1, 0), (0, 1), (-1, 0), (0, -1)


def _perp_left(d: Cell) -> Cell:
    return (-d[1], d[0])


def _neg(d: Cell) -> Cell:
    return (-d[0], -d[1])


def _mat_cols(c1: Cell, c2: Cell) -> tuple[tuple[int, int], tuple[int, int]]:
    """Matrix with the given images of the x and y unit vectors."""
    return ((c1[0], c2[0]), (c1[1], c2[1]))


@dataclass(frozen=True)
class _Piece:
    """One placed wire fragment: a transformed catalog wire gadget."""

    kind: str
    cells: frozenset[Cell]
    start: Cell
    end: Cell
    heading: Cell  # heading after the piece


class _PieceSet:
    """Straight / turn / jog fragments for one 2D tileset."""

    def __init__(self, suffix: str):
        self.suffix = suffix
        self._straight = get_gadget("wire2d_straight" + suffix)
        self._turn = get_gadget("wire2d_turn" + suffix)
        self._jog = get_gadget("wire2d_jog" + suffix)
        self.crossover = get_gadget(
            "crossover2d" + ("_t1" if suffix else "")
        )

    def _place(self, base: GadgetGeometry, kind: str, mat, start: Cell,
               end_local: Cell, heading: Cell) -> _Piece:
        g = base.transformed(mat, start)
        from .lattice import _apply

        end = add(_apply(mat, end_local), start)
        return _Piece(kind, g.cells, start, end, heading)

    def straight(self, j: Cell, heading: Cell,
                 side: Cell | None = None) -> _Piece:
        # `side` picks the off-axis cell's side (the tilesets are closed
        # under reflection, so both mirror forms carry the same counts).
        mat = _mat_cols(heading, side or _perp_left(heading))
        return self._place(self._straight, "straight", mat, j, (2, 0), heading)

    def turn(self, j: Cell, heading: Cell, new_heading: Cell) -> _Piece:
        if new_heading in (heading, _neg(heading)):
            raise CompileError("turn must change axis")
        mat = _mat_cols(heading, _neg(new_heading))
        return self._place(self._turn, "turn", mat, j, (2, -2), new_heading)

    def jog(self, j: Cell, heading: Cell, side: Cell) -> _Piece:
        if side in (heading, _neg(heading)):
            raise CompileError("jog side must be perpendicular")
        mat = _mat_cols(heading, side)
        return self._place(self._jog, "jog", mat, j, (2, 1), heading)

    def moves(self, j: Cell, heading: Cell) -> list[_Piece]:
        out = [self.straight(j, heading)]
        for side in (_perp_left(heading), _neg(_perp_left(heading))):
            out.append(self.jog(j, heading, side))
            out.append(self.turn(j, heading, side))
        return out


class _Canvas:
    """Committed cells with overlap/adjacency accounting."""

    def __init__(self) -> None:
        self.cells: dict[Cell, int] = {}
        self.next_owner = 0

    def new_owner(self) -> int:
        self.next_owner += 1
        return self.next_owner

    def commit(self, cells: Iterable[Cell], owner: int,
               shared: frozenset[Cell] = frozenset()) -> None:
        for c in cells:
            if c in self.cells and c not in shared:
                raise CompileError(f"cell collision at {c}")
            self.cells.setdefault(c, owner)

    def piece_ok(self, piece: _Piece, exempt: frozenset[Cell]) -> bool:
        """No overlap, and no adjacency to committed cells except `exempt`."""
        new = piece.cells - {piece.start}
        for c in new:
            if c in self.cells:
                return False
            for nb in neighbors(c):
                if nb in self.cells and nb not in exempt:
                    return False
        return True


def _route_adapter(
    canvas: _Canvas,
    pieces: _PieceSet,
    start: Cell,
    start_heading: Cell,
    goal: Cell,
    goal_heading: Cell,
    bounds: tuple[int, int, int, int],
    prev_cells: frozenset[Cell],
) -> list[_Piece]:
    """Least-piece route from (start, heading) to (goal, heading).

    Pieces may not overlap or touch committed cells, except that contact
    with `prev_cells` (the stalk or piece behind the start junction) is
    allowed for the first piece.
    """
    x0, y0, x1, y1 = bounds
    init = (start, start_heading)
    best: dict[tuple[Cell, Cell], int] = {init: 0}
    frontier: list[tuple[int, int, Cell, Cell]] = [(0, 0, start, start_heading)]
    came: dict[tuple[Cell, Cell], tuple[tuple[Cell, Cell], _Piece]] = {}
    tie = itertools.count(1)
    while frontier:
        cost, _, j, h = heapq.heappop(frontier)
        if (j, h) == (goal, goal_heading):
            path: list[_Piece] = []
            key = (j, h)
            while key != init:
                key, piece = came[key]
                path.append(piece)
            return list(reversed(path))
        if cost > best.get((j, h), -1):
            continue
        at_start = (j, h) == init
        exempt = prev_cells | {j} if at_start else frozenset({j})
        for piece in pieces.moves(j, h):
            ex, ey = piece.end
            if not (x0 <= ex <= x1 and y0 <= ey <= y1):
                continue
            # The top line is reserved for pins: wires may only touch it
            # on the final approach into the goal pin.
            if ey == y1 and (piece.end, piece.heading) != (goal, goal_heading):
                continue
            # The first piece may sit next to a neighbouring port's wire
            # (adjacent parallel links cannot trade tiles: a tile taking a
            # link's middle cell strands that link's bump cell), but must
            # not overlap anything.
            if at_start:
                if piece.cells - {piece.start} & canvas.cells.keys():
                    continue
            elif not canvas.piece_ok(piece, exempt):
                continue
            key = (piece.end, piece.heading)
            ncost = cost + (1 if piece.kind == "straight" else 2)
            if ncost < best.get(key, 1 << 30):
                best[key] = ncost
                came[key] = ((j, h), piece)
                heapq.heappush(frontier, (ncost, next(tie), *key))
    raise CompileError(f"no adapter route from {start} to {goal}")


# 2D layout engine --------------------------------------------------------------

@dataclass
class _Node:
    """One gadget to place, with symbolic port connectivity."""

    name: str  # catalog gadget name
    label: str  # instance label for provenance


@dataclass
class _Net:
    src: tuple[int, int]  # (node index, port index)
    dst: tuple[int, int]


@dataclass
class _Crossing:
    riser_net: int
    riser_end: str  # "src" (flow up) or "dst" (flow down)
    track_net: int


class _Layout2D:
    """Single-row gadget placement with track/riser net routing.

    Half-extents: a plain riser occupies two columns around its pin and a
    plain track two rows; a riser or track carrying crossovers needs room
    for the crossover footprint on both sides.
    """

    RISER_HALF = 2
    RISER_HALF_WIDE = 8
    TRACK_HALF = 2
    TRACK_HALF_WIDE = 7

    def __init__(self, nodes: Sequence[_Node], nets: Sequence[_Net],
                 pieces: _PieceSet):
        self.nodes = list(nodes)
        self.nets = list(nets)
        self.pieces = pieces
        self.canvas = _Canvas()
        self.provenance: list[str] = []
        self.placed: list[GadgetGeometry] = []

    # -- symbolic phase --------------------------------------------------

    @staticmethod
    def _perimeter_order(g: GadgetGeometry) -> list[int]:
        """Port indices in the order their escape wires meet the pin line.

        West ports swing over the top first (leftmost pins), then north
        ports left to right, then the east port, then south ports, which
        wrap around the east side (rightmost pins).  Escape wires routed on
        lanes that descend in this order never cross.
        """
        side_rank = {_W: 0, _N: 1, _E: 2, _S: 3}

        def key(pi: int) -> tuple:
            p = g.ports[pi]
            s = side_rank[p.direction]
            tie = {_W: p.anchor[1], _N: p.anchor[0],
                   _E: -p.anchor[1], _S: -p.anchor[0]}[p.direction]
            return (s, tie, pi)

        return sorted(range(len(g.ports)), key=key)

    def _pin_order(self) -> list[tuple[int, int]]:
        order = []
        for ni, node in enumerate(self.nodes):
            g = get_gadget(node.name)
            for pi in self._perimeter_order(g):
                order.append((ni, pi))
        return order

    def _crossings(self, pin_rank: dict[tuple[int, int], int]
                   ) -> list[_Crossing]:
        """Riser/track crossings, determined by pin and track order alone.

        Net k's track sits above net m's track iff k > m; the risers of net
        k then cross track m exactly when track m's horizontal span strictly
        contains the riser's pin.
        """
        out = []
        for k, net in enumerate(self.nets):
            for m in range(k):
                lo = min(pin_rank[self.nets[m].src], pin_rank[self.nets[m].dst])
                hi = max(pin_rank[self.nets[m].src], pin_rank[self.nets[m].dst])
                for end in ("src", "dst"):
                    r = pin_rank[net.src if end == "src" else net.dst]
                    if lo < r < hi:
                        out.append(_Crossing(k, end, m))
        return out

    # -- geometric phase ---------------------------------------------------

    def _build_adapter(self, port, rank: int, pin: Cell, y_top: int,
                       gx1: int, second_north: bool) -> int:
        """Emit the escape wire from a gadget port to its pin.

        Shape: leave the gadget, rise to the lane reserved for this port's
        perimeter rank (lanes descend with rank, so wires nest without
        crossing), run east, and climb into the pin.  Jogs absorb parity
        mismatches: a vertical jog shifts the column by one, a horizontal
        jog shifts the lane by one.
        """
        owner = self.canvas.new_owner()
        count = 0

        def emit(piece: _Piece) -> Cell:
            nonlocal count
            self.canvas.commit(piece.cells, owner,
                               frozenset({piece.start, piece.end}))
            count += 1
            return piece.end

        ps = self.pieces
        j, d = port.anchor, port.direction
        rise_side = None  # default: off-axis cell west of the column
        if d == _N:
            if second_north:
                # Adjacent north ports: step one column east immediately so
                # the two climbs do not overlap.
                j = emit(ps.jog(j, _N, _E))
                rise_side = _E
        elif d == _W:
            j = emit(ps.straight(j, _W))
            j = emit(ps.turn(j, _W, _N))
            rise_side = _W
        elif d == _E:
            j = emit(ps.straight(j, _E))
            j = emit(ps.turn(j, _E, _N))
            rise_side = _E
        else:  # south: wrap under and around the east side
            j = emit(ps.straight(j, _S))
            j = emit(ps.turn(j, _S, _E))
            xw = gx1 + 10
            xw += (xw - j[0]) % 2
            while j[0] != xw - 2:
                j = emit(ps.straight(j, _E))
            j = emit(ps.turn(j, _E, _N))
            rise_side = _E
        lane = y_top - 6 - 4 * rank
        stop = lane - 2 if j[1] % 2 == 0 else lane - 1
        while j[1] != stop:
            j = emit(ps.straight(j, _N, rise_side))
        j = emit(ps.turn(j, _N, _E))
        if j[1] % 2:
            j = emit(ps.jog(j, _E, _S))
        xt = pin[0] if (pin[0] - j[0]) % 2 == 0 else pin[0] - 1
        while j[0] != xt - 2:
            j = emit(ps.straight(j, _E))
        j = emit(ps.turn(j, _E, _N))
        if j[0] != pin[0]:
            j = emit(ps.jog(j, _N, _E))
        while j[1] != y_top:
            j = emit(ps.straight(j, _N))
        if j != pin:
            raise CompileError(f"adapter missed pin {pin}, ended at {j}")
        return count

    def build(self) -> tuple[Region, dict[tuple[int, int], Cell]]:
        pin_order = self._pin_order()
        pin_rank = {p: i for i, p in enumerate(pin_order)}
        crossings = self._crossings(pin_rank)
        wide_riser = {
            (c.riser_net, c.riser_end) for c in crossings
        }
        wide_track = {c.track_net for c in crossings}
        riser_of_pin: dict[tuple[int, int], tuple[int, str]] = {}
        for k, net in enumerate(self.nets):
            riser_of_pin[net.src] = (k, "src")
            riser_of_pin[net.dst] = (k, "dst")

        # Place gadgets and assign pin x coordinates left to right.
        geoms = [get_gadget(n.name) for n in self.nodes]
        halves = {
            p: (self.RISER_HALF_WIDE
                if riser_of_pin.get(p) in wide_riser else self.RISER_HALF)
            for p in pin_order
        }
        pin_x: dict[tuple[int, int], int] = {}
        x = 0
        max_top = 0
        for ni, g in enumerate(geoms):
            lo = tuple(min(c[i] for c in g.cells) for i in range(2))
            hi = tuple(max(c[i] for c in g.cells) for i in range(2))
            placed = g.translated((x - lo[0], -lo[1]))
            owner = self.canvas.new_owner()
            self.canvas.commit(placed.cells, owner)
            self.placed.append(placed)
            self.provenance.append(
                f"gadget {self.nodes[ni].label} {g.name} at "
                f"({x - lo[0]},{-lo[1]})"
            )
            max_top = max(max_top, hi[1] - lo[1])
            px = x + (hi[0] - lo[0]) + 14
            px += px % 2  # risers and tracks live on the even sublattice
            prev_half = 2
            for pi in self._perimeter_order(g):
                half = halves[(ni, pi)]
                gap = prev_half + half + 2
                px += gap + gap % 2
                pin_x[(ni, pi)] = px
                prev_half = half
            x = px + prev_half + 12

        # Headroom above the gadget row for up to four escape lanes.
        y_top = max_top + 22
        y_top += y_top % 2
        pins = {p: (pin_x[p], y_top) for p in pin_order}

        # Track y coordinates, spaced by the tracks' half-extents.
        track_y: dict[int, int] = {}
        ty = y_top
        prev_half = 2
        for k in range(len(self.nets)):
            half = (self.TRACK_HALF_WIDE if k in wide_track
                    else self.TRACK_HALF)
            gap = prev_half + half + 3
            ty += gap + gap % 2
            track_y[k] = ty
            prev_half = half

        # Crossover gadgets, spliced into both wires.
        riser_macros: dict[tuple[int, str], list[tuple[int, GadgetGeometry]]] = {}
        track_macros: dict[int, list[tuple[int, GadgetGeometry]]] = {}
        base = self.pieces.crossover
        for c in crossings:
            net = self.nets[c.riser_net]
            pin = net.src if c.riser_end == "src" else net.dst
            x_p = pins[pin][0]
            y_m = track_y[c.track_net]
            tnet = self.nets[c.track_net]
            east = pin_rank[tnet.dst] > pin_rank[tnet.src]
            sy = 1 if c.riser_end == "dst" else -1  # base form flows downward
            sx = 1 if east else -1
            mat = ((sx, 0), (0, sy))
            g0 = base.transformed(mat, (0, 0))
            # Align: vertical ports one cell east of the riser, horizontal
            # ports level with the track.
            vy = [p for p in g0.ports if p.direction[0] == 0]
            hx = [p for p in g0.ports if p.direction[1] == 0]
            tx_off = x_p + 1 - vy[0].anchor[0]
            ty_off = y_m - hx[0].anchor[1]
            g = base.transformed(mat, (tx_off, ty_off), name="crossover")
            owner = self.canvas.new_owner()
            self.canvas.commit(g.cells, owner)
            self.placed.append(g)
            self.provenance.append(
                f"crossover nets {c.riser_net}/{c.track_net} at "
                f"({tx_off},{ty_off})"
            )
            riser_macros.setdefault((c.riser_net, c.riser_end), []).append(
                (y_m, g))
            track_macros.setdefault(c.track_net, []).append((x_p, g))

        # Adapters: each port escapes to its pin along a reserved lane.
        for ni, g in enumerate(self.placed[: len(self.nodes)]):
            order = self._perimeter_order(g)
            north = [pi for pi in order if g.ports[pi].direction == _N]
            gx1 = max(c[0] for c in g.cells)
            for rank, pi in enumerate(order):
                n = self._build_adapter(
                    g.ports[pi], rank, pins[(ni, pi)], y_top, gx1,
                    second_north=(g.ports[pi].direction == _N
                                  and north.index(pi) == 1),
                )
                self.provenance.append(
                    f"adapter node{ni} port{pi} {g.ports[pi].anchor}->"
                    f"{pins[(ni, pi)]} ({n} pieces)"
                )

        # Nets: riser up, track across, riser down.
        for k, net in enumerate(self.nets):
            sx_, tx_ = pins[net.src][0], pins[net.dst][0]
            y_m = track_y[k]
            owner = self.canvas.new_owner()
            n_pieces = 0

            def emit(piece: _Piece) -> Cell:
                nonlocal n_pieces
                self.canvas.commit(piece.cells, owner,
                                   frozenset({piece.start, piece.end}))
                n_pieces += 1
                if n_pieces > 100000:
                    raise CompileError("net wire failed to terminate")
                return piece.end

            def vertical(x_r: int, j: Cell, heading: Cell, y_stop: int,
                         macros: list[tuple[int, GadgetGeometry]]) -> Cell:
                up = heading == _N
                for _y, g in sorted(macros, reverse=not up):
                    enter = next(p for p in g.ports
                                 if p.direction == (_S if up else _N))
                    exit_ = next(p for p in g.ports
                                 if p.direction == (_N if up else _S))
                    while j[1] != enter.anchor[1] - 2 * heading[1]:
                        j = emit(self.pieces.straight(j, heading))
                    side = (1 if enter.anchor[0] > j[0] else -1, 0)
                    j = emit(self.pieces.jog(j, heading, side))
                    if j != enter.anchor:
                        raise CompileError("riser misses crossover port")
                    j = exit_.anchor
                    side = (1 if x_r > j[0] else -1, 0)
                    j = emit(self.pieces.jog(j, heading, side))
                while j[1] != y_stop:
                    j = emit(self.pieces.straight(j, heading))
                return j

            j = vertical(sx_, pins[net.src], _N, y_m - 2,
                         riser_macros.get((k, "src"), []))
            h = _E if tx_ > sx_ else _W
            j = emit(self.pieces.turn(j, _N, h))
            for _x, g in sorted(track_macros.get(k, []),
                                reverse=(h == _W)):
                enter = next(p for p in g.ports if p.direction == _neg(h))
                exit_ = next(p for p in g.ports if p.direction == h)
                while j[0] != enter.anchor[0]:
                    j = emit(self.pieces.straight(j, h))
                if j != enter.anchor:
                    raise CompileError("track misses crossover port")
                j = exit_.anchor
            while j[0] != tx_ - 2 * h[0]:
                j = emit(self.pieces.straight(j, h))
            j = emit(self.pieces.turn(j, h, _S))
            j = vertical(tx_, j, _S, y_top,
                         riser_macros.get((k, "dst"), []))
            if j != pins[net.dst]:
                raise CompileError("net did not reach its sink pin")
            self.provenance.append(
                f"net {k} pins {pins[net.src]}->{pins[net.dst]} track y="
                f"{y_m} ({n_pieces} pieces)"
            )

        region = Region(frozenset(self.canvas.cells))
        return region, pins


def _compile_2d(
    nodes: Sequence[_Node],
    nets: Sequence[_Net],
    pieces: _PieceSet,
    tileset: tuple[str, ...],
    input_ports: Mapping[str, tuple[int, int]],
    output_node: int | None,
) -> PlacedInstance:
    layout = _Layout2D(nodes, nets, pieces)
    region, _pins = layout.build()
    input_map = {
        name: layout.placed[ni].ports[pi].anchor
        for name, (ni, pi) in input_ports.items()
    }
    output_port = (
        layout.placed[output_node].ports[0].anchor
        if output_node is not None else None
    )
    return PlacedInstance(
        region, tileset, input_map, output_port, tuple(layout.provenance)
    )


# Circuit -> 2D ------------------------------------------------------------------

def compile_circuit_2d(c: Circuit) -> PlacedInstance:
    """Region tilable by {right tromino, square tetromino} iff c is
    satisfiable; tilings are in bijection with satisfying assignments."""
    nodes: list[_Node] = []
    nets: list[_Net] = []
    # Producer port of each signal still awaiting consumers.
    source: dict[str, tuple[int, int]] = {}
    uses: dict[str, int] = {}

    def count_use(n: str) -> None:
        uses[n] = uses.get(n, 0) + 1

    for g in c.gates:
        for a in g.args:
            count_use(a)
    count_use(c.output)

    def new_node(name: str, label: str) -> int:
        nodes.append(_Node(name, label))
        return len(nodes) - 1

    input_ports: dict[str, tuple[int, int]] = {}
    for name in c.inputs:
        ni = new_node("bulb2d", f"input:{name}")
        source[name] = (ni, 0)
        input_ports[name] = (ni, 0)

    def fanout(name: str) -> None:
        """Split `name`'s source until one producer port per use exists."""
        need = uses.get(name, 0)
        ports = [source[name]]
        while len(ports) < need:
            ni = new_node("splitter2d", f"split:{name}")
            nets.append(_Net(ports.pop(0), (ni, 0)))
            ports += [(ni, 1), (ni, 2)]
        source[name] = None  # consumed below
        queues[name] = ports

    queues: dict[str, list[tuple[int, int]]] = {}
    for name in c.inputs:
        fanout(name)

    def take(name: str) -> tuple[int, int]:
        return queues[name].pop(0)

    def gate_and(a: str, b: str, label: str) -> tuple[int, int]:
        ni = new_node("and2d", label)
        nets.append(_Net(take(a), (ni, 0)))
        nets.append(_Net(take(b), (ni, 1)))
        return (ni, 2)

    def gate_not(a: str, label: str) -> tuple[int, int]:
        ni = new_node("not2d", label)
        nets.append(_Net(take(a), (ni, 0)))
        return (ni, 1)

    for g in c.gates:
        if g.op == "and":
            out = gate_and(g.args[0], g.args[1], f"and:{g.name}")
        elif g.op == "not":
            out = gate_not(g.args[0], f"not:{g.name}")
        else:  # or = NOT(AND(NOT a, NOT b))
            na = gate_not(g.args[0], f"or:{g.name}.na")
            nb = gate_not(g.args[1], f"or:{g.name}.nb")
            queues[f"_{g.name}.na"] = [na]
            queues[f"_{g.name}.nb"] = [nb]
            mid = gate_and(f"_{g.name}.na", f"_{g.name}.nb", f"or:{g.name}.and")
            queues[f"_{g.name}.mid"] = [mid]
            out = gate_not(f"_{g.name}.mid", f"or:{g.name}.out")
        source[g.name] = out
        fanout(g.name)

    term = new_node("terminator2d", "output")
    nets.append(_Net(take(c.output), (term, 0)))
    for name, q in queues.items():
        if q:
            raise CompileError(f"unconsumed fan-out of {name!r}")

    return _compile_2d(
        nodes, nets, _PieceSet(""), TILESET_2D, input_ports, term
    )


# Cubic 1-in-3 -> 2D --------------------------------------------------------------

def compile_1in3_2d(f: Formula1in3) -> PlacedInstance:
    """Region tilable by the right tromino alone iff f (cubic, monotone
    1-in-3) is satisfiable."""
    counts, _ = occurrence_counts(f)
    bad = [v for v in range(1, f.num_vars + 1) if counts[v] != 3]
    if bad:
        raise CompileError(
            f"variables {bad} do not occur exactly three times"
        )
    nodes: list[_Node] = []
    nets: list[_Net] = []
    var_node: dict[int, int] = {}
    var_port: dict[int, int] = {}
    input_ports: dict[str, tuple[int, int]] = {}
    for v in range(1, f.num_vars + 1):
        nodes.append(_Node("variable_node", f"var:{v}"))
        var_node[v] = len(nodes) - 1
        var_port[v] = 0
        input_ports[str(v)] = (var_node[v], 0)
    for ci, cl in enumerate(f.clauses):
        nodes.append(_Node("clause_node", f"clause:{ci}"))
        ni = len(nodes) - 1
        for slot, v in enumerate(cl):
            nets.append(_Net((var_node[v], var_port[v]), (ni, slot)))
            var_port[v] += 1
    return _compile_2d(
        nodes, nets, _PieceSet("_t1"), TILESET_2D_TROMINO, input_ports, None
    )


# Monotone circuit -> 3D ----------------------------------------------------------

_AXES3 = ((1, 0, 0), (-1, 0, 0), (0, 1, 0), (0, -1, 0), (0, 0, 1), (0, 0, -1))


def _internal_axis(g: GadgetGeometry, anchor: Cell) -> int:
    """Axis along which the junction's in-gadget neighbour lies."""
    for step in _AXES3:
        if add(anchor, step) in g.cells:
            return max(i for i in range(3) if step[i] != 0)
    raise CompileError(f"junction {anchor} has no gadget neighbour")


def _route_zigzag(
    occupied: dict[Cell, int],
    start: Cell,
    start_axis: int,
    goal: Cell,
    goal_axis: int,
    bounds: tuple[Cell, Cell],
) -> list[Cell]:
    """Shortest chord-free path of cells between two junctions.

    Consecutive steps use different axes and no step reverses the step two
    places before it, so the path never runs three cells in a line and never
    touches itself: dominoes inside the wire must lie along the path, and no
    straight tromino fits.  That forces the domino matching to couple the
    two junction cells (their covered-from-the-wire parities are locked by
    the interior length).  Interior cells keep distance from committed cells
    (no shared domino), except around the two junctions themselves.
    """
    lo, hi = bounds
    blocked = set(occupied)
    for c in occupied:
        if c != start and c != goal:
            blocked.update(neighbors(c))
    init = (start, (0, 0, 0), _AXES3[2 * start_axis])
    dist: dict[tuple[Cell, Cell, Cell], int] = {init: 0}
    came: dict[tuple[Cell, Cell, Cell], tuple[Cell, Cell, Cell]] = {init: init}
    # Step cost 2, plus 1 off the z=0 plane: keeps wires flat, so detours
    # through other z layers stay available for later, more constrained nets.
    # Axes must alternate, so reaching the goal takes at least
    # max(manhattan, 2 * largest component - 1) steps.
    def remaining(c: Cell) -> int:
        deltas = [abs(a - b) for a, b in zip(c, goal)]
        return 2 * max(sum(deltas), 2 * max(deltas) - 1)

    heap: list[tuple[int, int, tuple[Cell, Cell, Cell]]] = [
        (remaining(start), 0, init)
    ]
    goal_key: tuple[Cell, Cell, Cell] | None = None
    while heap and goal_key is None:
        f, _, state = heapq.heappop(heap)
        cell, prev2, prev1 = state
        d = dist[state]
        if f > d + remaining(cell):
            continue  # stale heap entry
        for step in _AXES3:
            a = max(i for i in range(3) if step[i] != 0)
            if any(step[i] and prev1[i] for i in range(3)):
                continue  # same axis as the last step
            if prev2 != (0, 0, 0) and add(step, prev2) == (0, 0, 0):
                continue  # reversal two steps back makes a chord
            c2 = add(cell, step)
            key = (c2, prev1, step)
            d2 = d + 2 + (1 if c2[2] != 0 else 0)
            if key in dist and dist[key] <= d2:
                continue
            if c2 == goal:
                if a == goal_axis:
                    continue  # must arrive perpendicular
                came[key] = state
                goal_key = key
                break
            if c2 in blocked:
                continue
            if not all(lo[i] <= c2[i] <= hi[i] for i in range(3)):
                continue
            dist[key] = d2
            came[key] = state
            heapq.heappush(heap, (d2 + remaining(c2), -d2, key))
    if goal_key is None:
        raise CompileError(f"no wire route from {start} to {goal}")
    path = [goal_key[0]]
    k = goal_key
    while came[k] != k:
        k = came[k]
        path.append(k[0])
    path.reverse()
    for i, ci in enumerate(path):
        for j in range(i + 2, len(path)):
            if sum(abs(x - y) for x, y in zip(ci, path[j])) == 1:
                raise CompileError(
                    f"wire {start}->{goal} touches itself at {ci}/{path[j]}"
                )
    return path


def compile_monotone_3d(mp: MonotonePairing) -> PlacedInstance:
    """Region over {domino, straight tromino} tilable iff mp is satisfiable.

    Complementary input pairs come from one wire read at both ends (the two
    readings are always opposite); fan-out uses dirty splitters, sound for
    NOT-free circuits; the output is forced true.  Not parsimonious.
    """
    c = mp.circuit
    occupied: dict[Cell, int] = {}
    provenance: list[str] = []
    owner = itertools.count(1)

    uses: dict[str, int] = {}
    for g in c.gates:
        for a in g.args:
            uses[a] = uses.get(a, 0) + 1
    uses[c.output] = uses.get(c.output, 0) + 1

    depth: dict[str, int] = {n: 0 for n in c.inputs}
    for g in c.gates:
        depth[g.name] = 1 + max(depth[a] for a in g.args)

    placed: list[GadgetGeometry] = []
    # name -> available producer junctions (anchor, internal axis)
    taps: dict[str, list[tuple[Cell, int]]] = {}

    def put(g: GadgetGeometry, label: str) -> GadgetGeometry:
        oid = next(owner)
        for cell in g.cells:
            if cell in occupied:
                raise CompileError(f"gadget collision at {cell}")
            occupied[cell] = oid
        placed.append(g)
        provenance.append(f"gadget {label} {g.name} cells={len(g.cells)}")
        return g

    input_map: dict[str, Cell] = {}
    col = 0
    done: set[str] = set()
    for x, xb in mp.pairs:
        if uses.get(x, 0) and uses.get(xb, 0):
            # One zig-zag wire; its two like-parity ends read oppositely.
            ox = 10 * col
            cells = [(ox, 0, 0), (ox, 1, 0), (ox + 1, 1, 0), (ox + 1, 2, 0),
                     (ox + 2, 2, 0)]
            oid = next(owner)
            for cell in cells:
                occupied[cell] = oid
            provenance.append(f"pairing {x}/{xb} at x={ox}")
            taps[x] = [((ox, 0, 0), 1)]
            taps[xb] = [((ox + 2, 2, 0), 0)]
            input_map[x] = (ox, 0, 0)
            input_map[xb] = (ox + 2, 2, 0)
            done |= {x, xb}
            col += 1
        else:
            for name in (x, xb):
                if not uses.get(name, 0):
                    done.add(name)
                    continue
                g = get_gadget("bulb3d").translated((10 * col, 0, 0))
                put(g, f"input:{name}")
                taps[name] = [(g.ports[0].anchor, 1)]
                input_map[name] = g.ports[0].anchor
                done.add(name)
                col += 1

    max_depth = max(depth.values(), default=0)
    # Gates per layer.
    layer_index: dict[int, int] = {}
    gate_port: dict[str, tuple[Cell, int]] = {}
    pending_nets: list[tuple[str, Cell, int, str]] = []
    for g in c.gates:
        d = depth[g.name]
        i = layer_index.get(d, 0)
        layer_index[d] = i + 1
        base = get_gadget("gate3d_and" if g.op == "and" else "gate3d_or")
        off = (10 * i + 2, 10 * d, 0)
        gg = put(base.translated(off), f"{g.op}:{g.name}")
        ins = [p for p in gg.ports if p.io == "in"]
        out = next(p for p in gg.ports if p.io == "out")
        for arg, port in zip(g.args, ins):
            pending_nets.append(
                (arg, port.anchor, _internal_axis(gg, port.anchor), g.name))
        taps[g.name] = [(out.anchor, _internal_axis(gg, out.anchor))]

    term = put(
        get_gadget("terminator3d_true").translated(
            (2, 10 * (max_depth + 1), 0)),
        "output",
    )
    tp = term.ports[0]
    pending_nets.append(
        (c.output, tp.anchor, _internal_axis(term, tp.anchor), "output"))

    # Fan out with dirty splitters until every consumer has a tap.
    need = dict(uses)
    split_col = 0
    for name in sorted(need):
        while len(taps.get(name, [])) < need[name]:
            g = get_gadget("dirty_splitter3d").translated(
                (10 * split_col + 4, 10 * (max_depth + 2), 0))
            gg = put(g, f"split:{name}")
            split_col += 1
            src, src_axis = taps[name].pop(0)
            inp = next(p for p in gg.ports if p.io == "in")
            feed = f"{name}!{split_col}"
            pending_nets.append(
                (feed, inp.anchor, _internal_axis(gg, inp.anchor), "split"))
            taps[feed] = [(src, src_axis)]
            taps[name] = taps[name] + [
                (p.anchor, _internal_axis(gg, p.anchor))
                for p in gg.ports if p.io == "out"
            ]

    # Route all nets.
    all_cells = list(occupied)
    lo = tuple(min(c_[i] for c_ in all_cells) - 6 for i in range(3))
    hi = tuple(max(c_[i] for c_ in all_cells) + 6 for i in range(3))
    remaining = list(pending_nets)
    while remaining:
        # Shortest net first: short nets have few detours available, so
        # committing long meandering wires first can wall them off.
        best_idx = 0
        best_key: tuple[int, str, Cell] | None = None
        for idx, (name, sink, _sink_axis, _label) in enumerate(remaining):
            if not taps.get(name):
                raise CompileError(f"no remaining source for {name!r}")
            src, _ = taps[name][0]
            key = (sum(abs(a - b) for a, b in zip(src, sink)), name, sink)
            if best_key is None or key < best_key:
                best_key, best_idx = key, idx
        name, sink, sink_axis, label = remaining.pop(best_idx)
        src, src_axis = taps[name].pop(0)
        path = _route_zigzag(occupied, src, src_axis, sink, sink_axis,
                             (lo, hi))
        oid = next(owner)
        for cell in path[1:-1]:
            occupied[cell] = oid
        provenance.append(
            f"wire {name}->{label} {src}->{sink} ({len(path)} cells)")

    region = Region(frozenset(occupied))
    return PlacedInstance(
        region, TILESET_3D, input_map, tp.anchor, tuple(provenance)
    )


# 3D -> 4D lift -------------------------------------------------------------------

def lift_4d(r: Region) -> Region:
    """Simply-connected 4D region with the same tiling count as r.

    The bounding-box complement S is added at w=0 and each S cell gets one
    peg one step away in the fourth dimension, up or down by checkerboard
    colour.  Pegs have a unique neighbour, so every tiling pairs each peg
    with its base cell by a domino, forcing S to be covered exactly; what
    remains is a tiling of r inside the w=0 slab.
    """
    if r.dim != 3:
        raise CompileError("lift_4d expects a 3-dimensional region")
    if not r.cells:
        return Region(frozenset(), 4)
    lo, hi = r.bounding_box()
    cells: set[Cell] = {(x, y, z, 0) for x, y, z in r.cells}
    for x in range(lo[0], hi[0] + 1):
        for y in range(lo[1], hi[1] + 1):
            for z in range(lo[2], hi[2] + 1):
                if (x, y, z) in r.cells:
                    continue
                cells.add((x, y, z, 0))
                cells.add((x, y, z, 1 if (x + y + z) % 2 == 0 else -1))
    return Region(frozenset(cells))


# Routed-wire probe ---------------------------------------------------------------

def route_wire(
    start: Port, goal: Port, suffix: str = ""
) -> tuple[frozenset[Cell], list[str]]:
    """Free-plane wire between two 2D ports; (cells, piece kinds).

    The wire leaves `start` along its direction and enters `goal` against
    its direction (i.e. the junctions are the wire's two ends).
    """
    pieces = _PieceSet(suffix)
    canvas = _Canvas()
    span = max(abs(goal.anchor[0] - start.anchor[0]),
               abs(goal.anchor[1] - start.anchor[1])) + 12
    bounds = (min(start.anchor[0], goal.anchor[0]) - span,
              min(start.anchor[1], goal.anchor[1]) - span,
              max(start.anchor[0], goal.anchor[0]) + span,
              max(start.anchor[1], goal.anchor[1]) + span)
    path = _route_adapter(
        canvas, pieces, start.anchor, start.direction,
        goal.anchor, _neg(goal.direction), bounds, frozenset(),
    )
    cells = frozenset(c for p in path for c in p.cells)
    return cells, [p.kind for p in path]
