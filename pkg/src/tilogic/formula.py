"""Monotone 1-in-3 formulas, planar incidence embeddings, and Boolean circuits.

A :class:`Formula1in3` is a conjunction of positive three-variable clauses,
each satisfied by exactly one true variable.  The incidence graph has one
vertex per variable and per clause; planar embeddings are represented as
rotation systems with derived faces.

Circuits are small gate DAGs (AND/OR/NOT) with one output, plus a De Morgan
transformation to an equivalent NOT-free circuit over paired inputs.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping, Sequence

import networkx as nx

BRUTE_FORCE_CAP = 25


class FormulaError(ValueError):
    """Invalid formula, netlist, or assignment data."""


class BudgetExceeded(RuntimeError):
    """A search exceeded its node budget; the result is inconclusive."""


@dataclass(frozen=True)
class Formula1in3:
    """Monotone 1-in-3 instance: positive triples over variables 1..num_vars."""

    num_vars: int
    clauses: tuple[tuple[int, int, int], ...]

    def __post_init__(self) -> None:
        if self.num_vars < 0:
            raise FormulaError("num_vars must be nonnegative")
        norm = []
        for cl in self.clauses:
            if len(cl) != 3 or len(set(cl)) != 3:
                raise FormulaError(f"clause {cl} must have 3 distinct variables")
            for v in cl:
                if not 1 <= v <= self.num_vars:
                    raise FormulaError(f"variable {v} out of range 1..{self.num_vars}")
            norm.append(tuple(sorted(cl)))
        object.__setattr__(self, "clauses", tuple(norm))

    @property
    def num_clauses(self) -> int:
        return len(self.clauses)


def eval_1in3(f: Formula1in3, assignment: Sequence[bool]) -> bool:
    """True iff every clause has exactly one true variable.

    ``assignment[i-1]`` is the value of variable ``i``; it must cover all
    variables.
    """
    if len(assignment) < f.num_vars:
        raise FormulaError("assignment does not cover all variables")
    return all(sum(assignment[v - 1] for v in cl) == 1 for cl in f.clauses)


def brute_force_models(
    f: Formula1in3, cap: int = BRUTE_FORCE_CAP
) -> tuple[int, list[tuple[bool, ...]]]:
    """Exhaustive model enumeration over all 2^n assignments (n <= cap)."""
    if f.num_vars > cap:
        raise FormulaError(f"brute force capped at {cap} variables")
    models = [
        a
        for a in itertools.product([False, True], repeat=f.num_vars)
        if eval_1in3(f, a)
    ]
    return len(models), models


def occurrence_counts(f: Formula1in3) -> tuple[dict[int, int], bool]:
    """Occurrence count per variable, and whether every count equals 3."""
    counts = {v: 0 for v in range(1, f.num_vars + 1)}
    for cl in f.clauses:
        for v in cl:
            counts[v] += 1
    return counts, all(c == 3 for c in counts.values())


class _Propagator:
    """Backtracking search with unit-style 1-in-3 propagation."""

    def __init__(self, f: Formula1in3, budget: int):
        self.f = f
        self.budget = budget
        self.nodes = 0
        self.clauses_of: list[list[int]] = [[] for _ in range(f.num_vars + 1)]
        for ci, cl in enumerate(f.clauses):
            for v in cl:
                self.clauses_of[v].append(ci)

    def _propagate(self, values: list[int | None], trail: list[int], v: int) -> bool:
        """Assign consequences of clauses touching v; False on conflict."""
        queue = [v]
        while queue:
            v = queue.pop()
            for ci in self.clauses_of[v]:
                cl = self.f.clauses[ci]
                true = [u for u in cl if values[u] is True]
                unknown = [u for u in cl if values[u] is None]
                if len(true) > 1:
                    return False
                if len(true) == 1:
                    for u in unknown:
                        values[u] = False
                        trail.append(u)
                        queue.append(u)
                elif not unknown:
                    return False
                elif len(unknown) == 1:
                    u = unknown[0]
                    values[u] = True
                    trail.append(u)
                    queue.append(u)
        return True

    def solve(
        self, assumptions: Mapping[int, bool] | None = None
    ) -> Iterator[tuple[bool, ...]]:
        values: list[int | None] = [None] * (self.f.num_vars + 1)
        for v, val in (assumptions or {}).items():
            if not 1 <= v <= self.f.num_vars:
                raise FormulaError(f"assumption variable {v} out of range")
            if values[v] is not None and values[v] != bool(val):
                return
            if values[v] is None:
                values[v] = bool(val)
                if not self._propagate(values, [], v):
                    return

        def assign(v: int, val: bool) -> tuple[bool, list[int]]:
            trail = [v]
            values[v] = val
            return self._propagate(values, trail, v), trail

        def undo(trail: list[int]) -> None:
            for u in trail:
                values[u] = None

        def pick_var() -> int | None:
            # Prefer variables in partially assigned clauses, so the search
            # follows consequences instead of jumping to unrelated parts of
            # the formula; fall back to the lowest unassigned variable.
            best: tuple[int, int] | None = None
            fallback = None
            for cl in self.f.clauses:
                unassigned = [u for u in cl if values[u] is None]
                if not unassigned:
                    continue
                if fallback is None:
                    fallback = min(unassigned)
                if len(unassigned) < 3:
                    key = (len(unassigned), min(unassigned))
                    if best is None or key < best:
                        best = key
            if best is not None:
                return best[1]
            if fallback is not None:
                return fallback
            for u in range(1, self.f.num_vars + 1):
                if values[u] is None:
                    return u
            return None

        def recurse() -> Iterator[tuple[bool, ...]]:
            self.nodes += 1
            if self.nodes > self.budget:
                raise BudgetExceeded(f"search budget {self.budget} exceeded")
            v = pick_var()
            if v is None:
                yield tuple(bool(values[u]) for u in range(1, self.f.num_vars + 1))
                return
            for val in (False, True):
                ok, trail = assign(v, val)
                if ok:
                    yield from recurse()
                undo(trail)

        yield from recurse()


def backtrack_solve_1in3(
    f: Formula1in3,
    mode: str = "decide",
    budget: int = 10_000_000,
    assumptions: Mapping[int, bool] | None = None,
) -> bool | int | list[tuple[bool, ...]]:
    """Decide satisfiability, count models, or enumerate all models.

    Agrees with :func:`brute_force_models` on every instance small enough for
    both.  Raises :class:`BudgetExceeded` when the node budget runs out.
    ``assumptions`` pins chosen variables before the search starts.
    """
    if mode not in ("decide", "count", "enumerate"):
        raise FormulaError(f"unknown mode {mode!r}")
    it = _Propagator(f, budget).solve(assumptions)
    if mode == "decide":
        return next(it, None) is not None
    if mode == "count":
        return sum(1 for _ in it)
    return list(it)


def first_model(
    f: Formula1in3,
    assumptions: Mapping[int, bool] | None = None,
    budget: int = 10_000_000,
) -> tuple[bool, ...] | None:
    """One model extending ``assumptions``, or None if there is none."""
    return next(_Propagator(f, budget).solve(assumptions), None)


def local_model(
    clauses: Sequence[tuple[int, int, int]],
    assumptions: Mapping[int, bool],
    budget: int = 1_000_000,
) -> dict[int, bool] | None:
    """Model of an isolated clause group, keyed by original variable ids.

    The clauses are renumbered to a compact formula first, so variables not
    mentioned in them are ignored rather than enumerated.
    """
    ids = sorted({v for cl in clauses for v in cl} | set(assumptions))
    remap = {v: i + 1 for i, v in enumerate(ids)}
    sub = Formula1in3(
        len(ids), tuple(tuple(remap[v] for v in cl) for cl in clauses)
    )
    model = first_model(
        sub, {remap[v]: val for v, val in assumptions.items()}, budget
    )
    if model is None:
        return None
    return {v: model[remap[v] - 1] for v in ids}


# Planar incidence embeddings ------------------------------------------------

def variable_vertex(v: int) -> str:
    return f"v{v}"


def clause_vertex(ci: int) -> str:
    return f"c{ci}"


@dataclass(frozen=True)
class IncidenceEmbedding:
    """Rotation system of the bipartite incidence graph, with derived faces.

    ``rotation[u]`` lists u's neighbours in cyclic (clockwise) order.  Faces
    are derived by standard face tracing and satisfy Euler's formula per
    connected component (sphere convention).
    """

    rotation: Mapping[str, tuple[str, ...]]
    faces: tuple[tuple[str, ...], ...] = field(default=())

    def __post_init__(self) -> None:
        faces = tuple(_trace_faces(self.rotation))
        object.__setattr__(self, "faces", faces)

    def num_edges(self) -> int:
        return sum(len(nbrs) for nbrs in self.rotation.values()) // 2

    def euler_ok(self) -> bool:
        g = nx.Graph(
            (u, w) for u, nbrs in self.rotation.items() for w in nbrs
        )
        g.add_nodes_from(self.rotation)
        v = g.number_of_nodes()
        e = g.number_of_edges()
        comps = nx.number_connected_components(g) if v else 0
        # Each extra component contributes one redundant sphere face.
        return v - e + len(self.faces) == 2 * comps

    def faces_of_vertex(self, u: str) -> list[int]:
        return [i for i, f in enumerate(self.faces) if u in f]


def _trace_faces(rotation: Mapping[str, tuple[str, ...]]) -> list[tuple[str, ...]]:
    """All faces of a rotation system; each directed edge used exactly once."""
    nxt: dict[tuple[str, str], tuple[str, str]] = {}
    for u, nbrs in rotation.items():
        for i, w in enumerate(nbrs):
            # Face tracing: after arriving w -> u, leave along the neighbour
            # that follows w in u's cyclic order.
            nxt[(w, u)] = (u, nbrs[(i + 1) % len(nbrs)])
    faces = []
    seen: set[tuple[str, str]] = set()
    for start in sorted(nxt):
        if start in seen:
            continue
        face = []
        edge = start
        while edge not in seen:
            seen.add(edge)
            face.append(edge[0])
            edge = nxt[edge]
        faces.append(tuple(face))
    # Isolated vertices bound one face on their own sphere.
    for u in sorted(rotation):
        if not rotation[u]:
            faces.append((u,))
    return faces


def incidence_graph(f: Formula1in3) -> nx.Graph:
    g = nx.Graph()
    g.add_nodes_from(variable_vertex(v) for v in range(1, f.num_vars + 1))
    for ci, cl in enumerate(f.clauses):
        c = clause_vertex(ci)
        for v in cl:
            g.add_edge(c, variable_vertex(v))
    return g


def embed_planar(f: Formula1in3) -> IncidenceEmbedding | None:
    """A planar embedding of the incidence graph, or None if non-planar."""
    g = incidence_graph(f)
    is_planar, emb = nx.check_planarity(g)
    if not is_planar:
        return None
    rotation = {
        u: tuple(emb.neighbors_cw_order(u)) if g.degree(u) else ()
        for u in sorted(g.nodes)
    }
    return IncidenceEmbedding(rotation)


# File format ----------------------------------------------------------------

def parse_formula(text: str) -> tuple[Formula1in3, dict[str, tuple[str, ...]] | None]:
    """Parse `p m13` formula files; returns (formula, optional rotation)."""
    num_vars = None
    expected_clauses = None
    clauses: list[tuple[int, int, int]] = []
    rotation: dict[str, tuple[str, ...]] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        parts = line.split()
        if parts[0] == "p":
            if num_vars is not None or len(parts) != 4 or parts[1] != "m13":
                raise FormulaError(f"line {lineno}: bad problem line")
            num_vars, expected_clauses = int(parts[2]), int(parts[3])
        elif parts[0] == "e":
            if len(parts) < 2:
                raise FormulaError(f"line {lineno}: bad embedding line")
            rotation[parts[1]] = tuple(parts[2:])
        else:
            if num_vars is None:
                raise FormulaError(f"line {lineno}: clause before problem line")
            nums = [int(p) for p in parts]
            if len(nums) != 4 or nums[3] != 0:
                raise FormulaError(f"line {lineno}: expected three literals and 0")
            clauses.append((nums[0], nums[1], nums[2]))
    if num_vars is None:
        raise FormulaError("missing problem line")
    if expected_clauses != len(clauses):
        raise FormulaError(
            f"problem line declares {expected_clauses} clauses, found {len(clauses)}"
        )
    f = Formula1in3(num_vars, tuple(clauses))
    return f, (rotation or None)


def emit_formula(
    f: Formula1in3, rotation: Mapping[str, tuple[str, ...]] | None = None
) -> str:
    lines = [f"p m13 {f.num_vars} {f.num_clauses}"]
    for cl in f.clauses:
        lines.append(f"{cl[0]} {cl[1]} {cl[2]} 0")
    if rotation:
        for u in sorted(rotation):
            lines.append("e " + " ".join((u, *rotation[u])))
    return "\n".join(lines) + "\n"


# Circuits ---------------------------------------------------------------------

_GATE_OPS = ("and", "or", "not")


@dataclass(frozen=True)
class Gate:
    op: str
    name: str
    args: tuple[str, ...]

    def __post_init__(self) -> None:
        if self.op not in _GATE_OPS:
            raise FormulaError(f"unknown gate op {self.op!r}")
        arity = 1 if self.op == "not" else 2
        if len(self.args) != arity:
            raise FormulaError(f"{self.op} gate takes {arity} operand(s)")


@dataclass(frozen=True)
class Circuit:
    """Gate DAG in topological order with a single output reference."""

    inputs: tuple[str, ...]
    gates: tuple[Gate, ...]
    output: str

    def __post_init__(self) -> None:
        defined = set()
        for name in self.inputs:
            if name in defined:
                raise FormulaError(f"duplicate name {name!r}")
            defined.add(name)
        for g in self.gates:
            if g.name in defined:
                raise FormulaError(f"duplicate name {g.name!r}")
            for a in g.args:
                if a not in defined:
                    raise FormulaError(f"gate {g.name!r} uses undefined {a!r}")
            defined.add(g.name)
        if self.output not in defined:
            raise FormulaError(f"undefined output {self.output!r}")


def eval_circuit(c: Circuit, inputs: Sequence[bool]) -> bool:
    """Evaluate with inputs bound positionally to c.inputs."""
    if len(inputs) != len(c.inputs):
        raise FormulaError(
            f"expected {len(c.inputs)} inputs, got {len(inputs)}"
        )
    values: dict[str, bool] = dict(zip(c.inputs, map(bool, inputs)))
    for g in c.gates:
        a = [values[x] for x in g.args]
        if g.op == "and":
            values[g.name] = a[0] and a[1]
        elif g.op == "or":
            values[g.name] = a[0] or a[1]
        else:
            values[g.name] = not a[0]
    return values[c.output]


def circuit_models(c: Circuit) -> list[tuple[bool, ...]]:
    """All input vectors making the output true (exhaustive)."""
    return [
        a
        for a in itertools.product([False, True], repeat=len(c.inputs))
        if eval_circuit(c, a)
    ]


def parse_netlist(text: str) -> Circuit:
    """Parse netlist lines: input/and/or/not/output, in topological order."""
    inputs: list[str] = []
    gates: list[Gate] = []
    output = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        kind = parts[0]
        if kind == "input" and len(parts) == 2:
            inputs.append(parts[1])
        elif kind in ("and", "or") and len(parts) == 4:
            gates.append(Gate(kind, parts[1], (parts[2], parts[3])))
        elif kind == "not" and len(parts) == 3:
            gates.append(Gate(kind, parts[1], (parts[2],)))
        elif kind == "output" and len(parts) == 2:
            if output is not None:
                raise FormulaError(f"line {lineno}: second output")
            output = parts[1]
        else:
            raise FormulaError(f"line {lineno}: bad netlist line {line!r}")
    if output is None:
        raise FormulaError("missing output line")
    return Circuit(tuple(inputs), tuple(gates), output)


def emit_netlist(c: Circuit) -> str:
    lines = [f"input {n}" for n in c.inputs]
    lines += [f"{g.op} {g.name} " + " ".join(g.args) for g in c.gates]
    lines.append(f"output {c.output}")
    return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class MonotonePairing:
    """NOT-free circuit over paired inputs (x, x_bar)."""

    circuit: Circuit
    pairs: tuple[tuple[str, str], ...]

    def __post_init__(self) -> None:
        if any(g.op == "not" for g in self.circuit.gates):
            raise FormulaError("monotone circuit must be NOT-free")
        paired = [n for p in self.pairs for n in p]
        if sorted(paired) != sorted(self.circuit.inputs):
            raise FormulaError("pairs must partition the circuit inputs")


def monotonize(c: Circuit) -> MonotonePairing:
    """NOT-free equivalent over inputs (x, x_bar): dual-rail construction.

    For every assignment a of the original circuit, evaluating the monotone
    circuit on (a, complement of a) gives the original output.
    """
    pos_name: dict[str, str] = {}
    neg_name: dict[str, str] = {}
    gates: list[Gate] = []
    inputs: list[str] = []
    pairs: list[tuple[str, str]] = []
    for x in c.inputs:
        xb = x + "_bar"
        inputs += [x, xb]
        pairs.append((x, xb))
        pos_name[x], neg_name[x] = x, xb

    fresh = itertools.count()

    def emit(op: str, a: str, b: str) -> str:
        name = f"m{next(fresh)}"
        gates.append(Gate(op, name, (a, b)))
        return name

    for g in c.gates:
        if g.op == "not":
            pos_name[g.name] = neg_name[g.args[0]]
            neg_name[g.name] = pos_name[g.args[0]]
        elif g.op == "and":
            pos_name[g.name] = emit("and", pos_name[g.args[0]], pos_name[g.args[1]])
            neg_name[g.name] = emit("or", neg_name[g.args[0]], neg_name[g.args[1]])
        else:
            pos_name[g.name] = emit("or", pos_name[g.args[0]], pos_name[g.args[1]])
            neg_name[g.name] = emit("and", neg_name[g.args[0]], neg_name[g.args[1]])

    out = pos_name[c.output]
    # Dead-gate elimination keeps compiled regions small.
    needed: set[str] = {out}
    kept: list[Gate] = []
    for g in reversed(gates):
        if g.name in needed:
            kept.append(g)
            needed.update(g.args)
    kept.reverse()
    mono = Circuit(tuple(inputs), tuple(kept), out)
    return MonotonePairing(mono, tuple(pairs))
