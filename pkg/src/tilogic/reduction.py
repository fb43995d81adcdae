"""Reduction from planar monotone 1-in-3 instances to cubic ones.

`reduce_to_cubic` rewrites a planar monotone 1-in-3 formula into an
equisatisfiable planar monotone 1-in-3 formula in which every variable
occurs in exactly three clauses.

Stage 1 splits every variable with several occurrences into one copy per
occurrence and ties consecutive copies together with *chains* of equality
verifiers, keeping the incidence graph planar.  Stage 2 counts the missing
occurrences of every variable (each must reach three), assigns them to faces
of the incidence graph so that every face receives a multiple of three, and
absorbs each face's quota with a *checker gadget*: a planar sorting network
of optional switches feeding per-triple checkers (a clause for triples that
must hold exactly one true input, a 3-way equality verifier for triples that
must be uniform).

`extend_model` turns any model of the original formula into an explicit
model of the reduced formula, witnessing one direction of equisatisfiability
without any search over the large output formula.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Mapping, Sequence

import networkx as nx

from .formula import (
    Formula1in3,
    IncidenceEmbedding,
    clause_vertex,
    embed_planar,
    eval_1in3,
    local_model,
    occurrence_counts,
    variable_vertex,
)

Clause = tuple[int, int, int]
Fresh = Callable[[], int]


class ReductionError(ValueError):
    """The reduction cannot proceed on this input (with an explanation)."""


# Clause-level components ------------------------------------------------------

def equality_verifier(v1: int, v2: int, fresh: Fresh) -> tuple[list[Clause], tuple[int, int]]:
    """Two clauses forcing v1 == v2; returns (clauses, (x, y)).

    When v1 and v2 are false, exactly one of the fresh variables x, y is
    true, and the choice is free.
    """
    x, y = fresh(), fresh()
    return [(v1, x, y), (v2, x, y)], (x, y)


def chain(v1: int, v2: int, fresh: Fresh) -> tuple[list[Clause], tuple[int, int], list[tuple[int, int]]]:
    """Three equality verifiers forcing v1 == v2.

    Returns (clauses, (u, w), xy_pairs) where u, w are the intermediate
    variables (one spare occurrence each) and xy_pairs lists the free pair
    of each verifier.
    """
    u, w = fresh(), fresh()
    clauses: list[Clause] = []
    pairs = []
    for a, b in ((v1, u), (u, w), (w, v2)):
        cl, xy = equality_verifier(a, b, fresh)
        clauses += cl
        pairs.append(xy)
    return clauses, (u, w), pairs


def triangle(a: int, b: int, c: int, fresh: Fresh) -> list[Clause]:
    """Forces exactly one of a, b, c true, using two occurrences of each."""
    a2, b2, c2 = fresh(), fresh(), fresh()
    return [(a, b, c2), (b, a2, c2), (c, a2, b2), (a, c, b2), (a2, b2, c2)]


def partial_switch(p: int, q: int, fresh: Fresh) -> tuple[list[Clause], int, int]:
    """Copies (p, q) to the outputs in either order; unsatisfiable on (1, 1).

    Consumes one occurrence of each input; each output gains two
    occurrences here, leaving one for downstream use.
    """
    a, b, c, t = fresh(), fresh(), fresh(), fresh()
    r, s = fresh(), fresh()
    clauses = [(p, q, t), (b, r, t), (c, s, t), (a, r, s)]
    clauses += triangle(a, b, c, fresh)
    return clauses, r, s


def three_way_verifier(a: int, b: int, c: int, fresh: Fresh) -> list[Clause]:
    """Satisfiable iff a == b == c; consumes one occurrence of each input."""
    d, e, f, g, h = (fresh() for _ in range(5))
    return [(a, d, e), (b, e, g), (c, g, h), (d, e, f), (f, g, h), (d, f, h)]


def optional_switch(e1: int, e2: int, fresh: Fresh) -> tuple[list[Clause], int, int]:
    """Copies (e1, e2) to the outputs in either order (including (1, 1)).

    Three partial switches around a spare variable z, with a 3-way verifier
    absorbing the leftover internal edges.  This particular wiring keeps the
    component planar with both entries and both exits on a common face, in
    the cyclic order (e1, e2, o2, o1), so switches can be stacked into a
    planar sorting network.
    """
    z = fresh()
    clauses, r1, s1 = partial_switch(e1, z, fresh)
    cl2, r2, o2 = partial_switch(e2, r1, fresh)
    cl3, r3, o1 = partial_switch(s1, r2, fresh)
    clauses += cl2 + cl3
    clauses += three_way_verifier(z, r3, z, fresh)
    return clauses, o1, o2


# Structure records (for constructive model extension) -------------------------

@dataclass(frozen=True)
class SwitchRecord:
    entries: tuple[int, int]
    exits: tuple[int, int]
    clause_span: tuple[int, int]


@dataclass(frozen=True)
class CheckerRecord:
    kind: str  # "clause" or "verifier"
    ports: tuple[int, int, int]
    clause_span: tuple[int, int]


@dataclass(frozen=True)
class FaceGadget:
    face: int
    inputs: tuple[int, ...]
    true_target: int
    switches: tuple[SwitchRecord, ...]
    layer_pairs: tuple[tuple[int, int], ...]  # wire index pairs, switch order
    checkers: tuple[CheckerRecord, ...]


@dataclass(frozen=True)
class VerifierRecord:
    x: int
    y: int
    clause_span: tuple[int, int]


@dataclass(frozen=True)
class ChainRecord:
    original: int  # the original variable whose value the chain carries
    ends: tuple[int, int]
    u: int
    w: int
    verifiers: tuple[VerifierRecord, ...]


def _sorting_gadget(
    inputs: Sequence[int],
    c: int,
    fresh: Fresh,
    clause_base: int,
    face: int,
) -> tuple[list[Clause], FaceGadget]:
    n = len(inputs)
    if n == 0:
        if c:
            raise ReductionError("cannot require true inputs on an empty face")
        return [], FaceGadget(face, (), 0, (), (), ())
    if n % 3:
        raise ReductionError(f"face inputs must come in triples, got {n}")
    m = n // 3
    if not 0 <= c <= m:
        raise ReductionError(f"cannot check {c} mod 3 true among {n} inputs")
    clauses: list[Clause] = []
    switches: list[SwitchRecord] = []
    layer_pairs: list[tuple[int, int]] = []
    checkers: list[CheckerRecord] = []

    def span(start: int) -> tuple[int, int]:
        return (clause_base + start, clause_base + len(clauses))

    if m == 1 and (c == 0 or len(set(inputs)) == 3):
        # Single triple: a bare checker suffices.  (A clause needs three
        # distinct variables, so duplicates fall through to the network.)
        a, b, cc = inputs
        start = len(clauses)
        if c == 0:
            clauses += three_way_verifier(a, b, cc, fresh)
            checkers.append(CheckerRecord("verifier", (a, b, cc), span(start)))
        else:
            clauses.append(tuple(sorted(inputs)))  # type: ignore[arg-type]
            checkers.append(CheckerRecord("clause", (a, b, cc), span(start)))
        return clauses, FaceGadget(face, tuple(inputs), c, (), (), tuple(checkers))

    wires = list(inputs)
    for layer in range(n):
        first = 0 if layer % 2 == 0 else 1
        for i in range(first, n - 1, 2):
            start = len(clauses)
            cl, o1, o2 = optional_switch(wires[i], wires[i + 1], fresh)
            clauses += cl
            switches.append(SwitchRecord(
                (wires[i], wires[i + 1]), (o1, o2), span(start)
            ))
            layer_pairs.append((i, i + 1))
            wires[i], wires[i + 1] = o1, o2
    for t in range(m):
        a, b, cc = wires[3 * t : 3 * t + 3]
        start = len(clauses)
        if t >= m - c:
            clauses.append((a, b, cc))
            checkers.append(CheckerRecord("clause", (a, b, cc), span(start)))
        else:
            clauses += three_way_verifier(a, b, cc, fresh)
            checkers.append(CheckerRecord("verifier", (a, b, cc), span(start)))
    return clauses, FaceGadget(
        face, tuple(inputs), c, tuple(switches), tuple(layer_pairs), tuple(checkers)
    )


def sorting_gadget(inputs: Sequence[int], c: int, fresh: Fresh) -> list[Clause]:
    """Checker for 3m face inputs of which exactly c (mod 3) must be true.

    An odd-even transposition network of optional switches lets the inputs
    reach any order; the outputs are taken in triples, the rightmost c
    triples checked by a clause and the rest by 3-way verifiers.  Each input
    variable has exactly one occurrence consumed here.
    """
    clauses, _gadget = _sorting_gadget(inputs, c, fresh, 0, -1)
    return clauses


# Stage 1: splitting occurrences ------------------------------------------------

@dataclass
class _Stage1:
    clauses: list[Clause]
    num_vars: int
    chains: list[ChainRecord]
    embedding: IncidenceEmbedding


def _split_with_orientation(f: Formula1in3, mirror: bool) -> _Stage1:
    emb = embed_planar(f)
    if emb is None:
        raise ReductionError("input incidence graph is not planar")
    counts, _ = occurrence_counts(f)
    next_var = f.num_vars + 1

    def fresh() -> int:
        nonlocal next_var
        v = next_var
        next_var += 1
        return v

    # Carry the input embedding over to the rewritten graph: the copies of a
    # split variable sit on a small circle in the cyclic order of the old
    # clause edges, each chain runs along the arc between consecutive copies,
    # and clause rotations keep their order with copies substituted in.  This
    # keeps the faces of the new graph aligned with the faces of the old one,
    # so every boundary between adjacent faces carries the chains of two
    # different variables that share a clause — the property the truth
    # steering in `extend_model` relies on.
    rotation: dict[str, list[str]] = {
        u: list(nbrs) for u, nbrs in emb.rotation.items()
    }

    def rot(vertex: str, nbrs: list[str]) -> None:
        rotation[vertex] = list(reversed(nbrs)) if mirror else nbrs

    clauses = [list(cl) for cl in f.clauses]
    chains: list[ChainRecord] = []
    extra: list[Clause] = []
    base = len(clauses)
    for v in range(1, f.num_vars + 1):
        if counts[v] <= 1:
            continue
        order = [int(u[1:]) for u in emb.rotation[variable_vertex(v)]]
        copies = [v] + [fresh() for _ in range(len(order) - 1)]
        for copy, ci in zip(copies, order):
            clauses[ci] = [copy if x == v else x for x in clauses[ci]]
            cv = clause_vertex(ci)
            rotation[cv] = [
                variable_vertex(copy) if u == variable_vertex(v) else u
                for u in rotation[cv]
            ]
        link_ends: list[tuple[str, str]] = []  # per link: clauses at (a, b)
        for a, b in zip(copies, copies[1:]):
            start = base + len(extra)
            cl, (u, w), pairs = chain(a, b, fresh)
            extra += cl
            verifiers = tuple(
                VerifierRecord(x, y, (start + 2 * i, start + 2 * i + 2))
                for i, (x, y) in enumerate(pairs)
            )
            chains.append(ChainRecord(v, (a, b), u, w, verifiers))
            # Draw the link along the arc from a to b with every x above the
            # chain and every y below it.  The six verifier clauses sit at
            # indices start..start+5; clause 2i belongs to the left end of
            # verifier i and clause 2i+1 to its right end.
            k = [clause_vertex(start + i) for i in range(6)]
            (x1, y1), (x2, y2), (x3, y3) = pairs
            rot(k[0], [variable_vertex(x1), variable_vertex(y1), variable_vertex(a)])
            rot(k[1], [variable_vertex(x1), variable_vertex(u), variable_vertex(y1)])
            rot(k[2], [variable_vertex(x2), variable_vertex(y2), variable_vertex(u)])
            rot(k[3], [variable_vertex(x2), variable_vertex(w), variable_vertex(y2)])
            rot(k[4], [variable_vertex(x3), variable_vertex(y3), variable_vertex(w)])
            rot(k[5], [variable_vertex(x3), variable_vertex(b), variable_vertex(y3)])
            for i, (x, y) in enumerate(pairs):
                rot(variable_vertex(x), [k[2 * i], k[2 * i + 1]])
                rot(variable_vertex(y), [k[2 * i], k[2 * i + 1]])
            rot(variable_vertex(u), [k[1], k[2]])
            rot(variable_vertex(w), [k[3], k[4]])
            link_ends.append((k[0], k[5]))
        for j, copy in enumerate(copies):
            own = clause_vertex(order[j])
            nbrs = [own]
            if j < len(link_ends):
                nbrs.append(link_ends[j][0])  # toward the next copy
            if j > 0:
                nbrs.append(link_ends[j - 1][1])  # toward the previous copy
            rot(variable_vertex(copy), nbrs)
    all_clauses = [tuple(cl) for cl in clauses] + extra
    embedding = IncidenceEmbedding(
        {u: tuple(nbrs) for u, nbrs in rotation.items()}
    )
    return _Stage1(all_clauses, next_var - 1, chains, embedding)


def split_occurrences(f: Formula1in3) -> _Stage1:
    """Replace every variable having k > 1 occurrences by k chained copies.

    Occurrences are ordered by the cyclic order of clause edges around the
    variable in a planar embedding, and consecutive copies are chained; the
    closing link is omitted so the copies form a path, keeping the graph
    planar.  Copy 1 keeps the original variable number.  The returned stage
    carries an explicit planar embedding whose faces refine the input's.
    """
    stage1 = _split_with_orientation(f, mirror=False)
    if not stage1.embedding.euler_ok():
        stage1 = _split_with_orientation(f, mirror=True)
        if not stage1.embedding.euler_ok():
            raise ReductionError("could not orient the chains planarly")
    return stage1


# Stage 2: face accounting -------------------------------------------------------

@dataclass
class FaceLedger:
    """Spare-occurrence accounting for one non-trivial face."""

    face: int
    inputs: list[int] = field(default_factory=list)  # variable per spare slot
    is_root: bool = False
    true_target: int = 0  # required number of true inputs, mod 3


@dataclass(frozen=True)
class ReductionReport:
    original: Formula1in3
    cubic: Formula1in3
    num_faces: int
    num_trivial_faces: int
    dummy_clauses: int
    chains: tuple[ChainRecord, ...]
    gadgets: tuple[FaceGadget, ...]
    dummies: tuple[tuple[int, tuple[int, int, int]], ...]  # (face, (d1, d2, d3))
    slot_faces: Mapping[int, int]  # spare-slot variable -> face


def _trivial_faces(emb: IncidenceEmbedding, f1: Formula1in3) -> set[int]:
    """Faces bounded by the 4-cycle (clause, x, clause, y) of one verifier.

    Detected structurally: two variables that occur in exactly the same two
    clauses bound such a quadrilateral.
    """
    clause_sets: dict[int, list[int]] = {v: [] for v in range(1, f1.num_vars + 1)}
    for ci, cl in enumerate(f1.clauses):
        for v in cl:
            clause_sets[v].append(ci)
    pair_vars: dict[tuple[int, int], list[int]] = {}
    for v, cis in clause_sets.items():
        if len(cis) == 2:
            pair_vars.setdefault(tuple(cis), []).append(v)
    quads: set[frozenset[str]] = set()
    for (c1, c2), vs in pair_vars.items():
        for x, y in itertools.combinations(vs, 2):
            quads.add(frozenset(
                {clause_vertex(c1), variable_vertex(x),
                 clause_vertex(c2), variable_vertex(y)}
            ))
    return {
        i for i, walk in enumerate(emb.faces)
        if len(walk) == 4 and frozenset(walk) in quads
    }


def balance_faces(
    stage1: _Stage1, emb: IncidenceEmbedding
) -> tuple[dict[int, FaceLedger], set[int]]:
    """Assign every missing occurrence to a non-trivial face it borders.

    Variables bordering one usable face are fixed there; variables bordering
    two (the chain intermediates and the unlinked copy endpoints) are one
    movable unit between those faces.  A maximum spanning tree of the face
    adjacency graph is processed leaves-first, shifting movable units so
    every face's slot count becomes a multiple of three.
    """
    f1 = Formula1in3(stage1.num_vars, tuple(stage1.clauses))
    counts, _ = occurrence_counts(f1)
    trivial = _trivial_faces(emb, f1)

    faces_of: dict[str, list[int]] = {}
    for i, walk in enumerate(emb.faces):
        for u in walk:
            faces_of.setdefault(u, [])
            if i not in faces_of[u]:
                faces_of[u].append(i)

    ledgers: dict[int, FaceLedger] = {}

    def ledger(fi: int) -> FaceLedger:
        if fi not in ledgers:
            ledgers[fi] = FaceLedger(fi)
        return ledgers[fi]

    movables: list[tuple[int, int, int]] = []  # (var, face_a, face_b)
    for v in range(1, f1.num_vars + 1):
        deficit = 3 - counts[v]
        if deficit == 0:
            continue
        if deficit < 0:
            raise ReductionError(f"variable {v} occurs more than three times")
        cand = [fi for fi in faces_of[variable_vertex(v)] if fi not in trivial]
        if not cand:
            raise ReductionError(f"variable {v} borders no usable face")
        if len(cand) == 1 or deficit != 1:
            ledger(cand[0]).inputs += [v] * deficit
        else:
            movables.append((v, cand[0], cand[1]))

    dual = nx.MultiGraph()
    dual.add_nodes_from(ledgers)
    for v, fa, fb in movables:
        dual.add_node(fa)
        dual.add_node(fb)
        dual.add_edge(fa, fb, var=v)

    for comp in nx.connected_components(dual):
        sub = dual.subgraph(comp)
        root = max(comp, key=lambda fi: (len(emb.faces[fi]), -fi))
        weighted = nx.Graph()
        weighted.add_nodes_from(sub.nodes)
        for fa, fb, _k in sub.edges(keys=True):
            w = weighted.get_edge_data(fa, fb, {"weight": 0})["weight"]
            weighted.add_edge(fa, fb, weight=w + 1)
        tree = nx.maximum_spanning_tree(weighted, weight="weight")
        parent: dict[int, int | None] = {root: None}
        order = [root]
        for fa, fb in nx.bfs_edges(tree, root):
            parent[fb] = fa
            order.append(fb)
        # Default every movable to the child side of its tree edge; movables
        # whose face pair is not a tree edge stay on the smaller face.  Then
        # fix residues leaves-first.
        pools: dict[tuple[int, int], list[int]] = {}
        for v, fa, fb in movables:
            if fa not in comp:
                continue
            if parent.get(fb) == fa:
                pools.setdefault((fb, fa), []).append(v)
            elif parent.get(fa) == fb:
                pools.setdefault((fa, fb), []).append(v)
            else:
                ledger(min(fa, fb)).inputs.append(v)
        for fi in reversed(order):
            par = parent[fi]
            pool = pools.get((fi, par), []) if par is not None else []
            have = len(ledger(fi).inputs) + len(pool)
            r = have % 3
            if par is None:
                if r:
                    raise ReductionError(
                        f"face group rooted at {fi} has {r} leftover slots mod 3"
                    )
                ledger(fi).inputs += pool
                continue
            if r > len(pool):
                raise ReductionError(
                    f"face {fi} needs to shift {r} slots toward face {par} "
                    f"but only {len(pool)} movable units are available"
                )
            moved, kept = pool[:r], pool[r:]
            ledger(fi).inputs += kept
            ledger(par).inputs += moved
    for fi, led in ledgers.items():
        if len(led.inputs) % 3:
            raise ReductionError(
                f"face {fi} ends with {len(led.inputs) % 3} slots mod 3"
            )
    return ledgers, trivial


def reduce_to_cubic(f: Formula1in3) -> ReductionReport:
    """Equisatisfiable planar rewrite where every variable occurs 3 times."""
    stage1 = split_occurrences(f)
    f1 = Formula1in3(stage1.num_vars, tuple(stage1.clauses))
    emb = stage1.embedding
    ledgers, trivial = balance_faces(stage1, emb)

    next_var = stage1.num_vars + 1

    def fresh() -> int:
        nonlocal next_var
        v = next_var
        next_var += 1
        return v

    clauses: list[Clause] = list(stage1.clauses)

    # Each connected component of the incidence graph settles its own truth
    # budget: variables supply true occurrences in multiples of three and
    # every clause absorbs one, so the spare slots of the component carry
    # (-#clauses) mod 3 true values.  That remainder is parked on one root
    # face and cancelled there: each padding clause on three fresh variables
    # contributes a constant two true slots, stepping the remainder down by
    # one, so afterwards every face needs 0 mod 3 true slots.
    vertex_faces: dict[str, list[int]] = {}
    for i, walk in enumerate(emb.faces):
        for u in walk:
            vertex_faces.setdefault(u, []).append(i)
    face_graph = nx.Graph()
    face_graph.add_nodes_from(range(len(emb.faces)))
    for fs in vertex_faces.values():
        for a, b in zip(fs, fs[1:]):
            face_graph.add_edge(a, b)

    dummies: list[tuple[int, tuple[int, int, int]]] = []
    for comp in nx.connected_components(face_graph):
        n_clauses = sum(
            1 for ci in range(len(f1.clauses))
            if vertex_faces[clause_vertex(ci)][0] in comp
        )
        c_root = (-n_clauses) % 3
        if c_root == 0:
            continue
        active = [fi for fi in comp if fi in ledgers and ledgers[fi].inputs]
        candidates = active or [fi for fi in comp if fi not in trivial]
        if not candidates:
            raise ReductionError("no usable face to host the padding clauses")
        root = max(candidates, key=lambda fi: (len(emb.faces[fi]), -fi))
        led = ledgers.setdefault(root, FaceLedger(root))
        led.is_root = True
        while c_root != 0:
            d1, d2, d3 = fresh(), fresh(), fresh()
            clauses.append((d1, d2, d3))
            led.inputs += [d1, d1, d2, d2, d3, d3]
            dummies.append((root, (d1, d2, d3)))
            c_root = (c_root - 1) % 3

    # Order each face's inputs along its boundary walk so the checker can be
    # drawn inside the face without crossings.
    gadgets: list[FaceGadget] = []
    slot_faces: dict[int, int] = {}
    for fi in sorted(ledgers):
        led = ledgers[fi]
        if not led.inputs:
            continue
        pending = list(led.inputs)
        ordered: list[int] = []
        for u in emb.faces[fi]:
            if not u.startswith("v"):
                continue
            v = int(u[1:])
            while v in pending:
                pending.remove(v)
                ordered.append(v)
        ordered += pending  # padding variables live inside the face
        gadget_clauses, gadget = _sorting_gadget(
            ordered, led.true_target, fresh, len(clauses), fi
        )
        clauses += gadget_clauses
        gadgets.append(gadget)
        for v in ordered:
            slot_faces[v] = fi

    cubic = Formula1in3(next_var - 1, tuple(clauses))
    counts, is_cubic = occurrence_counts(cubic)
    if not is_cubic:
        bad = {v: c for v, c in counts.items() if c != 3}
        raise ReductionError(f"internal error: non-cubic output {bad}")
    if embed_planar(cubic) is None:
        raise ReductionError("internal error: output graph is not planar")
    return ReductionReport(
        original=f,
        cubic=cubic,
        num_faces=len(emb.faces),
        num_trivial_faces=len(trivial),
        dummy_clauses=len(dummies),
        chains=tuple(stage1.chains),
        gadgets=tuple(gadgets),
        dummies=tuple(dummies),
        slot_faces=slot_faces,
    )


# Constructive model extension ---------------------------------------------------

class ExtensionError(RuntimeError):
    """A model of the original formula could not be extended mechanically."""


def _route_network(
    gadget: FaceGadget, values: dict[int, bool], all_clauses: Sequence[Clause]
) -> None:
    """Assign all wire and internal variables of one face gadget.

    The desired output arrangement (uniform triples, with exactly-one-true
    triples at the clause checkers) is realized by routing each input to a
    chosen target position: optional switches behave like comparators on the
    target labels, which odd-even transposition provably sorts in n rounds.
    """
    n = len(gadget.inputs)
    vals = [values[v] for v in gadget.inputs]
    total = sum(vals)
    m = n // 3
    c = gadget.true_target
    if total % 3 != c % 3 or not c <= total <= 3 * m - 2 * c:
        raise ExtensionError(
            f"face {gadget.face} carries {total} true slots, "
            f"incompatible with its checker ({c} mod 3 of {n})"
        )
    if not gadget.switches:
        for chk in gadget.checkers:
            _fill_checker(chk, values, all_clauses)
        return
    # Target vector: all-false triples, then all-true triples, then one
    # (false, false, true) triple per clause checker at the right end.
    j = (total - c) // 3
    target = [False] * (n - 3 * j - 3 * c) + [True] * (3 * j)
    target += [False, False, True] * c
    # Stable label assignment: route the i-th false input to the i-th false
    # target slot, likewise for true inputs.
    slots_for = {
        False: [i for i, t in enumerate(target) if not t],
        True: [i for i, t in enumerate(target) if t],
    }
    labels = [slots_for[v].pop(0) for v in vals]
    si = 0
    for i, _i2 in gadget.layer_pairs:
        rec = gadget.switches[si]
        si += 1
        swap = labels[i] > labels[i + 1]
        row = {
            rec.entries[0]: vals[i],
            rec.entries[1]: vals[i + 1],
            rec.exits[0]: vals[i + 1] if swap else vals[i],
            rec.exits[1]: vals[i] if swap else vals[i + 1],
        }
        if swap:
            labels[i], labels[i + 1] = labels[i + 1], labels[i]
            vals[i], vals[i + 1] = vals[i + 1], vals[i]
        _fill_span(rec.clause_span, row, values, all_clauses)
        values[rec.exits[0]] = vals[i]
        values[rec.exits[1]] = vals[i + 1]
    for chk in gadget.checkers:
        _fill_checker(chk, values, all_clauses)


def _fill_span(
    span: tuple[int, int],
    assumptions: dict[int, bool],
    values: dict[int, bool],
    all_clauses: Sequence[Clause],
) -> None:
    sub = all_clauses[span[0] : span[1]]
    model = local_model(sub, assumptions)
    if model is None:
        raise ExtensionError(
            f"component clauses {span} have no model under {assumptions}"
        )
    values.update(model)


def _fill_checker(
    chk: CheckerRecord, values: dict[int, bool], all_clauses: Sequence[Clause]
) -> None:
    if chk.kind == "clause":
        row = [values[v] for v in chk.ports]
        if sum(row) != 1:
            raise ExtensionError(f"clause checker sees {row}")
        return
    _fill_span(
        chk.clause_span, {v: values[v] for v in chk.ports}, values, all_clauses
    )


def extend_model(
    report: ReductionReport, assignment: Sequence[bool]
) -> tuple[bool, ...]:
    """Extend a model of the original formula to one of the reduced formula.

    Chain copies take the original value.  For a false chain each verifier
    holds one true variable on a chosen side of the chain; those choices
    steer every face's count of true spare slots to 0 mod 3 (a spanning-tree
    pass over faces linked by false verifier pairs).  Gadget internals are
    then filled in by routing each face's sorting network explicitly.
    """
    f = report.original
    if not eval_1in3(f, assignment):
        raise ExtensionError("assignment does not satisfy the original formula")
    all_clauses = report.cubic.clauses
    values: dict[int, bool] = {
        v + 1: bool(assignment[v]) for v in range(f.num_vars)
    }

    # Chains: copies and intermediates carry the original value; verifier
    # pairs of a false chain default to x true, y false.
    steer: list[tuple[VerifierRecord, int, int]] = []  # (verifier, fx, fy)
    for ch in report.chains:
        val = values[ch.original]
        values[ch.ends[0]] = values[ch.ends[1]] = val
        values[ch.u] = values[ch.w] = val
        for ver in ch.verifiers:
            if val:
                values[ver.x] = values[ver.y] = False
            else:
                values[ver.x], values[ver.y] = True, False
                fx = report.slot_faces.get(ver.x)
                fy = report.slot_faces.get(ver.y)
                if fx is not None and fy is not None and fx != fy:
                    steer.append((ver, fx, fy))
    for _face, (d1, d2, d3) in report.dummies:
        values[d1], values[d2], values[d3] = True, False, False

    # Steering: flip x/y pairs of false verifiers that straddle two faces
    # until every face holds 0 mod 3 true slots.
    totals: dict[int, int] = {g.face: 0 for g in report.gadgets}
    for g in report.gadgets:
        totals[g.face] = sum(values[v] for v in g.inputs) % 3
    graph = nx.MultiGraph()
    graph.add_nodes_from(totals)
    for i, (_ver, fx, fy) in enumerate(steer):
        graph.add_edge(fx, fy, idx=i)
    for comp in nx.connected_components(graph):
        if sum(totals[fi] for fi in comp) % 3:
            raise ExtensionError(
                "face group true-slot counts cannot be balanced"
            )
        root = min(comp)
        order = [root] + [
            fb for _fa, fb in nx.bfs_edges(nx.Graph(graph.subgraph(comp)), root)
        ]
        pos = {fi: i for i, fi in enumerate(order)}
        for fi in reversed(order):
            r = totals[fi] % 3
            if r == 0 or fi == root:
                continue
            # Flippable pairs between fi and any face processed after it:
            # pairs whose true slot sits in fi can push one true out, the
            # others can pull one in.  Any net shift of r mod 3 settles fi;
            # the receiving faces absorb the change when their turn comes.
            pool = [
                s for s in steer
                if fi in (s[1], s[2])
                and pos.get(s[2] if s[1] == fi else s[1], len(order)) < pos[fi]
            ]
            outgoing = [s for s in pool if (s[1] == fi) == values[s[0].x]]
            incoming = [s for s in pool if s not in outgoing]
            for p, q in itertools.product(
                range(len(outgoing) + 1), range(len(incoming) + 1)
            ):
                if (p - q) % 3 == r:
                    break
            else:
                raise ExtensionError(
                    f"not enough flippable verifier pairs at face {fi}"
                )
            for ver, fx, fy in outgoing[:p]:
                values[ver.x], values[ver.y] = values[ver.y], values[ver.x]
                other = fy if fx == fi else fx
                totals[other] = (totals[other] + 1) % 3
            for ver, fx, fy in incoming[:q]:
                values[ver.x], values[ver.y] = values[ver.y], values[ver.x]
                other = fy if fx == fi else fx
                totals[other] = (totals[other] - 1) % 3
            totals[fi] = 0
        if totals[root] % 3:
            raise ExtensionError("root face ends with unbalanced true slots")

    for gadget in report.gadgets:
        _route_network(gadget, values, all_clauses)

    if len(values) != report.cubic.num_vars:
        missing = set(range(1, report.cubic.num_vars + 1)) - set(values)
        raise ExtensionError(f"unassigned variables {sorted(missing)[:10]}")
    model = tuple(values[v] for v in range(1, report.cubic.num_vars + 1))
    if not eval_1in3(report.cubic, model):
        raise ExtensionError("extension does not satisfy the reduced formula")
    return model
