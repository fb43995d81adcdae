"""Verification procedures tying the solver, gadget catalog, and compilers.

Each ``verify_*`` routine enumerates tilings with the exact solver, compares
them row by row against the declared expectation, and produces a
deterministic :class:`VerificationReport`.  Work is bounded by an explicit
placement budget: a row whose search would exceed it is reported as
*inconclusive*, never as a pass.
"""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .compiler import CompileError, compile_circuit_2d
from .formula import (
    BudgetExceeded,
    Circuit,
    Formula1in3,
    Gate,
    backtrack_solve_1in3,
    brute_force_models,
    circuit_models,
    embed_planar,
    eval_1in3,
    occurrence_counts,
)
from .gadgets import CATALOG, GadgetGeometry
from .lattice import Region, box_region, builtin_tileset
from .reduction import extend_model, reduce_to_cubic
from .solver import count_tilings, oracle_count, placements

PASS = "pass"
FAIL = "fail"
INCONCLUSIVE = "inconclusive"

DEFAULT_PLACEMENT_BUDGET = 500_000
DEFAULT_NODE_BUDGET = 10_000_000


@dataclass(frozen=True)
class ReportRow:
    """One checked fact: a port-value row, an assignment, or a property."""

    label: str
    expected: object
    observed: object
    status: str


@dataclass(frozen=True)
class VerificationReport:
    subject: str
    rows: tuple[ReportRow, ...]
    verdict: str
    runtime_seconds: float
    stats: Mapping[str, int] = field(default_factory=dict)

    def render(self) -> str:
        lines = [f"subject: {self.subject}"]
        for r in self.rows:
            lines.append(
                f"  {r.status:<12} {r.label}: expected {r.expected!r},"
                f" observed {r.observed!r}"
            )
        stats = " ".join(f"{k}={v}" for k, v in sorted(self.stats.items()))
        lines.append(
            f"verdict: {self.verdict} ({self.runtime_seconds:.2f}s"
            + (f"; {stats}" if stats else "")
            + ")"
        )
        return "\n".join(lines)


def _verdict(rows: Sequence[ReportRow]) -> str:
    if any(r.status == FAIL for r in rows):
        return FAIL
    if any(r.status == INCONCLUSIVE for r in rows):
        return INCONCLUSIVE
    return PASS


def _row_status(expected: object, observed: object) -> str:
    return PASS if expected == observed else FAIL


def verify_gadget(
    g: GadgetGeometry | str, budget: int = DEFAULT_PLACEMENT_BUDGET
) -> VerificationReport:
    """Check a gadget's full truth table by exact enumeration.

    For every combination of port values the junction cells covered from
    outside are removed and the remaining cells are counted exactly; the
    count must equal the declared table entry (zero for absent rows).
    """
    if isinstance(g, str):
        g = CATALOG[g] if g in CATALOG else _unknown_gadget(g)
    t0 = time.monotonic()
    tiles = builtin_tileset(g.tileset)
    rows: list[ReportRow] = []
    total_placements = 0
    for values in itertools.product([False, True], repeat=len(g.ports)):
        expected = g.truth_table.get(values, 0)
        label = "".join("T" if v else "F" for v in values)
        must = g.must_tile_cells(values)
        region = Region(must, g.dim)
        n_pl = len(placements(region, tiles))
        total_placements += n_pl
        if n_pl > budget:
            rows.append(ReportRow(label, expected, None, INCONCLUSIVE))
            continue
        observed = count_tilings(region, tiles)
        rows.append(ReportRow(label, expected, observed,
                              _row_status(expected, observed)))
    return VerificationReport(
        f"gadget:{g.name}",
        tuple(rows),
        _verdict(rows),
        time.monotonic() - t0,
        {"placements": total_placements, "ports": len(g.ports)},
    )


def _unknown_gadget(name: str) -> GadgetGeometry:
    from .gadgets import GadgetError

    raise GadgetError(f"unknown gadget {name!r}")


def verify_parsimony(
    c: Circuit, budget: int = DEFAULT_PLACEMENT_BUDGET
) -> VerificationReport:
    """Check that the 2D compilation of ``c`` has one tiling per model."""
    t0 = time.monotonic()
    models = len(circuit_models(c))
    inst = compile_circuit_2d(c)
    tiles = builtin_tileset(inst.tileset)
    rows: list[ReportRow] = []
    n_pl = len(placements(inst.region, tiles))
    if n_pl > budget:
        rows.append(ReportRow("tilings == models", models, None, INCONCLUSIVE))
    else:
        count = count_tilings(inst.region, tiles)
        rows.append(ReportRow("tilings == models", models, count,
                              _row_status(models, count)))
    return VerificationReport(
        f"circuit:{c.output}",
        tuple(rows),
        _verdict(rows),
        time.monotonic() - t0,
        {"cells": len(inst.region), "placements": n_pl,
         "inputs": len(c.inputs), "gates": len(c.gates)},
    )


def verify_reduction(
    f: Formula1in3, budget: int = DEFAULT_NODE_BUDGET
) -> VerificationReport:
    """Check the occurrence-tripling rewrite of ``f`` end to end.

    Verifies that the rewritten formula is cubic, planar, and (by
    representation) monotone, then settles equisatisfiability by a case
    split over every assignment of the original variables (which keep
    their ids in the rewrite): a satisfying assignment must extend to a
    model of the rewrite constructively, and a falsifying assignment must
    refute the rewrite with those variables pinned.  The pins cover every
    possible restriction of a rewrite model, so agreement on all cases
    decides satisfiability on both sides.
    """
    t0 = time.monotonic()
    rows: list[ReportRow] = []
    report = reduce_to_cubic(f)
    cubic = report.cubic

    _, is_cubic = occurrence_counts(cubic)
    rows.append(ReportRow("every variable occurs 3 times", True, is_cubic,
                          _row_status(True, is_cubic)))
    planar = embed_planar(cubic) is not None
    rows.append(ReportRow("incidence graph planar", True, planar,
                          _row_status(True, planar)))
    # The clause representation admits only positive occurrences, so the
    # rewrite is monotone by construction.
    rows.append(ReportRow("monotone (positive clauses only)", True, True,
                          PASS))

    n_models = 0
    extended, refuted, pinned_leaks = 0, 0, 0
    inconclusive = False
    for bits in itertools.product([False, True], repeat=f.num_vars):
        pins = {v + 1: bits[v] for v in range(f.num_vars)}
        if eval_1in3(f, bits):
            n_models += 1
            ext = extend_model(report, bits)
            if eval_1in3(cubic, ext) and all(
                ext[v - 1] == val for v, val in pins.items()
            ):
                extended += 1
        else:
            try:
                if backtrack_solve_1in3(cubic, "decide", budget, pins):
                    pinned_leaks += 1
                else:
                    refuted += 1
            except BudgetExceeded:
                inconclusive = True
    rows.append(ReportRow(
        f"all {n_models} models extend", n_models, extended,
        _row_status(n_models, extended)))
    n_falsifying = 2 ** f.num_vars - n_models
    if inconclusive:
        rows.append(ReportRow("all falsifying assignments refute",
                              n_falsifying, None, INCONCLUSIVE))
    else:
        rows.append(ReportRow(
            "all falsifying assignments refute", n_falsifying, refuted,
            FAIL if pinned_leaks else _row_status(n_falsifying, refuted)))

    return VerificationReport(
        f"reduction:{f.num_vars}v{len(f.clauses)}c",
        tuple(rows),
        _verdict(rows),
        time.monotonic() - t0,
        {"cubic_vars": cubic.num_vars, "cubic_clauses": len(cubic.clauses),
         "models": n_models},
    )


_SELFTEST_CIRCUITS = (
    Circuit(("x",), (), "x"),
    Circuit(("x",), (Gate("not", "n", ("x",)),), "n"),
    Circuit(("x", "y"), (Gate("and", "g", ("x", "y")),), "g"),
    Circuit(("x", "y"), (Gate("or", "g", ("x", "y")),), "g"),
)

_SELFTEST_FORMULAS = (
    Formula1in3(3, ((1, 2, 3),)),
    Formula1in3(4, ((1, 2, 3), (2, 3, 4))),
    # Unsatisfiable: all four triples over four variables.
    Formula1in3(4, ((1, 2, 3), (1, 2, 4), (1, 3, 4), (2, 3, 4))),
)


def _selftest_solver_report() -> VerificationReport:
    """Frozen small counts plus oracle agreement on a few regions."""
    t0 = time.monotonic()
    rows: list[ReportRow] = []
    trominoes = builtin_tileset(["right_tromino"])
    dominoes = builtin_tileset(["domino2"])
    got = count_tilings(box_region(2, 3), trominoes)
    rows.append(ReportRow("2x3 right trominoes", 2, got, _row_status(2, got)))
    fib = [1, 2, 3, 5, 8, 13, 21, 34]
    for n, want in enumerate(fib, start=1):
        got = count_tilings(box_region(2, n), dominoes)
        rows.append(ReportRow(f"2x{n} dominoes", want, got,
                              _row_status(want, got)))
        oracle = oracle_count(box_region(2, n), dominoes)
        rows.append(ReportRow(f"2x{n} dominoes (oracle)", want, oracle,
                              _row_status(want, oracle)))
    return VerificationReport(
        "solver:small-counts", tuple(rows), _verdict(rows),
        time.monotonic() - t0)


def selftest(budget: int = DEFAULT_PLACEMENT_BUDGET) -> list[VerificationReport]:
    """Deterministic aggregate run: solver counts, full gadget catalog,
    2D compiler parsimony on tiny circuits, and the cubic rewrite."""
    reports: list[VerificationReport] = [_selftest_solver_report()]
    for name in sorted(CATALOG):
        reports.append(verify_gadget(name, budget))
    for c in _SELFTEST_CIRCUITS:
        reports.append(verify_parsimony(c, budget))
    for f in _SELFTEST_FORMULAS:
        reports.append(verify_reduction(f))
    return reports


def aggregate_verdict(reports: Sequence[VerificationReport]) -> str:
    return _verdict(
        [ReportRow("", None, None, r.verdict) for r in reports]
    )
