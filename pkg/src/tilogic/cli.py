"""Command-line interface for the tiling workbench.

Exit codes: 0 = success / tiling exists / satisfiable, 1 = no tiling /
unsatisfiable, 2 = error, 3 = inconclusive verification.
"""

from __future__ import annotations

import argparse
import os
import string
import sys
from typing import Sequence

from .compiler import (
    CompileError,
    PlacedInstance,
    compile_1in3_2d,
    compile_circuit_2d,
    compile_monotone_3d,
    lift_4d,
)
from .formula import (
    FormulaError,
    emit_formula,
    monotonize,
    parse_formula,
    parse_netlist,
)
from .gadgets import CATALOG, GadgetError
from .harness import (
    FAIL,
    INCONCLUSIVE,
    PASS,
    aggregate_verdict,
    selftest,
    verify_gadget,
    verify_reduction,
)
from .lattice import (
    BUILTIN_TILES,
    LatticeError,
    Region,
    TileShape,
    builtin_tileset,
    emit_region,
    parse_region,
    parse_tileset,
)
from .reduction import ReductionError, reduce_to_cubic
from .solver import Tiling, count_tilings, enumerate_tilings, exists_tiling

EXIT_TRUE = 0
EXIT_FALSE = 1
EXIT_ERROR = 2
EXIT_INCONCLUSIVE = 3

_VERDICT_EXIT = {PASS: EXIT_TRUE, FAIL: EXIT_FALSE, INCONCLUSIVE: EXIT_INCONCLUSIVE}


def _read(path: str) -> str:
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


def _write(path: str, text: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)


def _load_tiles(spec: str) -> list[TileShape]:
    """A tileset file path, or comma-separated builtin tile names."""
    if os.path.exists(spec):
        return parse_tileset(_read(spec))
    names = [n.strip() for n in spec.split(",") if n.strip()]
    unknown = [n for n in names if n not in BUILTIN_TILES]
    if unknown:
        raise LatticeError(
            f"unknown builtin tiles {unknown}; available: "
            + ", ".join(sorted(BUILTIN_TILES))
        )
    return builtin_tileset(names)


def render_tiling(region: Region, tiling: Tiling) -> str:
    """ASCII picture of a 2D tiling: one letter per tile, '.' outside."""
    if region.dim != 2:
        raise LatticeError("rendering supports 2D regions only")
    lo, hi = region.bounding_box()
    glyphs = string.ascii_uppercase + string.ascii_lowercase + string.digits
    owner: dict[tuple[int, int], str] = {}
    for i, p in enumerate(tiling.placements):
        for c in p.cells:
            owner[c] = glyphs[i % len(glyphs)]
    rows = []
    for y in range(hi[1], lo[1] - 1, -1):
        rows.append("".join(
            owner.get((x, y), "." if (x, y) not in region.cells else "?")
            for x in range(lo[0], hi[0] + 1)
        ))
    return "\n".join(rows) + "\n"


def _emit_instance(inst: PlacedInstance, outdir: str) -> None:
    os.makedirs(outdir, exist_ok=True)
    _write(os.path.join(outdir, "region.txt"), emit_region(inst.region))
    _write(os.path.join(outdir, "tiles.txt"),
           "\n".join(inst.tileset) + "\n")
    ports = [f"input {name} " + " ".join(str(x) for x in cell)
             for name, cell in sorted(inst.input_map.items())]
    if inst.output_port is not None:
        ports.append("output " +
                     " ".join(str(x) for x in inst.output_port))
    _write(os.path.join(outdir, "ports.txt"), "\n".join(ports) + "\n")
    _write(os.path.join(outdir, "provenance.txt"), inst.provenance_text())
    print(f"wrote region ({len(inst.region)} cells), tiles, ports, and "
          f"provenance to {outdir}")


def _cmd_solve(args: argparse.Namespace) -> int:
    region = parse_region(_read(args.region))
    tiles = _load_tiles(args.tiles)
    if args.render:
        tilings, _ = enumerate_tilings(region, tiles, limit=1)
        if tilings:
            print("tiling exists")
            print(render_tiling(region, tilings[0]), end="")
            return EXIT_TRUE
        print("no tiling")
        return EXIT_FALSE
    if exists_tiling(region, tiles):
        print("tiling exists")
        return EXIT_TRUE
    print("no tiling")
    return EXIT_FALSE


def _cmd_count(args: argparse.Namespace) -> int:
    region = parse_region(_read(args.region))
    tiles = _load_tiles(args.tiles)
    n = count_tilings(region, tiles)
    print(n)
    return EXIT_TRUE if n > 0 else EXIT_FALSE


def _cmd_enumerate(args: argparse.Namespace) -> int:
    region = parse_region(_read(args.region))
    tiles = _load_tiles(args.tiles)
    tilings, truncated = enumerate_tilings(region, tiles, limit=args.limit)
    for i, t in enumerate(tilings):
        print(f"tiling {i}:")
        for p in t.placements:
            cells = " ".join(
                "(" + ",".join(str(x) for x in c) + ")"
                for c in sorted(p.cells)
            )
            print(f"  {p.tile} {cells}")
        if args.render:
            print(render_tiling(region, t), end="")
    print(f"{len(tilings)} tiling(s)" + (" (truncated)" if truncated else ""))
    return EXIT_TRUE if tilings else EXIT_FALSE


def _cmd_compile_circuit2d(args: argparse.Namespace) -> int:
    circuit = parse_netlist(_read(args.netlist))
    _emit_instance(compile_circuit_2d(circuit), args.output)
    return EXIT_TRUE


def _cmd_compile_1in3(args: argparse.Namespace) -> int:
    formula, _ = parse_formula(_read(args.formula))
    _emit_instance(compile_1in3_2d(formula), args.output)
    return EXIT_TRUE


def _cmd_reduce_cubic(args: argparse.Namespace) -> int:
    formula, _ = parse_formula(_read(args.formula))
    report = reduce_to_cubic(formula)
    _write(args.output, emit_formula(report.cubic))
    print(
        f"reduced {formula.num_vars} vars / {len(formula.clauses)} clauses"
        f" to cubic {report.cubic.num_vars} vars /"
        f" {len(report.cubic.clauses)} clauses"
        f" ({report.num_faces} faces, {report.num_trivial_faces} trivial,"
        f" {report.dummy_clauses} dummy clauses, {len(report.chains)} chains)"
    )
    return EXIT_TRUE


def _cmd_compile_3d(args: argparse.Namespace) -> int:
    circuit = parse_netlist(_read(args.netlist))
    _emit_instance(compile_monotone_3d(monotonize(circuit)), args.output)
    return EXIT_TRUE


def _cmd_lift_4d(args: argparse.Namespace) -> int:
    region = parse_region(_read(args.region))
    _write(args.output, emit_region(lift_4d(region)))
    print(f"lifted {len(region)} cells to 4D")
    return EXIT_TRUE


def _cmd_verify_gadget(args: argparse.Namespace) -> int:
    report = verify_gadget(args.name)
    print(report.render())
    return _VERDICT_EXIT[report.verdict]


def _cmd_verify_reduction(args: argparse.Namespace) -> int:
    formula, _ = parse_formula(_read(args.formula))
    report = verify_reduction(formula)
    print(report.render())
    return _VERDICT_EXIT[report.verdict]


def _cmd_selftest(args: argparse.Namespace) -> int:
    reports = selftest()
    for r in reports:
        print(r.render())
        print()
    verdict = aggregate_verdict(reports)
    print(f"selftest: {verdict} ({len(reports)} reports)")
    return _VERDICT_EXIT[verdict]


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tilogic",
        description="Exact polyomino/polycube tiling solver and "
        "SAT/circuit-to-tiling compilers.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="decide whether the region tiles")
    p.add_argument("--region", required=True)
    p.add_argument("--tiles", required=True,
                   help="tileset file or comma-separated builtin names")
    p.add_argument("--render", action="store_true",
                   help="print one tiling as ASCII (2D only)")
    p.set_defaults(func=_cmd_solve)

    p = sub.add_parser("count", help="count tilings exactly")
    p.add_argument("--region", required=True)
    p.add_argument("--tiles", required=True)
    p.set_defaults(func=_cmd_count)

    p = sub.add_parser("enumerate", help="list tilings up to a limit")
    p.add_argument("--region", required=True)
    p.add_argument("--tiles", required=True)
    p.add_argument("--limit", type=int, required=True)
    p.add_argument("--render", action="store_true")
    p.set_defaults(func=_cmd_enumerate)

    p = sub.add_parser("compile-circuit2d",
                       help="netlist to 2D region (parsimonious)")
    p.add_argument("--netlist", required=True)
    p.add_argument("-o", "--output", required=True, metavar="DIR")
    p.set_defaults(func=_cmd_compile_circuit2d)

    p = sub.add_parser("compile-1in3",
                       help="cubic monotone 1-in-3 formula to tromino-only region")
    p.add_argument("--formula", required=True)
    p.add_argument("-o", "--output", required=True, metavar="DIR")
    p.set_defaults(func=_cmd_compile_1in3)

    p = sub.add_parser("reduce-cubic",
                       help="rewrite a planar 1-in-3 formula so every "
                       "variable occurs exactly 3 times")
    p.add_argument("--formula", required=True)
    p.add_argument("-o", "--output", required=True, metavar="F2")
    p.set_defaults(func=_cmd_reduce_cubic)

    p = sub.add_parser("compile-3d",
                       help="netlist to 3D domino/tromino region")
    p.add_argument("--netlist", required=True)
    p.add_argument("-o", "--output", required=True, metavar="DIR")
    p.set_defaults(func=_cmd_compile_3d)

    p = sub.add_parser("lift-4d",
                       help="lift a 3D region to 4D preserving the count")
    p.add_argument("--region", required=True)
    p.add_argument("-o", "--output", required=True, metavar="F2")
    p.set_defaults(func=_cmd_lift_4d)

    p = sub.add_parser("verify-gadget", help="check a catalog gadget's table")
    p.add_argument("name", choices=sorted(CATALOG))
    p.set_defaults(func=_cmd_verify_gadget)

    p = sub.add_parser("verify-reduction",
                       help="check the cubic rewrite of a formula")
    p.add_argument("--formula", required=True)
    p.set_defaults(func=_cmd_verify_reduction)

    p = sub.add_parser("selftest", help="run the full verification suite")
    p.set_defaults(func=_cmd_selftest)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (LatticeError, GadgetError, FormulaError, ReductionError,
            CompileError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
