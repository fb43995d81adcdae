"""tilogic: polyomino/polycube tiling workbench.

Exact tiling solvers over 2D/3D/4D integer lattices, a catalog of logic
gadgets whose tilings encode Boolean signals, and compilers from SAT/circuit
instances to tiling instances.
"""

from .lattice import (
    BUILTIN_TILES,
    Cell,
    LatticeError,
    Region,
    TileShape,
    box_region,
    builtin_tileset,
    emit_region,
    emit_tileset,
    normalize_cells,
    parity,
    parse_region,
    parse_tileset,
    phase_color,
    region_from_cells,
)
from .solver import (
    Placement,
    Tiling,
    count_tilings,
    enumerate_tilings,
    exists_tiling,
    oracle_count,
    placements,
)
from .formula import (
    Circuit,
    Formula1in3,
    FormulaError,
    Gate,
    MonotonePairing,
    backtrack_solve_1in3,
    brute_force_models,
    circuit_models,
    embed_planar,
    emit_formula,
    emit_netlist,
    eval_1in3,
    eval_circuit,
    monotonize,
    occurrence_counts,
    parse_formula,
    parse_netlist,
)
from .gadgets import (
    CATALOG,
    GadgetError,
    GadgetGeometry,
    Port,
    TILESET_2D,
    TILESET_2D_TROMINO,
    TILESET_3D,
    get_gadget,
)
from .compiler import (
    CompileError,
    PlacedInstance,
    compile_1in3_2d,
    compile_circuit_2d,
    compile_monotone_3d,
    lift_4d,
    route_wire,
)
from .reduction import (
    ReductionError,
    ReductionReport,
    extend_model,
    reduce_to_cubic,
)
from .harness import (
    VerificationReport,
    aggregate_verdict,
    selftest,
    verify_gadget,
    verify_parsimony,
    verify_reduction,
)

__all__ = [
    "CATALOG",
    "Circuit",
    "CompileError",
    "Formula1in3",
    "FormulaError",
    "Gate",
    "GadgetError",
    "GadgetGeometry",
    "MonotonePairing",
    "PlacedInstance",
    "Port",
    "ReductionError",
    "ReductionReport",
    "TILESET_2D",
    "TILESET_2D_TROMINO",
    "TILESET_3D",
    "VerificationReport",
    "aggregate_verdict",
    "backtrack_solve_1in3",
    "brute_force_models",
    "circuit_models",
    "compile_1in3_2d",
    "compile_circuit_2d",
    "compile_monotone_3d",
    "embed_planar",
    "emit_formula",
    "emit_netlist",
    "eval_1in3",
    "eval_circuit",
    "extend_model",
    "get_gadget",
    "lift_4d",
    "monotonize",
    "occurrence_counts",
    "parse_formula",
    "parse_netlist",
    "reduce_to_cubic",
    "route_wire",
    "selftest",
    "verify_gadget",
    "verify_parsimony",
    "verify_reduction",
    "BUILTIN_TILES",
    "Cell",
    "LatticeError",
    "Placement",
    "Region",
    "TileShape",
    "Tiling",
    "box_region",
    "builtin_tileset",
    "count_tilings",
    "emit_region",
    "emit_tileset",
    "enumerate_tilings",
    "exists_tiling",
    "normalize_cells",
    "oracle_count",
    "parity",
    "parse_region",
    "parse_tileset",
    "phase_color",
    "placements",
    "region_from_cells",
]

__version__ = "0.1.0"
