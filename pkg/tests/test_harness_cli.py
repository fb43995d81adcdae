"""Verification harness reports and the command-line interface."""

import pytest

from tilogic.cli import main, render_tiling
from tilogic.formula import Circuit, Formula1in3, Gate
from tilogic.harness import (
    FAIL,
    INCONCLUSIVE,
    PASS,
    verify_gadget,
    verify_parsimony,
    verify_reduction,
)
from tilogic.lattice import box_region, builtin_tileset
from tilogic.solver import enumerate_tilings


def test_verify_gadget_pass():
    report = verify_gadget("and2d")
    assert report.verdict == PASS
    assert len(report.rows) == 8  # every port-value combination is a row
    assert all(r.status == PASS for r in report.rows)


def test_verify_gadget_budget_inconclusive_never_pass():
    report = verify_gadget("and2d", budget=0)
    assert report.verdict == INCONCLUSIVE
    assert all(r.status == INCONCLUSIVE for r in report.rows)


def test_verify_gadget_detects_wrong_table():
    g = verify_gadget("and2d")
    from tilogic.gadgets import CATALOG, GadgetGeometry

    good = CATALOG["and2d"]
    bad = GadgetGeometry(
        good.name, good.dim, good.convention, good.tileset, good.cells,
        good.ports,
        {(True, True, False): 1},  # deliberately wrong
    )
    report = verify_gadget(bad)
    assert report.verdict == FAIL


def test_verify_parsimony():
    c = Circuit(("x", "y"), (Gate("and", "g", ("x", "y")),), "g")
    report = verify_parsimony(c)
    assert report.verdict == PASS
    assert report.rows[0].expected == 1 and report.rows[0].observed == 1


def test_verify_reduction():
    report = verify_reduction(Formula1in3(3, ((1, 2, 3),)))
    assert report.verdict == PASS
    labels = [r.label for r in report.rows]
    assert "every variable occurs 3 times" in labels
    assert "incidence graph planar" in labels


def test_report_render():
    text = verify_gadget("not2d").render()
    assert "verdict: pass" in text and "subject: gadget:not2d" in text


def test_render_tiling():
    region = box_region(2, 3)
    tilings, _ = enumerate_tilings(
        region, builtin_tileset(["right_tromino"]), limit=1)
    art = render_tiling(region, tilings[0])
    lines = art.strip("\n").split("\n")
    assert len(lines) == 3 and all(len(l) == 2 for l in lines)
    assert sorted(set("".join(lines))) == ["A", "B"]


@pytest.fixture
def files(tmp_path):
    region = tmp_path / "region.txt"
    region.write_text("dim 2\n0 0\n0 1\n1 0\n1 1\n2 0\n2 1\n")
    bad_region = tmp_path / "bad.txt"
    bad_region.write_text("dim 2\n0 0\n0 2\n")
    netlist = tmp_path / "netlist.txt"
    netlist.write_text("input x\ninput y\nand g x y\noutput g\n")
    formula = tmp_path / "formula.txt"
    formula.write_text("p m13 3 1\n1 2 3 0\n")
    cubic = tmp_path / "cubic.txt"
    cubic.write_text("p m13 3 3\n1 2 3 0\n1 2 3 0\n1 2 3 0\n")
    return tmp_path


def test_cli_solve_count_enumerate(files, capsys):
    region = str(files / "region.txt")
    assert main(["solve", "--region", region, "--tiles", "right_tromino"]) == 0
    assert main(["count", "--region", region, "--tiles", "right_tromino"]) == 0
    assert capsys.readouterr().out.strip().endswith("2")
    assert main(["solve", "--region", region,
                 "--tiles", "square_tetromino"]) == 1
    assert main(["enumerate", "--region", region, "--tiles", "right_tromino",
                 "--limit", "5", "--render"]) == 0
    out = capsys.readouterr().out
    assert "2 tiling(s)" in out


def test_cli_compile_commands(files, capsys):
    out2d = str(files / "out2d")
    assert main(["compile-circuit2d", "--netlist",
                 str(files / "netlist.txt"), "-o", out2d]) == 0
    assert main(["count", "--region", out2d + "/region.txt",
                 "--tiles", "right_tromino,square_tetromino"]) == 0
    assert capsys.readouterr().out.strip().splitlines()[-1] == "1"

    out3d = str(files / "out3d")
    assert main(["compile-3d", "--netlist",
                 str(files / "netlist.txt"), "-o", out3d]) == 0
    assert main(["solve", "--region", out3d + "/region.txt",
                 "--tiles", "domino3,straight_tromino3"]) == 0

    lifted = str(files / "lifted.txt")
    assert main(["lift-4d", "--region", out3d + "/region.txt",
                 "-o", lifted]) == 0
    assert main(["solve", "--region", lifted,
                 "--tiles", "domino4,straight_tromino4"]) == 0


def test_cli_compile_1in3(files):
    out = str(files / "out13")
    # Non-cubic input is a compile error.
    assert main(["compile-1in3", "--formula",
                 str(files / "formula.txt"), "-o", out]) == 2
    assert main(["compile-1in3", "--formula",
                 str(files / "cubic.txt"), "-o", out]) == 0


def test_cli_reduce_and_verify(files, capsys):
    out = str(files / "cubic_out.txt")
    assert main(["reduce-cubic", "--formula",
                 str(files / "formula.txt"), "-o", out]) == 0
    assert main(["verify-gadget", "not2d"]) == 0
    assert main(["verify-reduction", "--formula",
                 str(files / "formula.txt")]) == 0
    capsys.readouterr()


def test_cli_error_paths(files, capsys):
    assert main(["solve", "--region", "does-not-exist.txt",
                 "--tiles", "domino2"]) == 2
    assert main(["solve", "--region", str(files / "region.txt"),
                 "--tiles", "bogus_tile"]) == 2
    err = capsys.readouterr().err
    assert "error:" in err
