"""1-in-3 formulas, circuits, embeddings, and their file formats."""

import itertools

import pytest

from tilogic.formula import (
    Circuit,
    Formula1in3,
    FormulaError,
    Gate,
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

F1 = Formula1in3(3, ((1, 2, 3),))
F2 = Formula1in3(4, ((1, 2, 3), (2, 3, 4)))
UNSAT4 = Formula1in3(4, ((1, 2, 3), (1, 2, 4), (1, 3, 4), (2, 3, 4)))


def test_eval_1in3():
    assert eval_1in3(F1, (True, False, False))
    assert not eval_1in3(F1, (True, True, False))
    assert not eval_1in3(F1, (False, False, False))


def test_brute_force_models():
    n, models = brute_force_models(F1)
    assert n == 3 and all(sum(m) == 1 for m in models)
    assert brute_force_models(UNSAT4)[0] == 0


def test_backtrack_agrees_with_brute_force():
    for f in (F1, F2, UNSAT4):
        n, models = brute_force_models(f)
        assert backtrack_solve_1in3(f, "count") == n
        assert sorted(backtrack_solve_1in3(f, "enumerate")) == sorted(models)
        assert backtrack_solve_1in3(f, "decide") == (n > 0)


def test_backtrack_assumptions():
    assert backtrack_solve_1in3(F1, "count", assumptions={1: True}) == 1
    assert backtrack_solve_1in3(F1, "count", assumptions={1: True, 2: True}) == 0


def test_occurrence_counts():
    counts, cubic = occurrence_counts(UNSAT4)
    assert cubic and all(c == 3 for c in counts.values())
    _, cubic = occurrence_counts(F1)
    assert not cubic


def test_formula_validation():
    with pytest.raises(FormulaError):
        Formula1in3(3, ((1, 1, 2),))
    with pytest.raises(FormulaError):
        Formula1in3(2, ((1, 2, 3),))


def test_formula_roundtrip():
    text = emit_formula(F2)
    f, rot = parse_formula(text)
    assert f == F2 and rot is None
    assert emit_formula(f) == text


def test_formula_roundtrip_with_embedding():
    emb = embed_planar(F2)
    assert emb is not None
    text = emit_formula(F2, emb.rotation)
    f, rot = parse_formula(text)
    assert f == F2 and rot == dict(emb.rotation)
    assert emit_formula(f, rot) == text


def test_embedding_euler():
    emb = embed_planar(F2)
    v = len(emb.rotation)
    e = sum(len(nbrs) for nbrs in emb.rotation.values()) // 2
    f = len(emb.faces)
    assert v - e + f == 2


def test_nonplanar_embedding_is_none():
    # Three identical clauses give a K3,3 incidence graph.
    k33 = Formula1in3(3, ((1, 2, 3), (1, 2, 3), (1, 2, 3)))
    assert embed_planar(k33) is None


NETLIST = "input x\ninput y\nand g x y\nnot h g\noutput h\n"


def test_netlist_roundtrip():
    c = parse_netlist(NETLIST)
    assert c.inputs == ("x", "y") and c.output == "h"
    assert emit_netlist(c) == NETLIST
    assert parse_netlist(emit_netlist(c)) == c


def test_eval_circuit():
    c = parse_netlist(NETLIST)  # NAND
    assert eval_circuit(c, (True, True)) is False
    assert eval_circuit(c, (False, True)) is True
    assert len(circuit_models(c)) == 3


def test_netlist_errors():
    with pytest.raises(FormulaError):
        parse_netlist("input x\nand g x y\noutput g\n")  # y undefined
    with pytest.raises(FormulaError):
        parse_netlist("input x\noutput x\noutput x\n")


def test_monotonize_preserves_semantics():
    c = parse_netlist(NETLIST)
    mp = monotonize(c)
    assert all(g.op in ("and", "or") for g in mp.circuit.gates)
    for bits in itertools.product([False, True], repeat=len(c.inputs)):
        paired = dict(zip(c.inputs, bits))
        full = []
        for name in mp.circuit.inputs:
            if name in paired:
                full.append(paired[name])
            else:
                full.append(not paired[name.removesuffix("_bar")])
        assert eval_circuit(mp.circuit, full) == eval_circuit(c, bits)


def test_monotonize_pairs():
    c = parse_netlist(NETLIST)
    mp = monotonize(c)
    assert sorted(n for p in mp.pairs for n in p) == sorted(mp.circuit.inputs)
