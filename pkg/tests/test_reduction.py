"""Occurrence-tripling rewrite: component tables and end-to-end checks."""

import itertools

import pytest

from tilogic.formula import (
    Formula1in3,
    backtrack_solve_1in3,
    brute_force_models,
    embed_planar,
    eval_1in3,
    first_model,
    occurrence_counts,
)
from tilogic.reduction import (
    ReductionError,
    extend_model,
    partial_switch,
    reduce_to_cubic,
    three_way_verifier,
    triangle,
)


def make_fresh(start):
    state = [start]

    def fresh():
        state[0] += 1
        return state[0]

    return fresh, state


def pinned_sat(clauses, num_vars, pins):
    f = Formula1in3(num_vars, tuple(clauses))
    return first_model(f, pins) is not None


def test_triangle_exactly_one():
    fresh, state = make_fresh(3)
    clauses = triangle(1, 2, 3, fresh)
    for bits in itertools.product([False, True], repeat=3):
        want = sum(bits) == 1
        got = pinned_sat(clauses, state[0],
                         {1: bits[0], 2: bits[1], 3: bits[2]})
        assert got == want, bits


def test_partial_switch_table():
    fresh, state = make_fresh(2)
    clauses, r, s = partial_switch(1, 2, fresh)
    f = Formula1in3(state[0], tuple(clauses))
    for bits in itertools.product([False, True], repeat=2):
        models = backtrack_solve_1in3(
            f, "enumerate", assumptions={1: bits[0], 2: bits[1]})
        outs = {(m[r - 1], m[s - 1]) for m in models}
        if bits == (True, True):
            assert outs == set()
        elif bits == (False, False):
            assert outs == {(False, False)}
        else:
            assert outs == {(True, False), (False, True)}


def test_three_way_verifier_table():
    fresh, state = make_fresh(3)
    clauses = three_way_verifier(1, 2, 3, fresh)
    assert state[0] - 3 == 5  # exhaustive over the 2^5 internal assignments
    for bits in itertools.product([False, True], repeat=3):
        want = len(set(bits)) == 1
        got = pinned_sat(clauses, state[0],
                         {1: bits[0], 2: bits[1], 3: bits[2]})
        assert got == want, bits


CORPUS = [
    Formula1in3(3, ((1, 2, 3),)),
    Formula1in3(4, ((1, 2, 3), (2, 3, 4))),
    Formula1in3(5, ((1, 2, 3), (3, 4, 5))),
    Formula1in3(4, ((1, 2, 3), (1, 2, 4))),
    Formula1in3(4, ((1, 2, 3), (1, 2, 3))),
    Formula1in3(4, ((1, 2, 3), (1, 2, 4), (1, 3, 4), (2, 3, 4))),  # unsat
]


@pytest.mark.parametrize("f", CORPUS, ids=lambda f: f"{f.num_vars}v{len(f.clauses)}c")
def test_reduce_to_cubic_end_to_end(f):
    report = reduce_to_cubic(f)
    cubic = report.cubic
    _, is_cubic = occurrence_counts(cubic)
    assert is_cubic
    assert embed_planar(cubic) is not None
    # Case split over the original variables, which keep their ids: models
    # extend constructively; falsifying assignments refute under pins.
    for bits in itertools.product([False, True], repeat=f.num_vars):
        pins = {v + 1: bits[v] for v in range(f.num_vars)}
        if eval_1in3(f, bits):
            ext = extend_model(report, bits)
            assert eval_1in3(cubic, ext)
            assert all(ext[v - 1] == val for v, val in pins.items())
        else:
            assert not backtrack_solve_1in3(cubic, "decide", 20_000_000, pins)


def test_reduce_rejects_nonplanar():
    k33 = Formula1in3(3, ((1, 2, 3), (1, 2, 3), (1, 2, 3)))
    with pytest.raises(ReductionError):
        reduce_to_cubic(k33)


def test_extend_model_rejects_nonmodel():
    f = CORPUS[0]
    report = reduce_to_cubic(f)
    with pytest.raises(Exception):
        extend_model(report, (True, True, False))
