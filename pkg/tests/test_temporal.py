import random

import pytest

from alk.core import And, Not
from alk.errors import NotAFluent, UnknownTimePoint
from alk.parser import parse_formula, parse_kb
from alk.semantics import Atom, EnumBounds, Interpretation, WorldSpace
from alk.temporal import check_holds, holds, temporal_assert, timed_value, trajectory
from alk.uncertainty import pr

V0, V1 = Atom(0), Atom(1)


def world(traj, tps=("t0", "t1")):
    return Interpretation(individuals={"v0": V0, "v1": V1}, fluents={"x": tuple(traj)},
                          timepoints=tps, pool=(V0, V1))


def test_timed_value():
    w = world((V0, V0))
    assert timed_value(w, "x", "t0") == timed_value(w, "x", "t1") == V0
    w = world((V0, V1))
    assert (timed_value(w, "x", "t0"), timed_value(w, "x", "t1")) == (V0, V1)
    assert trajectory(w, "x") == {"t0": V0, "t1": V1}
    with pytest.raises(NotAFluent):
        timed_value(w, "v0", "t0")
    with pytest.raises(UnknownTimePoint):
        timed_value(w, "x", "t9")


def test_temporal_assert_examples():
    w = world((V0, V1))
    assert temporal_assert(w, parse_formula("x = x"), "t0")
    assert temporal_assert(w, parse_formula("x = v0"), "t0")
    assert not temporal_assert(w, parse_formula("x = v0"), "t1")
    with pytest.raises(UnknownTimePoint):
        temporal_assert(w, parse_formula("x = x"), "t5")


def test_compound_terms_are_timed_argumentwise():
    w = Interpretation(individuals={"v0": V0}, fluents={"x": (V0, V1)}, timepoints=("t0", "t1"),
                       operators={"F": {(V0,): V1, (V1,): V0}})
    assert temporal_assert(w, parse_formula("F(x) = x"), "t0") is False
    assert temporal_assert(w, parse_formula("F(x) = v0"), "t1")


def test_fluent_needs_time_point():
    from alk.errors import EvalError
    from alk.semantics import satisfies
    with pytest.raises(EvalError):
        satisfies(None, world((V0, V1)), parse_formula("x = v0"))


def test_holds_over_models():
    kb = parse_kb("timepoints t0, t1. concept S. individual on, off: S. fluent light: S."
                  "assert on != off. at t0 assert light = off.")
    assert holds(kb, parse_formula("light = off"), "t0", EnumBounds(2))
    r = check_holds(kb, parse_formula("light = off"), "t1", EnumBounds(2))
    assert not r.verdict and r.counterexample is not None


@pytest.mark.parametrize("seed", range(20))
def test_pointwise_classical(seed):
    rng = random.Random(seed)
    tps = ("t0", "t1", "t2")
    atoms = [Atom(i) for i in range(3)]
    w = Interpretation(individuals={"c": rng.choice(atoms)},
                       fluents={"x": tuple(rng.choice(atoms) for _ in tps),
                                "y": tuple(rng.choice(atoms) for _ in tps)},
                       timepoints=tps, pool=tuple(atoms))
    A, B = parse_formula("x = c"), parse_formula("y = x")
    for tp in tps:
        assert temporal_assert(w, A, tp) != temporal_assert(w, Not(A), tp)
        if temporal_assert(w, And(A, B), tp):
            assert temporal_assert(w, A, tp)


def test_probability_of_temporal_assertion():
    ws = WorldSpace([(world((V0, V1)), 1.0), (world((V1, V1)), 3.0)])
    assert pr(None, parse_formula("at t0: x = v0"), ws) == 0.25
    assert pr(None, parse_formula("at t1: x = v1"), ws) == 1.0
