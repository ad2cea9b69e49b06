import random

import pytest

from alk.errors import ConditionMeasureZero, EmptyWorldSpace
from alk.parser import parse_formula, parse_kb
from alk.semantics import Atom, EnumBounds, Interpretation, WorldSpace
from alk.uncertainty import (WeightRule, apply_weight_rules, measure, pr, pr_cond,
                             weighted_models)

from oracles import exact_pr


def space(weights):
    """World i maps x to atom i; constants a0..a{n-1} name each atom."""
    consts = {f"a{i}": Atom(i) for i in range(len(weights))}
    return WorldSpace((Interpretation(individuals={**consts, "x": Atom(i)}), wt)
                      for i, wt in enumerate(weights))


def in_worlds(idx):
    idx = sorted(idx)
    if not idx:
        return parse_formula("x != x")
    return parse_formula(" or ".join(f"x = a{i}" for i in idx))


def test_pr_examples():
    assert pr(None, in_worlds([0]), space([1, 1])) == 0.5
    assert pr(None, in_worlds([0]), space([1, 3])) == 0.25
    assert pr(None, parse_formula("x = x"), space([1, 3])) == 1.0


def test_pr_cond_examples():
    ws = space([1, 1, 2])
    assert pr_cond(None, in_worlds([0, 2]), in_worlds([1, 2]), ws) == pytest.approx(2 / 3, abs=1e-15)
    q = in_worlds([1])
    assert pr_cond(None, q, parse_formula("x = x"), ws) == pr(None, q, ws)
    assert pr_cond(None, q, q, ws) == 1.0


def test_errors():
    with pytest.raises(EmptyWorldSpace):
        pr(None, parse_formula("x = x"), WorldSpace([]))
    with pytest.raises(ConditionMeasureZero):
        pr_cond(None, in_worlds([0]), parse_formula("x != x"), space([1, 2]))
    with pytest.raises(ValueError):
        WorldSpace([(Interpretation(), 0.0)])
    with pytest.raises(ValueError):
        WeightRule(parse_formula("x = x"), -1)


def test_measure_reports_parts():
    r = measure(None, in_worlds([0]), space([1, 3]))
    assert (r.value, r.numerator, r.denominator, r.world_count) == (0.25, 1.0, 4.0, 2)


def test_weight_rules():
    ws = space([1, 1])
    assert apply_weight_rules(ws, []) is ws
    r3 = WeightRule(in_worlds([0]), 3)
    assert apply_weight_rules(ws, [r3]).weights == [3.0, 1.0]
    r2 = WeightRule(parse_formula("x = x"), 2)
    both = apply_weight_rules(ws, [r3, r2]).weights
    combined = apply_weight_rules(ws, [WeightRule(in_worlds([0]), 6),
                                       WeightRule(in_worlds([1]), 2)]).weights
    assert both == combined == [6.0, 2.0]


def test_weighted_models_from_kb():
    kb = parse_kb("individual c: Bool. weight 3 when c = true.")
    ws = weighted_models(kb, EnumBounds(1))
    assert sorted(ws.weights) == [1.0, 3.0]
    assert pr(kb, parse_formula("c = true"), ws) == 0.75


def test_nested_pr_is_a_term():
    kb = parse_kb("individual c: Bool.")
    ws = weighted_models(kb, EnumBounds(1))
    f = parse_formula("geq(pr(geq(pr(c = true), 0.3) = true), 0.3) = true")
    assert pr(kb, f, ws) == 1.0


@pytest.mark.parametrize("seed", range(20))
def test_against_rational_oracle(seed):
    rng = random.Random(seed)
    n = rng.randint(2, 10)
    weights = [rng.uniform(0.01, 1) for _ in range(n)]
    ws = space(weights)
    S = {i for i in range(n) if rng.random() < 0.5}
    G = {i for i in range(n) if rng.random() < 0.5} or {0}
    truths = [i in S for i in range(n)]
    given = [i in G for i in range(n)]
    assert pr(None, in_worlds(S), ws) == float(exact_pr(truths, weights))
    assert pr_cond(None, in_worlds(S), in_worlds(G), ws) == float(exact_pr(truths, weights, given))


def test_order_independence_is_exact():
    rng = random.Random(7)
    weights = [rng.uniform(1e-6, 1) for _ in range(50)]
    q = in_worlds(range(0, 50, 3))
    base = pr(None, q, space(weights))
    consts = {f"a{i}": Atom(i) for i in range(50)}
    pairs = [(Interpretation(individuals={**consts, "x": Atom(i)}), w) for i, w in enumerate(weights)]
    rng.shuffle(pairs)
    assert pr(None, q, WorldSpace(pairs)) == base
