"""Weighted possible worlds and probabilities of assertions.

``Pr(A)`` is the weight of the worlds satisfying ``A`` divided by the total
weight.  Weights are summed exactly as rationals, so the result does not
depend on world order or on how the stream is partitioned.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .core import And, as_formula
from .errors import ConditionMeasureZero, EmptyWorldSpace
from .kb import KnowledgeBase
from .semantics import (EnumBounds, Evaluator, WorldSpace, enumerate_worlds,
                        run_partitioned)


@dataclass(frozen=True)
class WeightRule:
    """Multiply the weight of every world satisfying ``condition`` by ``factor``."""

    condition: object
    factor: float

    def __post_init__(self):
        if not self.factor > 0:
            raise ValueError(f"weight factor must be positive, got {self.factor}")


@dataclass(frozen=True)
class ProbResult:
    value: float
    numerator: float
    denominator: float
    world_count: int

    def __float__(self) -> float:
        return self.value


def apply_weight_rules(ws: WorldSpace, rules: Iterable[WeightRule],
                       kb: KnowledgeBase | None = None) -> WorldSpace:
    rules = list(rules)
    if not rules:
        return ws

    def reweighted():
        for w, wt in ws:
            ev = Evaluator(kb, w)
            for r in rules:
                if ev.check(r.condition):
                    wt *= r.factor
            yield w, wt

    return WorldSpace(stream=reweighted, count=ws.count)


def weighted_models(kb: KnowledgeBase, b: EnumBounds | None = None, *,
                    max_worlds: int | None = None) -> WorldSpace:
    """The models of ``kb`` under ``b``, weighted by the KB's weight rules.

    The result is materialised, since probability queries traverse it once
    per (nested) query.
    """
    worlds = enumerate_worlds(kb, b, max_worlds)
    kb_asserts = kb.assertions

    def only_models():
        for w, wt in worlds:
            ev = Evaluator(kb, w)
            if all(ev.check(f) for f in kb_asserts):
                yield w, wt

    space = WorldSpace(stream=only_models)
    return apply_weight_rules(space, kb.weight_rules, kb).materialize()


def _sums(kb, event, given, ws: WorldSpace, workers: int) -> tuple[Fraction, Fraction, int]:
    joint = event if given is None else And(given, event)
    cond = given

    def work(stream):
        num = den = Fraction(0)
        n = 0
        for w, wt in stream:
            n += 1
            ev = Evaluator(kb, w, ws)
            if cond is None or ev.check(cond):
                wt = Fraction(wt)
                den += wt
                if ev.check(joint):
                    num += wt
        return num, den, n

    parts = run_partitioned(ws, workers, work)
    return (sum((p[0] for p in parts), Fraction(0)),
            sum((p[1] for p in parts), Fraction(0)),
            sum(p[2] for p in parts))


def measure(kb: KnowledgeBase | None, q, ws: WorldSpace, given=None, *,
            workers: int = 1) -> ProbResult:
    """``Pr(q)`` or ``Pr(q | given)`` over ``ws`` with its numerator and denominator."""
    q = as_formula(q)
    given = None if given is None else as_formula(given)
    num, den, n = _sums(kb, q, given, ws, workers)
    if n == 0:
        raise EmptyWorldSpace("the world space is empty (the knowledge base has no models "
                              "within the bounds)")
    if den == 0:
        raise ConditionMeasureZero(f"the condition {given} has probability zero")
    return ProbResult(float(num / den), float(num), float(den), n)


def pr(kb: KnowledgeBase | None, q, ws: WorldSpace, *, workers: int = 1) -> float:
    return measure(kb, q, ws, workers=workers).value


def pr_cond(kb: KnowledgeBase | None, q, given, ws: WorldSpace, *, workers: int = 1) -> float:
    return measure(kb, q, ws, given, workers=workers).value
