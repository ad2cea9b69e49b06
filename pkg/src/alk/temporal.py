"""Time points and fluents.

Each world carries one value per (fluent, time point).  Rigid individuals
and all operators are time-independent; a compound term is timed
argument-wise, so ``value_at(F(x), tp)`` is ``F`` applied to ``x`` at ``tp``.
"""

from __future__ import annotations

from .core import At, as_formula
from .errors import NotAFluent
from .kb import KnowledgeBase
from .semantics import EnumBounds, Evaluator, Interpretation, check_entailment, Entailment


def timed_value(w: Interpretation, i: str, tp: str):
    """Value of fluent ``i`` at time point ``tp`` in ``w``."""
    if i not in w.fluents:
        raise NotAFluent(f"'{i}' is not a declared fluent")
    return w.fluents[i][w.tp_index(tp)]


def trajectory(w: Interpretation, i: str) -> dict:
    return {tp: timed_value(w, i, tp) for tp in w.timepoints}


def temporal_assert(w: Interpretation, a, tp: str, kb: KnowledgeBase | None = None) -> bool:
    """``T(a, tp)``: the formula ``a`` holds once every fluent is read at ``tp``."""
    w.tp_index(tp)
    return Evaluator(kb, w).check(At(tp, as_formula(a)))


def check_holds(kb: KnowledgeBase, f, tp: str, b: EnumBounds | None = None, **kw) -> Entailment:
    """Whether every model of ``kb`` satisfies ``f`` at ``tp``."""
    return check_entailment(kb, At(tp, as_formula(f)), b, **kw)


def holds(kb: KnowledgeBase, f, tp: str, b: EnumBounds | None = None, **kw) -> bool:
    return check_holds(kb, f, tp, b, **kw).verdict
