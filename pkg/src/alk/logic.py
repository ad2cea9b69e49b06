"""Connectives and quantifiers as primitive set-theoretic assertions.

Every formula reduces to one equality between terms built from singleton
sets, ``union``, ``intersect``, ``diff`` and comprehension:

    not (a = a')            intersect({a}, {a'}) = {}
    (a = a') and (b = b')   union(intersect({a},{a'}), intersect({b},{b'})) = {a, a', b, b'}
    (a = a') or (b = b')    union(intersect({a},{a'}), intersect({b},{b'})) != {}
    (a = a') -> (b = b')    union(diff({a, a'}, intersect({a},{a'})), intersect({b},{b'})) != {}
    forall x in C: A        {x in C | A} = C
    exists x in C: A        {x in C | A} != {}

``X != Y`` is itself the negation of ``X = Y``.  Non-primitive operands are
reduced first and their equality is used in place of ``a = a'``.
"""

from __future__ import annotations

from .core import (And, Assertion, At, Comprehension, Compound, Exists, Forall, Formula,
                   Image, Implies, Not, Or, Prim, Prob, Timed, as_formula, symbols)
from .errors import UnboundVariable
from .semantics import Evaluator, Interpretation, satisfies

__all__ = ["And", "Assertion", "At", "Exists", "Forall", "Formula", "Implies", "Not", "Or",
           "Prim", "desugar", "eval_formula", "eval_desugared"]

EMPTY = Compound("set", ())


def _single(t):
    return Compound("set", (t,))


def _meet(a: Assertion):
    """``intersect({lhs}, {rhs})``: ``{v}`` if both sides equal ``v``, else empty."""
    return Compound("intersect", (_single(a.lhs), _single(a.rhs)))


def _nonempty(t) -> Assertion:
    return _negate(Assertion(t, EMPTY))


def _negate(a: Assertion) -> Assertion:
    return Assertion(_meet(a), EMPTY)


def desugar(f) -> Assertion:
    """Translate a formula into a single primitive assertion."""
    f = as_formula(f)
    if isinstance(f, Prim):
        a = f.assertion
        return Assertion(_term(a.lhs), _term(a.rhs))
    if isinstance(f, Not):
        return _negate(desugar(f.body))
    if isinstance(f, And):
        a, b = desugar(f.left), desugar(f.right)
        return Assertion(Compound("union", (_meet(a), _meet(b))),
                         Compound("set", (a.lhs, a.rhs, b.lhs, b.rhs)))
    if isinstance(f, Or):
        a, b = desugar(f.left), desugar(f.right)
        return _nonempty(Compound("union", (_meet(a), _meet(b))))
    if isinstance(f, Implies):
        a, b = desugar(f.left), desugar(f.right)
        unequal = Compound("diff", (Compound("set", (a.lhs, a.rhs)), _meet(a)))
        return _nonempty(Compound("union", (unequal, _meet(b))))
    if isinstance(f, (Forall, Exists)):
        if any(name == f.var for _, name, _ in symbols(f.concept)):
            raise UnboundVariable(f"'{f.var}' occurs in its own range {f.concept}")
        comp = Comprehension(f.var, _term(f.concept), Prim(desugar(f.body)))
        if isinstance(f, Forall):
            return Assertion(comp, _term(f.concept))
        return _nonempty(comp)
    if isinstance(f, At):
        a = desugar(f.body)
        return Assertion(Timed(a.lhs, f.tp), Timed(a.rhs, f.tp))
    raise TypeError(f"not a formula: {f!r}")


def _term(t):
    """Desugar the formulas embedded in a term (comprehensions, pr)."""
    if isinstance(t, Compound):
        return Compound(t.op, tuple(_term(a) for a in t.args), t.span)
    if isinstance(t, Comprehension):
        return Comprehension(t.var, _term(t.base), Prim(desugar(t.cond)))
    if isinstance(t, Image):
        return Image(t.op, tuple(_term(b) for b in t.bases))
    if isinstance(t, Prob):
        return Prob(Prim(desugar(t.event)), None if t.given is None else Prim(desugar(t.given)))
    if isinstance(t, Timed):
        return Timed(_term(t.term), t.tp)
    return t


def eval_formula(kb, w: Interpretation, f, space=None) -> bool:
    """Classical evaluation of ``f`` in ``w``."""
    return Evaluator(kb, w, space).check(f)


def eval_desugared(kb, w: Interpretation, f, space=None) -> bool:
    """Evaluation through :func:`desugar`; agrees with :func:`eval_formula`."""
    return satisfies(kb, w, desugar(f), space)
