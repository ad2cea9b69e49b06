"""Canonical concrete syntax for terms, formulas and knowledge bases."""

from __future__ import annotations

from .core import (And, Assertion, At, Atomic, Comprehension, Compound, ConceptCopy,
                   ConceptDecl, Exists, FluentDecl, Forall, Image, Implies,
                   IndividualDecl, Not, OperatorDecl, OperatorSig, Or, Prim, Prob,
                   Timed, TimepointsDecl)

# binding strength; quantifiers and `at` extend as far right as possible
_PREC = {Implies: 1, Or: 2, And: 3, Not: 4, Prim: 5, Assertion: 5}
_WORD = {Implies: "implies", Or: "or", And: "and"}


def format_term(t) -> str:
    if isinstance(t, Atomic):
        return t.name
    if isinstance(t, ConceptCopy):
        return f"{t.concept}#{t.index}"
    if isinstance(t, Compound):
        args = ", ".join(format_term(a) for a in t.args)
        if t.op == "set":
            return "{" + args + "}"
        if t.op == "tuple":
            if len(t.args) == 1:
                return f"({args},)"
            return f"({args})" if t.args else "tuple()"
        return f"{t.op}({args})"
    if isinstance(t, Comprehension):
        return f"{{{t.var} in {format_term(t.base)} | {format_formula(t.cond)}}}"
    if isinstance(t, Image):
        return f"image({', '.join([t.op] + [format_term(b) for b in t.bases])})"
    if isinstance(t, Prob):
        if t.given is None:
            return f"pr({format_formula(t.event)})"
        return f"pr({format_formula(t.event)} given {format_formula(t.given)})"
    if isinstance(t, Timed):
        return f"value_at({format_term(t.term)}, {t.tp})"
    raise TypeError(f"not a term: {t!r}")


def _operand(f, needs_parens: bool) -> str:
    text = format_formula(f)
    return f"({text})" if needs_parens else text


def format_formula(f) -> str:
    if isinstance(f, Assertion):
        return f"{format_term(f.lhs)} = {format_term(f.rhs)}"
    if isinstance(f, Prim):
        return format_formula(f.assertion)
    if isinstance(f, Not):
        if isinstance(f.body, Prim):
            a = f.body.assertion
            return f"{format_term(a.lhs)} != {format_term(a.rhs)}"
        return "not " + _operand(f.body, _PREC.get(type(f.body), 0) < _PREC[Not])
    if isinstance(f, (And, Or, Implies)):
        p = _PREC[type(f)]
        left = _operand(f.left, _PREC.get(type(f.left), 0) <= p)
        right = _operand(f.right, _PREC.get(type(f.right), 0) < p)
        return f"{left} {_WORD[type(f)]} {right}"
    if isinstance(f, (Forall, Exists)):
        q = "forall" if isinstance(f, Forall) else "exists"
        return f"{q} {f.var} in {format_term(f.concept)}: {format_formula(f.body)}"
    if isinstance(f, At):
        return f"at {f.tp}: {format_formula(f.body)}"
    raise TypeError(f"not a formula: {f!r}")


def format_node(node) -> str:
    from .definitions import ConceptDef, IndividualDef
    from .kb import (Assert, Define, EntailQuery, HoldsQuery, ProbQuery, TautQuery,
                     WeightDecl)
    if isinstance(node, (Assertion, Prim, Not, And, Or, Implies, Forall, Exists, At)):
        return format_formula(node)
    if isinstance(node, (Atomic, ConceptCopy, Compound, Comprehension, Image, Prob, Timed)):
        return format_term(node)
    if isinstance(node, ConceptDecl):
        return f"concept {', '.join(node.names)}."
    if isinstance(node, IndividualDecl):
        return f"individual {', '.join(node.names)}: {node.concept}."
    if isinstance(node, FluentDecl):
        return f"fluent {', '.join(node.names)}: {node.concept}."
    if isinstance(node, TimepointsDecl):
        return f"timepoints {', '.join(node.names)}."
    if isinstance(node, OperatorDecl):
        return f"operator {format_sig(node.sig)}."
    if isinstance(node, Define):
        d = node.definition
        if isinstance(d, IndividualDef):
            return f"define individual {d.name} = {format_term(d.body)}."
        if isinstance(d, ConceptDef):
            return f"define concept {d.name} = {format_term(d.body)}."
        params = ", ".join(format_term(p) if isinstance(p, ConceptCopy) else f"{p}: {c}"
                           for p, c in zip(d.params, d.sig.domain))
        rng = f" -> {d.sig.range}" if d.sig.range else ""
        return f"define operator {d.sig.name}({params}){rng} = {format_term(d.body)}."
    if isinstance(node, Assert):
        f = node.formula
        if isinstance(f, At):
            return f"at {f.tp} assert {format_formula(f.body)}."
        return f"assert {format_formula(f)}."
    if isinstance(node, WeightDecl):
        return f"weight {node.factor!r} when {format_formula(node.condition)}."
    if isinstance(node, EntailQuery):
        return f"entail {format_formula(node.formula)}."
    if isinstance(node, TautQuery):
        return f"taut {format_formula(node.formula)}."
    if isinstance(node, ProbQuery):
        given = "" if node.given is None else f" given {format_formula(node.given)}"
        return f"prob {format_formula(node.event)}{given}."
    if isinstance(node, HoldsQuery):
        return f"holds {format_formula(node.formula)} at {node.tp}."
    raise TypeError(f"cannot print {node!r}")


def format_sig(sig: OperatorSig) -> str:
    rng = f" -> {sig.range}" if sig.range else ""
    return f"{sig.name}: ({', '.join(sig.domain)}){rng}"


def print_kb(kb) -> str:
    """Canonical text of ``kb``; parsing it yields an equal knowledge base."""
    return "".join(format_node(s) + "\n" for s in kb.statements)
