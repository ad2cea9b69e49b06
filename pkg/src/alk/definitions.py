"""Definitional extensions: defined individuals, operators and concepts.

Definitions are ordinary knowledge that introduce new names from existing
ones.  This module also hosts the two normalisations built on top of the
primitive form: tuple-based multi-assertions and flattening of nested
terms into fresh individuals.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Union

from .core import (BUILTIN_OPS, Assertion, Atomic, Comprehension, Compound, ConceptCopy,
                   FRESH_PREFIX, Image, OperatorSig, Term, check_name, mentions,
                   resolve_symbols, symbols)
from .errors import (CopyOutsideDomain, CyclicDefinition, DuplicateName,
                     EmptyList, EvalError, UnknownConcept)


@dataclass(frozen=True)
class IndividualDef:
    name: str
    body: Term


@dataclass(frozen=True)
class OperatorDef:
    """``sig.name(params) = body``.

    A parameter is either a variable name (``n: Nat``) or an anonymous
    concept copy (``Nat#1``) that the body refers to directly.
    """

    sig: OperatorSig
    params: tuple
    body: Term

    def __post_init__(self):
        if not isinstance(self.params, tuple):
            object.__setattr__(self, "params", tuple(self.params))
        if len(self.params) != len(self.sig.domain):
            raise ValueError("one parameter per domain concept is required")


@dataclass(frozen=True)
class ConceptDef:
    name: str
    body: Term


Definition = Union[IndividualDef, OperatorDef, ConceptDef]

# Concept expressions are terms that evaluate to finite sets.
ConceptExpr = Term
CONCEPT_OPS = ("union", "intersect", "diff", "product", "powerset")


def named(ref: str) -> ConceptExpr:
    return Atomic(ref)


def enumeration(members: Iterable[Term]) -> ConceptExpr:
    return Compound("set", tuple(members))


def comprehension(var: str, base: ConceptExpr, cond) -> ConceptExpr:
    return Comprehension(var, base, cond)


def replacement(op: str, *bases: ConceptExpr) -> ConceptExpr:
    return Image(op, bases)


def as_concept_expr(t: Term) -> ConceptExpr:
    """Read a user operator applied in concept position as a replacement."""
    if isinstance(t, Compound):
        if t.op in CONCEPT_OPS:
            return Compound(t.op, tuple(as_concept_expr(a) for a in t.args), t.span)
        if t.op not in BUILTIN_OPS and t.args:
            return Image(t.op, tuple(as_concept_expr(a) for a in t.args))
        return t
    if isinstance(t, Image):
        return Image(t.op, tuple(as_concept_expr(b) for b in t.bases))
    if isinstance(t, Comprehension):
        return Comprehension(t.var, as_concept_expr(t.base), t.cond)
    return t


# ------------------------------------------------------------ validation

def _referenced(d: Definition) -> set[str]:
    bound = frozenset(p for p in getattr(d, "params", ()) if isinstance(p, str))
    return {name for _, name, _ in symbols(d.body, bound)}


def validate(kb, d: Definition, span=None) -> None:
    """Raise if ``d`` cannot extend ``kb``; see :func:`add_definition`."""
    structure = kb.structure
    name = d.sig.name if isinstance(d, OperatorDef) else d.name
    check_name(name, span)
    if name in kb.definitions:
        raise DuplicateName(f"'{name}' is already defined", span)
    kind = structure.kind_of(name)
    if isinstance(d, IndividualDef) and kind is not None:
        raise DuplicateName(f"'{name}' is already declared as {kind}", span)
    if isinstance(d, ConceptDef) and kind not in (None, "concept"):
        raise DuplicateName(f"'{name}' is already declared as {kind}", span)
    if isinstance(d, OperatorDef):
        if kind not in (None, "operator"):
            raise DuplicateName(f"'{name}' is already declared as {kind}", span)
        if kind == "operator" and structure.operators[name].domain != d.sig.domain:
            raise DuplicateName(f"definition of '{name}' does not match its declared domain", span)
        for c in d.sig.domain:
            if not structure.has_concept(c):
                raise UnknownConcept(f"unknown concept '{c}' in the domain of '{name}'", span)
        allowed = {p for p in d.params if isinstance(p, ConceptCopy)}
        foreign = sorted(str(c) for c in mentions(d.body) - allowed)
        if foreign:
            raise CopyOutsideDomain(
                f"body of '{name}' mentions {', '.join(foreign)} outside its domain", span)
        for p, c in zip(d.params, d.sig.domain):
            if isinstance(p, ConceptCopy) and p.concept != c:
                raise CopyOutsideDomain(f"parameter {p} does not match domain concept '{c}'", span)

    if name in _referenced(d):
        raise CyclicDefinition(f"'{name}' is defined in terms of itself", span)

    bound = frozenset(p for p in getattr(d, "params", ()) if isinstance(p, str))
    resolve_symbols(structure, d.body, bound, span)

    # declared-then-defined names can close a cycle through earlier definitions
    defs = dict(kb.definitions)
    defs[name] = d
    _check_acyclic(defs, name, span)


def _check_acyclic(defs: dict, start: str, span) -> None:
    path: list[str] = []
    state: dict[str, int] = {}

    def visit(n: str) -> None:
        state[n] = 1
        path.append(n)
        for m in sorted(_referenced(defs[n])):
            if m not in defs:
                continue
            if state.get(m) == 1:
                cycle = path[path.index(m):] + [m]
                raise CyclicDefinition("cyclic definition: " + " -> ".join(cycle), span)
            if m not in state:
                visit(m)
        path.pop()
        state[n] = 2

    visit(start)


def add_definition(kb, d: Definition):
    """Return ``kb`` extended with the definition ``d``."""
    from .kb import Define
    return kb.add(Define(d))


def dependencies(defs: dict, name: str) -> set[str]:
    """Names of definitions that ``name`` transitively depends on."""
    out: set[str] = set()
    todo = [name]
    while todo:
        n = todo.pop()
        for m in _referenced(defs[n]):
            if m in defs and m not in out:
                out.add(m)
                todo.append(m)
    return out


def expand(defs: dict, t: Term) -> Term:
    """Inline every defined individual in ``t`` (fully expanded term)."""
    if isinstance(t, Atomic):
        d = defs.get(t.name)
        if isinstance(d, IndividualDef):
            return expand(defs, d.body)
        return t
    if isinstance(t, Compound):
        return Compound(t.op, tuple(expand(defs, a) for a in t.args))
    return t


# ------------------------------------------------------------ evaluation

def eval_concept(kb, e: ConceptExpr, w) -> frozenset:
    """Extent of a concept expression in the interpretation ``w``."""
    from .semantics import Evaluator
    value = Evaluator(kb, w).term(e)
    if not isinstance(value, frozenset):
        raise EvalError(f"{e} does not denote a concept (got a non-set value)")
    return value


# ------------------------------------------------- multi and nested forms

def desugar_multi(asserts: list, n: int | None = None) -> Assertion:
    """Pack ``n`` assertions into one tuple equality."""
    asserts = list(asserts)
    if not asserts:
        raise EmptyList("a multi-assertion needs at least one assertion")
    if n is not None and n != len(asserts):
        raise ValueError(f"arity {n} does not match {len(asserts)} assertions")
    return Assertion(Compound("tuple", tuple(a.lhs for a in asserts)),
                     Compound("tuple", tuple(a.rhs for a in asserts)))


class NameSupply:
    """Generates fresh individual names with the reserved ``$n`` prefix."""

    def __init__(self, prefix: str = FRESH_PREFIX, avoid: Iterable[str] = ()):
        self.prefix = prefix
        self.avoid = set(avoid)
        self._counter = itertools.count()
        self.issued: list[str] = []

    def __call__(self) -> str:
        while True:
            name = f"{self.prefix}{next(self._counter)}"
            if name not in self.avoid:
                self.issued.append(name)
                return name


def _flatten_arg(t: Term, fresh: NameSupply, out: list) -> Term:
    if not isinstance(t, Compound):
        return t
    name = fresh()
    out.append(None)          # reserve slot so the outer assertion precedes
    slot = len(out) - 1
    inner = Compound(t.op, tuple(_flatten_arg(a, fresh, out) for a in t.args))
    out[slot] = Assertion(Atomic(name), inner)
    return Atomic(name)


def _flatten_side(t: Term, fresh: NameSupply, out: list) -> Term:
    if isinstance(t, Compound):
        return Compound(t.op, tuple(_flatten_arg(a, fresh, out) for a in t.args))
    return t


def flatten_nested(a: Assertion, fresh: NameSupply | None = None) -> list[Assertion]:
    """Replace every nested compound argument by a fresh defined individual.

    ``Op(a, Op2(b)) = c`` becomes ``[Op(a, $n0) = c, $n0 = Op2(b)]``.  The
    first element is the rewritten original; the rest define the fresh names
    outermost first.
    """
    fresh = fresh or NameSupply()
    defs: list = []
    lhs = _flatten_side(a.lhs, fresh, defs)
    rhs = _flatten_side(a.rhs, fresh, defs)
    return [Assertion(lhs, rhs)] + defs


def is_fresh(name: str) -> bool:
    return name.startswith(FRESH_PREFIX)


def force_fresh(kb, w, flat: list[Assertion]):
    """Extend ``w`` with the values forced on fresh names by ``flat``."""
    from .semantics import Evaluator
    extra = {}
    for a in reversed(flat):
        if isinstance(a.lhs, Atomic) and is_fresh(a.lhs.name) and a.lhs.name not in extra:
            ev = Evaluator(kb, w.extend(extra))
            extra[a.lhs.name] = ev.term(a.rhs)
    return w.extend(extra)


def satisfies_flat(kb, w, flat: list[Assertion]) -> bool:
    """Evaluate a flattened multi-assertion in ``w`` extended by its fresh names."""
    from .semantics import satisfies
    w2 = force_fresh(kb, w, flat)
    return satisfies(kb, w2, desugar_multi(flat))
