"""Syntactic structures, terms, assertions and schema grounding.

A syntactic structure is the triple of individuals, concepts and operators
declared for a domain.  Terms are atomic names or operator applications;
the only primitive piece of knowledge is an assertion ``lhs = rhs``.
Formula nodes (connectives, quantifiers, time points) live here as well
because set-builder terms and probability terms embed them.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping, Union

from .errors import (DuplicateName, IllFormed, InfiniteExtent, UnknownConcept,
                     UnknownSymbol)

IDENT_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_']*\Z")
INT_RE = re.compile(r"[0-9]+\Z")
REAL_RE = re.compile(r"[0-9]+(\.[0-9]+)?([eE][-+]?[0-9]+)?\Z")

KEYWORDS = frozenset({
    "concept", "individual", "operator", "define", "assert", "not", "and",
    "or", "implies", "forall", "exists", "in", "given", "weight", "when",
    "fluent", "timepoints", "at", "entail", "taut", "prob", "holds",
})

# name -> arity (None: variadic)
BUILTIN_OPS: dict[str, int | None] = {
    "set": None, "tuple": None, "singleton": 1,
    "union": 2, "intersect": 2, "diff": 2, "product": 2, "powerset": 1,
    "member": 2, "subseteq": 2, "truth": 1,
    "geq": 2, "leq": 2, "gt": 2, "lt": 2, "add": 2, "sub": 2, "mul": 2,
}
# parsed into dedicated nodes, never Compound
SPECIAL_FORMS = frozenset({"image", "pr", "value_at"})
BUILTIN_CONCEPTS = frozenset({
    "Nat", "Atoms", "Any", "Bool", "Tp", "Terms", "Assertions", "Concepts",
})
LITERALS = frozenset({"true", "false"})
FRESH_PREFIX = "$n"

RESERVED = KEYWORDS | set(BUILTIN_OPS) | SPECIAL_FORMS | BUILTIN_CONCEPTS | LITERALS


def is_numeral(name: str) -> bool:
    return bool(REAL_RE.match(name))


def check_name(name: str, span=None) -> None:
    if name in RESERVED:
        raise IllFormed(f"'{name}' is a reserved name", span)
    if name.startswith("$"):
        raise IllFormed(f"'{name}': the '$' prefix is reserved for generated names", span)
    if not (IDENT_RE.match(name) or INT_RE.match(name)):
        raise IllFormed(f"'{name}' is not a valid identifier", span)


@dataclass(frozen=True)
class SourceSpan:
    file: str
    line: int
    column: int

    def __str__(self) -> str:
        return f"{self.file}:{self.line}:{self.column}"


class Node:
    """Mixin giving every syntax node its canonical concrete-syntax text."""

    def __str__(self) -> str:
        from .printer import format_node
        return format_node(self)


def _span():
    return field(default=None, compare=False, repr=False)


# ---------------------------------------------------------------- terms

@dataclass(frozen=True)
class Atomic(Node):
    name: str
    span: SourceSpan | None = _span()


@dataclass(frozen=True)
class Compound(Node):
    op: str
    args: tuple = ()
    span: SourceSpan | None = _span()

    def __post_init__(self):
        if not isinstance(self.args, tuple):
            object.__setattr__(self, "args", tuple(self.args))


@dataclass(frozen=True)
class ConceptCopy(Node):
    """The ``index``-th copy of a concept inside a schema (``Human#2``)."""

    concept: str
    index: int = 1

    def __post_init__(self):
        if self.index < 1:
            raise ValueError("concept copy index must be positive")


@dataclass(frozen=True)
class Comprehension(Node):
    """Restricted comprehension ``{var in base | cond}``."""

    var: str
    base: "Term"
    cond: "Formula"


@dataclass(frozen=True)
class Image(Node):
    """Replacement: ``{op(x1..xn) | xi in base_i}``."""

    op: str
    bases: tuple

    def __post_init__(self):
        if not isinstance(self.bases, tuple):
            object.__setattr__(self, "bases", tuple(self.bases))


@dataclass(frozen=True)
class Prob(Node):
    """Real-valued probability term ``pr(event)`` / ``pr(event given cond)``."""

    event: "Formula"
    given: "Formula | None" = None


@dataclass(frozen=True)
class Timed(Node):
    """The value of ``term`` at time point ``tp``."""

    term: "Term"
    tp: str


Term = Union[Atomic, Compound, ConceptCopy, Comprehension, Image, Prob, Timed]


@dataclass(frozen=True)
class Assertion(Node):
    lhs: Term
    rhs: Term


# Schema terms and assertions share the representation: a schema is simply a
# term/assertion that mentions at least one ConceptCopy.
SchemaTerm = Term
SchemaAssertion = Assertion


# ------------------------------------------------------------- formulas

@dataclass(frozen=True)
class Prim(Node):
    assertion: Assertion


@dataclass(frozen=True)
class Not(Node):
    body: "Formula"


@dataclass(frozen=True)
class And(Node):
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Or(Node):
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Implies(Node):
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Forall(Node):
    var: str
    concept: Term
    body: "Formula"


@dataclass(frozen=True)
class Exists(Node):
    var: str
    concept: Term
    body: "Formula"


@dataclass(frozen=True)
class At(Node):
    """Temporal formula: ``body`` holds at time point ``tp``."""

    tp: str
    body: "Formula"


Formula = Union[Prim, Not, And, Or, Implies, Forall, Exists, At]
BINARY = (And, Or, Implies)
QUANTIFIERS = (Forall, Exists)


def as_formula(x) -> Formula:
    return Prim(x) if isinstance(x, Assertion) else x


def neq(lhs: Term, rhs: Term) -> Formula:
    return Not(Prim(Assertion(lhs, rhs)))


# --------------------------------------------------------- declarations

@dataclass(frozen=True)
class OperatorSig:
    name: str
    domain: tuple = ()
    range: str | None = None

    def __post_init__(self):
        if not isinstance(self.domain, tuple):
            object.__setattr__(self, "domain", tuple(self.domain))

    @property
    def arity(self) -> int:
        return len(self.domain)


@dataclass(frozen=True)
class ConceptDecl(Node):
    names: tuple
    span: SourceSpan | None = _span()


@dataclass(frozen=True)
class IndividualDecl(Node):
    names: tuple
    concept: str
    span: SourceSpan | None = _span()


@dataclass(frozen=True)
class OperatorDecl(Node):
    sig: OperatorSig
    span: SourceSpan | None = _span()


@dataclass(frozen=True)
class FluentDecl(Node):
    names: tuple
    concept: str
    span: SourceSpan | None = _span()


@dataclass(frozen=True)
class TimepointsDecl(Node):
    names: tuple
    span: SourceSpan | None = _span()


Declaration = Union[ConceptDecl, IndividualDecl, OperatorDecl, FluentDecl, TimepointsDecl]


@dataclass(frozen=True)
class SyntacticStructure:
    """Immutable record of every declared or defined symbol.

    ``individuals`` and ``fluents`` map a name to its declared concept (None
    for defined individuals), ``concepts`` is an ordered name -> None map,
    ``operators`` maps names to signatures.  All names share one namespace.
    """

    individuals: Mapping[str, str | None] = field(default_factory=dict)
    concepts: Mapping[str, None] = field(default_factory=dict)
    operators: Mapping[str, OperatorSig] = field(default_factory=dict)
    fluents: Mapping[str, str] = field(default_factory=dict)
    timepoints: tuple = ()

    def kind_of(self, name: str) -> str | None:
        if name in self.individuals:
            return "individual"
        if name in self.concepts:
            return "concept"
        if name in self.operators:
            return "operator"
        if name in self.fluents:
            return "fluent"
        if name in self.timepoints:
            return "timepoint"
        return None

    def has_concept(self, name: str) -> bool:
        return name in self.concepts or name in BUILTIN_CONCEPTS

    def _with(self, **changes) -> "SyntacticStructure":
        data = dict(individuals=self.individuals, concepts=self.concepts,
                    operators=self.operators, fluents=self.fluents,
                    timepoints=self.timepoints)
        data.update(changes)
        return SyntacticStructure(**data)

    def _claim(self, names: Iterable[str], span=None) -> None:
        seen = set()
        for n in names:
            check_name(n, span)
            if n in seen or self.kind_of(n) is not None:
                raise DuplicateName(f"'{n}' is already declared as {self.kind_of(n) or 'this statement'}", span)
            seen.add(n)

    def _need_concept(self, name: str | None, span=None) -> None:
        if name is not None and not self.has_concept(name):
            raise UnknownConcept(f"unknown concept '{name}'", span)

    def add_individual(self, name: str, concept: str | None = None, span=None):
        self._claim([name], span)
        self._need_concept(concept, span)
        return self._with(individuals={**self.individuals, name: concept})

    def add_concept(self, name: str, span=None):
        self._claim([name], span)
        return self._with(concepts={**self.concepts, name: None})

    def add_operator(self, sig: OperatorSig, span=None):
        self._claim([sig.name], span)
        for c in sig.domain:
            self._need_concept(c, span)
        self._need_concept(sig.range, span)
        return self._with(operators={**self.operators, sig.name: sig})


def declare(structure: SyntacticStructure, decl: Declaration) -> SyntacticStructure:
    """Return ``structure`` extended with one declaration statement."""
    span = getattr(decl, "span", None)
    if isinstance(decl, ConceptDecl):
        structure._claim(decl.names, span)
        return structure._with(concepts={**structure.concepts, **{n: None for n in decl.names}})
    if isinstance(decl, IndividualDecl):
        structure._claim(decl.names, span)
        structure._need_concept(decl.concept, span)
        return structure._with(individuals={**structure.individuals,
                                            **{n: decl.concept for n in decl.names}})
    if isinstance(decl, OperatorDecl):
        return structure.add_operator(decl.sig, span)
    if isinstance(decl, FluentDecl):
        structure._claim(decl.names, span)
        structure._need_concept(decl.concept, span)
        return structure._with(fluents={**structure.fluents, **{n: decl.concept for n in decl.names}})
    if isinstance(decl, TimepointsDecl):
        structure._claim(decl.names, span)
        return structure._with(timepoints=structure.timepoints + tuple(decl.names))
    raise TypeError(f"not a declaration: {decl!r}")


# ------------------------------------------------------------ traversal

def children(node) -> tuple:
    """Direct sub-nodes of a term, assertion or formula."""
    if isinstance(node, Compound):
        return node.args
    if isinstance(node, Image):
        return node.bases
    if isinstance(node, Comprehension):
        return (node.base, node.cond)
    if isinstance(node, Prob):
        return (node.event,) if node.given is None else (node.event, node.given)
    if isinstance(node, Timed):
        return (node.term,)
    if isinstance(node, Assertion):
        return (node.lhs, node.rhs)
    if isinstance(node, Prim):
        return (node.assertion,)
    if isinstance(node, Not):
        return (node.body,)
    if isinstance(node, BINARY):
        return (node.left, node.right)
    if isinstance(node, QUANTIFIERS):
        return (node.concept, node.body)
    if isinstance(node, At):
        return (node.body,)
    return ()


def walk(node) -> Iterator:
    yield node
    for c in children(node):
        yield from walk(c)


def mentions(node) -> frozenset:
    """The set of concept copies occurring anywhere in ``node``."""
    return frozenset(n for n in walk(node) if isinstance(n, ConceptCopy))


def symbols(node, bound: frozenset = frozenset()) -> Iterator[tuple[str, str, object]]:
    """Yield ``(role, name, node)`` for every free symbol occurrence.

    role is ``term`` for atomic names, ``op`` for applied operators and
    ``tp`` for time-point labels.  Variables bound by comprehensions and
    quantifiers are skipped.
    """
    if isinstance(node, Atomic):
        if node.name not in bound:
            yield ("term", node.name, node)
        return
    if isinstance(node, Compound):
        yield ("op", node.op, node)
    elif isinstance(node, Image):
        yield ("op", node.op, node)
    elif isinstance(node, (Timed, At)):
        yield ("tp", node.tp, node)
    if isinstance(node, Comprehension):
        yield from symbols(node.base, bound)
        yield from symbols(node.cond, bound | {node.var})
        return
    if isinstance(node, QUANTIFIERS):
        yield from symbols(node.concept, bound)
        yield from symbols(node.body, bound | {node.var})
        return
    for c in children(node):
        yield from symbols(c, bound)


def substitute(node, mapping: Mapping):
    """Replace concept copies (keys of ``mapping``) by terms."""
    if isinstance(node, ConceptCopy):
        return mapping.get(node, node)
    if isinstance(node, Atomic):
        return node
    if isinstance(node, Compound):
        return Compound(node.op, tuple(substitute(a, mapping) for a in node.args), node.span)
    if isinstance(node, Image):
        return Image(node.op, tuple(substitute(b, mapping) for b in node.bases))
    if isinstance(node, Comprehension):
        return Comprehension(node.var, substitute(node.base, mapping), substitute(node.cond, mapping))
    if isinstance(node, Prob):
        return Prob(substitute(node.event, mapping),
                    None if node.given is None else substitute(node.given, mapping))
    if isinstance(node, Timed):
        return Timed(substitute(node.term, mapping), node.tp)
    if isinstance(node, Assertion):
        return Assertion(substitute(node.lhs, mapping), substitute(node.rhs, mapping))
    if isinstance(node, Prim):
        return Prim(substitute(node.assertion, mapping))
    if isinstance(node, Not):
        return Not(substitute(node.body, mapping))
    if isinstance(node, BINARY):
        return type(node)(substitute(node.left, mapping), substitute(node.right, mapping))
    if isinstance(node, QUANTIFIERS):
        return type(node)(node.var, substitute(node.concept, mapping), substitute(node.body, mapping))
    if isinstance(node, At):
        return At(node.tp, substitute(node.body, mapping))
    raise TypeError(f"cannot substitute into {node!r}")


def depth(node) -> int:
    kids = children(node)
    return 1 + max((depth(k) for k in kids), default=0)


# ------------------------------------------------------- well-formedness

def well_formed(structure: SyntacticStructure, t) -> list[str]:
    """Operator-existence and arity diagnostics for every compound node.

    Sort conformance (argument membership in the domain concepts) is a
    semantic condition and is checked during evaluation instead.
    """
    diags = []
    for node in walk(t):
        if isinstance(node, Compound):
            name, n = node.op, len(node.args)
            if name in BUILTIN_OPS:
                arity = BUILTIN_OPS[name]
            elif name in structure.operators:
                arity = structure.operators[name].arity
            else:
                diags.append(f"unknown operator '{name}' in {node}")
                continue
            if arity is not None and arity != n:
                diags.append(f"arity mismatch: '{name}' expects {arity} argument(s), got {n} in {node}")
        elif isinstance(node, Image):
            if node.op not in structure.operators:
                diags.append(f"unknown operator '{node.op}' in {node}")
            elif structure.operators[node.op].arity != len(node.bases):
                diags.append(f"arity mismatch: '{node.op}' expects "
                             f"{structure.operators[node.op].arity} concept(s) in {node}")
    return diags


def resolve_symbols(structure: SyntacticStructure, node, bound: frozenset = frozenset(),
                    span=None) -> None:
    """Raise unless every free name in ``node`` resolves and arities match."""
    for role, name, n in symbols(node, bound):
        where = getattr(n, "span", None) or span
        if role == "term":
            kind = structure.kind_of(name)
            if kind == "operator":
                if structure.operators[name].arity == 0:
                    continue
                raise IllFormed(f"operator '{name}' used without arguments", where)
            if kind is not None or name in BUILTIN_CONCEPTS or name in LITERALS or is_numeral(name):
                continue
            raise UnknownSymbol(f"unknown symbol '{name}'", where)
        if role == "op":
            if name in BUILTIN_OPS or name in structure.operators:
                continue
            raise UnknownSymbol(f"unknown operator '{name}'", where)
        if role == "tp" and name not in structure.timepoints:
            raise UnknownSymbol(f"unknown time point '{name}'", where)
    for c in mentions(node):
        if not structure.has_concept(c.concept):
            raise UnknownConcept(f"unknown concept '{c.concept}' in copy {c}", span)
    diags = well_formed(structure, node)
    if diags:
        raise IllFormed("; ".join(diags), span)


# ------------------------------------------------------------- grounding

ConceptExtents = Mapping[str, Iterable[Term]]


def ground_schema(structure: SyntacticStructure, s: SchemaAssertion,
                  extent: ConceptExtents) -> frozenset:
    """All ground assertions represented by the schema assertion ``s``.

    Each distinct copy is assigned an element of its concept's extent
    independently; occurrences of the same copy receive the same element.
    """
    copies = sorted(mentions(s), key=lambda c: (c.concept, c.index))
    pools = []
    for c in copies:
        if c.concept not in extent or extent[c.concept] is None:
            raise InfiniteExtent(f"concept '{c.concept}' has no finite extent")
        pools.append(list(extent[c.concept]))
    return frozenset(substitute(s, dict(zip(copies, choice)))
                     for choice in itertools.product(*pools))
