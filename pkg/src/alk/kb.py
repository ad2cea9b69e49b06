"""Knowledge bases: ordered statements plus derived symbol tables."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, Union

from .core import (ConceptDecl, FluentDecl, Formula, IndividualDecl, Node,
                   OperatorDecl, SourceSpan, SyntacticStructure, TimepointsDecl,
                   declare, resolve_symbols, walk)
from .definitions import ConceptDef, Definition, IndividualDef, OperatorDef, validate
from .errors import IllFormed, UnknownSymbol


def _span():
    return field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class Define(Node):
    definition: Definition
    span: SourceSpan | None = _span()


@dataclass(frozen=True)
class Assert(Node):
    formula: Formula
    span: SourceSpan | None = _span()


@dataclass(frozen=True)
class WeightDecl(Node):
    """``weight <factor> when <condition>.``"""

    factor: float
    condition: Formula
    span: SourceSpan | None = _span()


@dataclass(frozen=True)
class EntailQuery(Node):
    formula: Formula
    span: SourceSpan | None = _span()


@dataclass(frozen=True)
class TautQuery(Node):
    formula: Formula
    span: SourceSpan | None = _span()


@dataclass(frozen=True)
class ProbQuery(Node):
    event: Formula
    given: Formula | None = None
    span: SourceSpan | None = _span()


@dataclass(frozen=True)
class HoldsQuery(Node):
    formula: Formula
    tp: str
    span: SourceSpan | None = _span()


DECLARATIONS = (ConceptDecl, IndividualDecl, OperatorDecl, FluentDecl, TimepointsDecl)
QUERIES = (EntailQuery, TautQuery, ProbQuery, HoldsQuery)
Statement = Union[ConceptDecl, IndividualDecl, OperatorDecl, FluentDecl, TimepointsDecl,
                  Define, Assert, WeightDecl, EntailQuery, TautQuery, ProbQuery, HoldsQuery]


@dataclass(frozen=True)
class KnowledgeBase:
    """Declarations, definitions and assertions in source order.

    Equality is structural over ``statements`` only; the symbol tables are
    derived.  Use :meth:`add` to obtain an extended copy.
    """

    statements: tuple = ()
    structure: SyntacticStructure = field(default_factory=SyntacticStructure,
                                          compare=False, repr=False)
    definitions: Mapping[str, Definition] = field(default_factory=dict,
                                                  compare=False, repr=False)

    @classmethod
    def from_statements(cls, statements: Iterable) -> "KnowledgeBase":
        kb = cls()
        for s in statements:
            kb = kb.add(s)
        return kb

    def add(self, stmt) -> "KnowledgeBase":
        span = getattr(stmt, "span", None)
        structure, definitions = self.structure, self.definitions
        if isinstance(stmt, DECLARATIONS):
            structure = declare(structure, stmt)
        elif isinstance(stmt, Define):
            d = stmt.definition
            validate(self, d, span)
            structure = _register(structure, d, span)
            definitions = {**definitions, _def_name(d): d}
        elif isinstance(stmt, Assert):
            resolve_symbols(structure, stmt.formula, span=span)
        elif isinstance(stmt, WeightDecl):
            if not stmt.factor > 0:
                raise IllFormed(f"weight factor must be positive, got {stmt.factor}", span)
            resolve_symbols(structure, stmt.condition, span=span)
        elif isinstance(stmt, (EntailQuery, HoldsQuery)):
            resolve_symbols(structure, stmt.formula, span=span)
            if isinstance(stmt, HoldsQuery) and stmt.tp not in structure.timepoints:
                raise UnknownSymbol(f"unknown time point '{stmt.tp}'", span)
        elif isinstance(stmt, ProbQuery):
            resolve_symbols(structure, stmt.event, span=span)
            if stmt.given is not None:
                resolve_symbols(structure, stmt.given, span=span)
        elif isinstance(stmt, TautQuery):
            pass  # checked against its own inferred signature
        else:
            raise TypeError(f"not a statement: {stmt!r}")
        return KnowledgeBase(self.statements + (stmt,), structure, definitions)

    # -- views

    @property
    def assertions(self) -> list[Formula]:
        return [s.formula for s in self.statements if isinstance(s, Assert)]

    @property
    def weight_rules(self) -> list:
        from .uncertainty import WeightRule
        return [WeightRule(s.condition, s.factor) for s in self.statements
                if isinstance(s, WeightDecl)]

    @property
    def queries(self) -> list:
        return [s for s in self.statements if isinstance(s, QUERIES)]

    @property
    def timepoints(self) -> tuple:
        return self.structure.timepoints

    def without_queries(self) -> "KnowledgeBase":
        return KnowledgeBase(tuple(s for s in self.statements if not isinstance(s, QUERIES)),
                             self.structure, self.definitions)

    def mentions_name(self, name: str) -> bool:
        """Whether ``name`` occurs anywhere in the statements."""
        from .core import Atomic
        for s in self.statements:
            if isinstance(s, (IndividualDecl, FluentDecl)) and s.concept == name:
                return True
            if isinstance(s, OperatorDecl) and (name in s.sig.domain or s.sig.range == name):
                return True
            if isinstance(s, Define):
                d = s.definition
                if isinstance(d, OperatorDef) and name in d.sig.domain:
                    return True
                if any(isinstance(n, Atomic) and n.name == name for n in walk(d.body)):
                    return True
            for attr in ("formula", "condition", "event", "given"):
                node = getattr(s, attr, None)
                if node is not None and any(isinstance(n, Atomic) and n.name == name
                                            for n in walk(node)):
                    return True
        return False

    def uninterpreted(self):
        """Declared symbols that have no definition, in declaration order."""
        st, defs = self.structure, self.definitions
        concepts = [c for c in st.concepts if c not in defs]
        individuals = {n: c for n, c in st.individuals.items() if n not in defs}
        operators = {n: sig for n, sig in st.operators.items() if n not in defs}
        return concepts, individuals, dict(st.fluents), operators


def _def_name(d: Definition) -> str:
    return d.sig.name if isinstance(d, OperatorDef) else d.name


def _register(structure: SyntacticStructure, d: Definition, span) -> SyntacticStructure:
    if isinstance(d, IndividualDef):
        return structure.add_individual(d.name, None, span)
    if isinstance(d, ConceptDef):
        if d.name in structure.concepts:
            return structure
        return structure.add_concept(d.name, span)
    if d.sig.name in structure.operators:
        return structure
    return structure.add_operator(d.sig, span)


EMPTY_KB = KnowledgeBase()
