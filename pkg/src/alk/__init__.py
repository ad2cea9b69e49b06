"""Assertional logic: equality assertions over finite set-theoretic worlds."""

from .core import (And, Assertion, At, Atomic, Comprehension, Compound, ConceptCopy,
                   ConceptDecl, Exists, FluentDecl, Forall, Image, Implies, IndividualDecl,
                   Not, OperatorDecl, OperatorSig, Or, Prim, Prob, SourceSpan,
                   SyntacticStructure, Timed, TimepointsDecl, declare, ground_schema,
                   mentions, well_formed)
from .definitions import (ConceptDef, IndividualDef, NameSupply, OperatorDef, add_definition,
                          desugar_multi, eval_concept, flatten_nested)
from .errors import (ALKError, DuplicateName, UnknownConcept, UnknownSymbol, IllFormed,
                     CyclicDefinition, CopyOutsideDomain, UnboundVariable, EmptyList,
                     InfiniteExtent, BoundsExceeded, EvalError, OutsideDomain,
                     UnboundSymbol, NotAFluent, UnknownTimePoint, EmptyWorldSpace,
                     ConditionMeasureZero, ParseError, ParseErrors)
from .kb import (Assert, Define, EntailQuery, HoldsQuery, KnowledgeBase, ProbQuery,
                 TautQuery, WeightDecl)
from .logic import desugar, eval_formula
from .parser import parse_file, parse_formula, parse_kb, parse_term
from .printer import print_kb
from .semantics import (Atom, Bool, EnumBounds, Evaluator, Interpretation, Label, Num,
                        Quoted, WorldSpace, check_entailment, count_worlds, entails,
                        enumerate_worlds, eval_term, is_tautology, satisfies)
from .temporal import holds, temporal_assert, timed_value
from .uncertainty import (ProbResult, WeightRule, apply_weight_rules, measure, pr, pr_cond,
                          weighted_models)

__version__ = "0.1.0"

__all__ = [
    "And",
    "Assertion",
    "At",
    "Atomic",
    "Comprehension",
    "Compound",
    "ConceptCopy",
    "ConceptDecl",
    "Exists",
    "FluentDecl",
    "Forall",
    "Image",
    "Implies",
    "IndividualDecl",
    "Not",
    "OperatorDecl",
    "OperatorSig",
    "Or",
    "Prim",
    "Prob",
    "SourceSpan",
    "SyntacticStructure",
    "Timed",
    "TimepointsDecl",
    "declare",
    "ground_schema",
    "mentions",
    "well_formed",
    "ConceptDef",
    "IndividualDef",
    "NameSupply",
    "OperatorDef",
    "add_definition",
    "desugar_multi",
    "eval_concept",
    "flatten_nested",
    "ALKError",
    "DuplicateName",
    "UnknownConcept",
    "UnknownSymbol",
    "IllFormed",
    "CyclicDefinition",
    "CopyOutsideDomain",
    "UnboundVariable",
    "EmptyList",
    "InfiniteExtent",
    "BoundsExceeded",
    "EvalError",
    "OutsideDomain",
    "UnboundSymbol",
    "NotAFluent",
    "UnknownTimePoint",
    "EmptyWorldSpace",
    "ConditionMeasureZero",
    "ParseError",
    "ParseErrors",
    "Assert",
    "Define",
    "EntailQuery",
    "HoldsQuery",
    "KnowledgeBase",
    "ProbQuery",
    "TautQuery",
    "WeightDecl",
    "Atom",
    "Bool",
    "EnumBounds",
    "Evaluator",
    "Interpretation",
    "Label",
    "Num",
    "Quoted",
    "WorldSpace",
    "check_entailment",
    "count_worlds",
    "entails",
    "enumerate_worlds",
    "eval_term",
    "is_tautology",
    "satisfies",
    "ProbResult",
    "WeightRule",
    "apply_weight_rules",
    "measure",
    "pr",
    "pr_cond",
    "weighted_models",
    "desugar",
    "eval_formula",
    "parse_file",
    "parse_formula",
    "parse_kb",
    "parse_term",
    "print_kb",
    "holds",
    "temporal_assert",
    "timed_value",
]
