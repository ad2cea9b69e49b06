import random

import pytest
from hypothesis import given, settings, strategies as st

from alk.core import (And, Assertion, At, Atomic, Comprehension, Compound, ConceptCopy,
                      Exists, Forall, Image, Implies, Not, Or, Prim, Prob, Timed)
from alk.definitions import ConceptDef, OperatorDef
from alk.errors import DuplicateName, ParseErrors, UnknownSymbol
from alk.parser import parse_formula, parse_kb, parse_statements, parse_term, tokenize
from alk.printer import format_formula, format_term, print_kb

from gen import random_formula, random_kb, random_term


def test_declarations():
    kb = parse_kb("concept Human. individual alice: Human.")
    assert list(kb.structure.concepts) == ["Human"]
    assert dict(kb.structure.individuals) == {"alice": "Human"}


def test_assertion_statement():
    kb = parse_kb("concept Human. individual alice, bob: Human. "
                  "operator Father: (Human) -> Human. assert Father(alice) = bob.")
    assert kb.assertions == [Prim(Assertion(Compound("Father", (Atomic("alice"),)), Atomic("bob")))]


def test_missing_lhs_reports_line_one():
    with pytest.raises(ParseErrors) as exc:
        parse_kb("assert = bob.")
    assert exc.value.errors[0].span.line == 1


def test_error_recovery_collects_every_statement():
    text = "concept A.\nassert = b.\nindividual : A.\nconcept B.\n"
    with pytest.raises(ParseErrors) as exc:
        parse_kb(text)
    assert [e.span.line for e in exc.value.errors] == [2, 3]


def test_resolution_errors():
    with pytest.raises(UnknownSymbol):
        parse_kb("concept A. individual a: A. assert a = b.")
    with pytest.raises(DuplicateName):
        parse_kb("concept A. concept A.")


def test_fresh_prefix_rejected():
    with pytest.raises(ParseErrors):
        tokenize("assert $n0 = a.")


def test_spans_monotone():
    stmts = parse_statements("concept A.\n  individual a: A.\nassert a = a.")
    spans = [(s.span.line, s.span.column) for s in stmts]
    assert spans == [(1, 1), (2, 3), (3, 1)]
    assert spans == sorted(spans)


def test_comments_and_numbers():
    kb = parse_kb("% header\nweight 2.5 when 1 = 1. % trailing\nweight 1e-3 when 0 = 0.")
    assert [s.factor for s in kb.statements] == [2.5, 0.001]


def test_connective_associativity_and_precedence():
    f = parse_formula("a = a and b = b or c = c implies d = d implies e = e")
    assert isinstance(f, Implies) and isinstance(f.right, Implies)
    assert isinstance(f.left, Or) and isinstance(f.left.left, And)


def test_neq_and_not():
    assert parse_formula("a != b") == Not(Prim(Assertion(Atomic("a"), Atomic("b"))))
    assert parse_formula("not a = b") == parse_formula("a != b")


def test_parenthesised_formula_vs_tuple():
    assert isinstance(parse_formula("(a = b) and c = d"), And)
    f = parse_formula("(a, b) = (c, d)")
    assert f.assertion.lhs == Compound("tuple", (Atomic("a"), Atomic("b")))
    assert parse_formula("(a) = b").assertion.lhs == Atomic("a")


def test_term_forms():
    assert parse_term("{}") == Compound("set", ())
    assert parse_term("(a,)") == Compound("tuple", (Atomic("a"),))
    assert parse_term("tuple()") == Compound("tuple", ())
    assert parse_term("Human#2") == ConceptCopy("Human", 2)
    c = parse_term("{x in C | F(x) = a}")
    assert isinstance(c, Comprehension) and c.var == "x"
    assert parse_term("image(F, C)") == Image("F", (Atomic("C"),))
    assert isinstance(parse_term("pr(a = b given c = d)"), Prob)
    assert parse_term("value_at(x, t0)") == Timed(Atomic("x"), "t0")


def test_quantifiers_and_at():
    f = parse_formula("forall x in C: exists y in C: x = y")
    assert isinstance(f, Forall) and isinstance(f.body, Exists)
    assert parse_formula("at t1: x = y") == At("t1", Prim(Assertion(Atomic("x"), Atomic("y"))))


def test_statement_forms():
    kb = parse_kb("""
        timepoints t0, t1. concept S. individual on, off: S. fluent light: S.
        at t0 assert light = off.
        weight 3 when light = on.
        prob light = on given on != off.
        holds light = on at t1.
        operator F: () -> S.
    """)
    kinds = [type(s).__name__ for s in kb.statements]
    assert kinds[-5:] == ["Assert", "WeightDecl", "ProbQuery", "HoldsQuery", "OperatorDecl"]
    assert kb.assertions[0] == At("t0", Prim(Assertion(Atomic("light"), Atomic("off"))))
    assert kb.structure.operators["F"].arity == 0


def test_replacement_in_concept_position():
    kb = parse_kb("concept H. operator Father: (H) -> H. define concept P = Father(H).")
    d = kb.definitions["P"]
    assert isinstance(d, ConceptDef) and d.body == Image("Father", (Atomic("H"),))


def test_anonymous_parameter_reads_bare_concept_as_copy():
    kb = parse_kb("concept H. operator F: (H) -> H. define operator G(H) = F(F(H)).")
    d = kb.definitions["G"]
    assert isinstance(d, OperatorDef)
    assert d.params == (ConceptCopy("H", 1),)
    assert d.body == Compound("F", (Compound("F", (ConceptCopy("H", 1),)),))


def test_print_empty_kb():
    assert print_kb(parse_kb("")) == ""


def test_print_schema_copies_verbatim():
    text = print_kb(parse_kb("concept Human. assert Human#1 = Human#2."))
    assert "Human#1 = Human#2" in text


def test_printer_parenthesises_where_needed():
    f = And(Or(Prim(Assertion(Atomic("a"), Atomic("b"))), Prim(Assertion(Atomic("c"), Atomic("d")))),
            Forall("x", Atomic("C"), Prim(Assertion(Atomic("x"), Atomic("x")))))
    assert parse_formula(format_formula(f)) == f


@pytest.mark.parametrize("seed", range(200))
def test_random_formula_round_trip(seed):
    rng = random.Random(seed)
    f = random_formula(rng, ["a", "b", "c"], {"F": 1, "G": 2}, 4, ["C"])
    assert parse_formula(format_formula(f)) == f


@given(st.integers(0, 10**9))
@settings(max_examples=100, deadline=None)
def test_random_kb_round_trip(seed):
    kb = random_kb(random.Random(seed))
    text = print_kb(kb)
    again = parse_kb(text)
    assert again == kb
    assert print_kb(again) == text


@given(st.integers(0, 10**9))
@settings(max_examples=100, deadline=None)
def test_random_term_round_trip(seed):
    t = random_term(random.Random(seed), ["a", "b", "0", "1.5"], {"F": 1, "G": 2}, 4)
    assert parse_term(format_term(t)) == t
