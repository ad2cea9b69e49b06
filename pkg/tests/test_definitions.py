import random

import pytest

from alk.core import Assertion, Atomic, Compound, ConceptCopy, OperatorSig
from alk.definitions import (ConceptDef, IndividualDef, NameSupply, OperatorDef,
                             add_definition, dependencies, desugar_multi, eval_concept,
                             expand, flatten_nested, force_fresh, is_fresh, satisfies_flat)
from alk.errors import CopyOutsideDomain, CyclicDefinition, DuplicateName, EmptyList, UnknownSymbol
from alk.kb import KnowledgeBase
from alk.parser import parse_kb, parse_term
from alk.semantics import Atom, Evaluator, Interpretation, Num, satisfies

from gen import random_world

E = frozenset()


def test_define_zero_and_succ():
    kb = add_definition(KnowledgeBase(), IndividualDef("0", Compound("set", ())))
    succ = OperatorDef(OperatorSig("Succ", ("Nat",)), ("n",),
                       Compound("set", (Atomic("n"), Compound("set", (Atomic("n"),)))))
    kb = add_definition(kb, succ)
    assert set(kb.definitions) == {"0", "Succ"}


def test_self_reference_is_cyclic():
    kb = parse_kb("concept A, B.")
    with pytest.raises(CyclicDefinition):
        add_definition(kb, ConceptDef("A", Compound("union", (Atomic("A"), Atomic("B")))))


def test_cycle_through_declared_then_defined_names():
    kb = parse_kb("concept A, B. define concept A = union(B, B).")
    with pytest.raises(CyclicDefinition):
        add_definition(kb, ConceptDef("B", Atomic("A")))


def test_unknown_reference():
    with pytest.raises(UnknownSymbol):
        add_definition(KnowledgeBase(), IndividualDef("a", Atomic("b")))


def test_copy_outside_domain():
    kb = parse_kb("concept H, M.")
    d = OperatorDef(OperatorSig("F", ("H",)), (ConceptCopy("H", 1),), ConceptCopy("M", 1))
    with pytest.raises(CopyOutsideDomain):
        add_definition(kb, d)


def test_redefinition_rejected():
    kb = parse_kb("define individual a = {}.")
    with pytest.raises(DuplicateName):
        add_definition(kb, IndividualDef("a", Compound("set", ())))


def test_succ_of_zero_is_set_encoded_one():
    kb = parse_kb("define individual 0 = {}. define operator Succ(n: Any) = {n, {n}}.")
    ev = Evaluator(kb, Interpretation())
    one = frozenset({E, frozenset({E})})
    assert ev.term(parse_term("Succ(0)")) == one
    assert ev.term(parse_term("Succ(Succ(0))")) == frozenset({one, frozenset({one})})


def test_digits_enumeration():
    kb = parse_kb("define concept Digits = {0, 1, 2, 3, 4, 5, 6, 7, 8, 9}.")
    ext = eval_concept(kb, Atomic("Digits"), Interpretation())
    assert ext == frozenset(Num(i) for i in range(10))


def test_man_is_intersection():
    kb = parse_kb("concept Human, Male. define concept Man = intersect(Human, Male).")
    w = Interpretation(concepts={"Human": frozenset({Atom(0), Atom(1)}),
                                 "Male": frozenset({Atom(1), Atom(2)})})
    assert eval_concept(kb, Atomic("Man"), w) == frozenset({Atom(1)})


def test_male_comprehension_filters_by_loop():
    kb = parse_kb("concept Animal, Sex. individual male: Sex. operator SexOf: (Animal) -> Sex."
                  "define concept Male = {x in Animal | SexOf(x) = male}.")
    animals = [Atom(0), Atom(1), Atom(2)]
    table = {(Atom(0),): Atom(3), (Atom(1),): Atom(4), (Atom(2),): Atom(4)}
    w = Interpretation(individuals={"male": Atom(3)},
                       concepts={"Animal": frozenset(animals), "Sex": frozenset({Atom(3), Atom(4)})},
                       operators={"SexOf": table})
    expected = frozenset(a for a in animals if table[(a,)] == Atom(3))
    assert eval_concept(kb, Atomic("Male"), w) == expected == frozenset({Atom(0)})


def test_replacement_is_image():
    kb = parse_kb("concept H. operator F: (H) -> H. define concept P = F(H).")
    table = {(Atom(0),): Atom(1), (Atom(1),): Atom(1)}
    w = Interpretation(concepts={"H": frozenset({Atom(0), Atom(1)})}, operators={"F": table})
    assert eval_concept(kb, Atomic("P"), w) == frozenset({Atom(1)})


@pytest.mark.parametrize("seed", range(30))
def test_eval_concept_matches_set_builder_loop(seed):
    rng = random.Random(seed)
    n = rng.randint(0, 6)
    atoms = [Atom(i) for i in range(n)]
    A = frozenset(a for a in atoms if rng.random() < 0.5)
    B = frozenset(a for a in atoms if rng.random() < 0.5)
    table = {(a,): rng.choice(atoms) for a in atoms}
    kb = parse_kb("concept A, B. operator F: (A) -> B."
                  "define concept U = union(A, B). define concept I = intersect(A, B)."
                  "define concept D = diff(A, B). define concept K = {x in A | F(x) = x}.")
    w = Interpretation(concepts={"A": A, "B": B}, operators={"F": table}, pool=tuple(atoms))
    ev = Evaluator(kb, w)
    assert ev.term(Atomic("U")) == {x for x in atoms if x in A or x in B}
    assert ev.term(Atomic("I")) == {x for x in atoms if x in A and x in B}
    assert ev.term(Atomic("D")) == {x for x in atoms if x in A and x not in B}
    assert ev.term(Atomic("K")) == {x for x in A if table[(x,)] == x}


def test_desugar_multi_forms():
    a, b, c = Atomic("a"), Atomic("b"), Atomic("c")
    one = desugar_multi([Assertion(a, b)], 1)
    assert one == Assertion(Compound("tuple", (a,)), Compound("tuple", (b,)))
    w = Interpretation(individuals={"a": Atom(0), "b": Atom(1), "c": Atom(2)})
    assert satisfies(None, w, one) == satisfies(None, w, Assertion(a, b))
    assert not satisfies(None, w, desugar_multi([Assertion(a, a), Assertion(b, c)], 2))
    assert satisfies(None, w, desugar_multi([Assertion(a, a), Assertion(b, b)], 2))
    with pytest.raises(EmptyList):
        desugar_multi([], 0)
    with pytest.raises(ValueError):
        desugar_multi([Assertion(a, b)], 2)


def test_flatten_examples():
    flat = flatten_nested(Assertion(parse_term("Op(a, Op2(b))"), Atomic("c")))
    assert flat == [Assertion(Compound("Op", (Atomic("a"), Atomic("$n0"))), Atomic("c")),
                    Assertion(Atomic("$n0"), Compound("Op2", (Atomic("b"),)))]
    assert flatten_nested(Assertion(Atomic("a"), Atomic("b"))) == [Assertion(Atomic("a"), Atomic("b"))]
    supply = NameSupply()
    flat = flatten_nested(Assertion(parse_term("Op(Op(Op(a)))"), Atomic("b")), supply)
    assert len(flat) == 3 and supply.issued == ["$n0", "$n1"]
    assert all(is_fresh(n) for n in supply.issued)


def test_flatten_agrees_with_direct_evaluation():
    ops = {"F": 1, "G": 2}
    for seed in range(40):
        rng = random.Random(seed)
        w = random_world(rng, ["a", "b"], ops, 3)
        a = Assertion(parse_term("G(F(a), F(F(b)))"), parse_term("F(G(b, a))"))
        flat = flatten_nested(a)
        assert satisfies(None, w, a) == satisfies_flat(None, w, flat)
        w2 = force_fresh(None, w, flat)
        for fa in flat[1:]:
            assert satisfies(None, w2, fa)


def test_expand_and_dependencies():
    kb = parse_kb("define individual a = {}. define individual b = {a}. define individual c = (a, b).")
    assert dependencies(kb.definitions, "c") == {"a", "b"}
    full = expand(kb.definitions, Atomic("c"))
    ev = Evaluator(kb, Interpretation())
    assert ev.term(full) == ev.term(Atomic("c"))
    # expansion order does not matter
    body = kb.definitions["c"].body
    partial = expand({"b": kb.definitions["b"]}, body)
    assert partial != body
    assert expand(kb.definitions, partial) == expand(kb.definitions, body) == full
