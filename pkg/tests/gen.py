"""Random generators for knowledge bases, formulas and small worlds."""


from alk.core import (And, Assertion, Atomic, Compound, ConceptCopy, ConceptDecl, Exists,
                      Forall, Implies, IndividualDecl, Not, OperatorDecl, OperatorSig, Or,
                      Prim)
from alk.definitions import ConceptDef, IndividualDef, OperatorDef
from alk.kb import Assert, Define, EntailQuery, KnowledgeBase, ProbQuery, WeightDecl
from alk.semantics import Atom, Interpretation


def random_term(rng, names, ops, depth):
    """``ops`` maps operator name to arity."""
    if depth <= 1 or rng.random() < 0.3:
        return Atomic(rng.choice(names))
    roll = rng.random() * (1 if ops else 0.25)
    if roll < 0.15:
        return Compound("set", tuple(random_term(rng, names, ops, depth - 1)
                                     for _ in range(rng.randint(0, 2))))
    if roll < 0.25:
        return Compound("tuple", tuple(random_term(rng, names, ops, depth - 1)
                                       for _ in range(rng.randint(0, 3))))
    op = rng.choice(sorted(ops))
    return Compound(op, tuple(random_term(rng, names, ops, depth - 1) for _ in range(ops[op])))


def random_formula(rng, names, ops, depth, concepts=(), term_depth=2):
    if depth <= 1 or rng.random() < 0.25:
        return Prim(Assertion(random_term(rng, names, ops, term_depth),
                              random_term(rng, names, ops, term_depth)))
    roll = rng.randrange(6 if concepts else 4)
    sub = lambda: random_formula(rng, names, ops, depth - 1, concepts, term_depth)  # noqa: E731
    if roll == 0:
        return Not(sub())
    if roll in (1, 2, 3):
        return (And, Or, Implies)[roll - 1](sub(), sub())
    var = f"v{depth}"
    body = random_formula(rng, names + [var], ops, depth - 1, concepts, term_depth)
    return (Forall, Exists)[roll - 4](var, Atomic(rng.choice(concepts)), body)


def random_kb(rng) -> KnowledgeBase:
    """A random but well-formed knowledge base (resolution succeeds)."""
    concepts = [f"C{i}" for i in range(rng.randint(1, 3))]
    stmts = [ConceptDecl(tuple(concepts))]
    inds = [f"x{i}" for i in range(rng.randint(1, 4))]
    stmts.append(IndividualDecl(tuple(inds), rng.choice(concepts)))
    ops = {}
    for i in range(rng.randint(0, 2)):
        arity = rng.randint(1, 2)
        name = f"F{i}"
        ops[name] = arity
        dom = tuple(rng.choice(concepts) for _ in range(arity))
        stmts.append(OperatorDecl(OperatorSig(name, dom, rng.choice(concepts))))
    names = list(inds)
    if rng.random() < 0.5:
        body = random_term(rng, names, ops, 3)
        stmts.append(Define(IndividualDef("d0", body)))
        names.append("d0")
    if rng.random() < 0.5:
        c = rng.choice(concepts)
        stmts.append(Define(OperatorDef(OperatorSig("G", (c,), None), (ConceptCopy(c, 1),),
                                        Compound("set", (ConceptCopy(c, 1), Atomic(names[0]))))))
    if rng.random() < 0.4:
        stmts.append(Define(ConceptDef("D", Compound("union", (Atomic(concepts[0]),
                                                              Atomic(concepts[-1]))))))
    for _ in range(rng.randint(0, 4)):
        stmts.append(Assert(random_formula(rng, names, ops, 3, concepts)))
    if rng.random() < 0.3:
        stmts.append(WeightDecl(round(rng.uniform(0.1, 5), 3), random_formula(rng, names, ops, 2)))
    if rng.random() < 0.3:
        stmts.append(EntailQuery(random_formula(rng, names, ops, 2)))
    if rng.random() < 0.3:
        stmts.append(ProbQuery(random_formula(rng, names, ops, 2),
                               random_formula(rng, names, ops, 2) if rng.random() < 0.5 else None))
    return KnowledgeBase.from_statements(stmts)


def random_world(rng, names, ops, n_atoms):
    """A hand-built world: each name maps to an atom, each op to a random table."""
    atoms = [Atom(i) for i in range(n_atoms)]
    inds = {n: rng.choice(atoms) for n in names}
    tables = {}
    for op, arity in ops.items():
        import itertools
        tables[op] = {args: rng.choice(atoms) for args in itertools.product(atoms, repeat=arity)}
    return Interpretation(individuals=inds, operators=tables, pool=tuple(atoms))
