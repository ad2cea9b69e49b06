"""Finite set-theoretic semantics.

Values are hereditarily finite: atoms, labels, Booleans, numbers, Python
``frozenset`` (finite sets) and ``tuple``.  Equality of values is structural
Python equality, which realises ``=``.  Interpretations are enumerated
exhaustively under :class:`EnumBounds`; entailment and tautology checking
quantify over that finite stream.
"""

from __future__ import annotations

import itertools
import math
import os
import re
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Iterable, Iterator, Mapping

from .core import (BUILTIN_CONCEPTS, BUILTIN_OPS, INT_RE, LITERALS, QUANTIFIERS,
                   And, Assertion, At, Atomic, Comprehension, Compound, ConceptCopy,
                   ConceptDecl, Forall, Image, Implies, IndividualDecl, Not,
                   OperatorDecl, OperatorSig, Or, Prim, Prob, Timed, TimepointsDecl,
                   as_formula, is_numeral, mentions, symbols, walk)
from .definitions import OperatorDef
from .errors import (BoundsExceeded, EvalError, InfiniteExtent, OutsideDomain,
                     UnboundSymbol, UnknownTimePoint)
from .kb import EMPTY_KB, KnowledgeBase

DEFAULT_MAX_WORLDS = 10**7


# ---------------------------------------------------------------- values

@dataclass(frozen=True)
class Atom:
    """Anonymous domain element drawn from the atom pool."""

    index: int


@dataclass(frozen=True)
class Label:
    """A time-point label."""

    name: str


@dataclass(frozen=True)
class Bool:
    value: bool

    def __bool__(self) -> bool:
        return self.value


@dataclass(frozen=True)
class Num:
    """Natural or real number; ``Num(1) == Num(1.0)``."""

    value: int | float


@dataclass(frozen=True)
class Quoted:
    """A syntactic object (term or assertion) used as an individual."""

    node: object


TOP, BOT = Bool(True), Bool(False)
Value = object


def value_key(v) -> tuple:
    """Total order on values used for every canonical enumeration."""
    if isinstance(v, Bool):
        return (0, v.value)
    if isinstance(v, Num):
        return (1, v.value)
    if isinstance(v, Atom):
        return (2, v.index)
    if isinstance(v, Label):
        return (3, v.name)
    if isinstance(v, tuple):
        return (4, len(v), tuple(value_key(x) for x in v))
    if isinstance(v, frozenset):
        return (5, len(v), tuple(sorted(value_key(x) for x in v)))
    if isinstance(v, Quoted):
        return (6, str(v.node))
    raise TypeError(f"not a value: {v!r}")


def format_value(v) -> str:
    if isinstance(v, Bool):
        return "true" if v.value else "false"
    if isinstance(v, Num):
        return repr(v.value)
    if isinstance(v, Atom):
        return f"@{v.index}"
    if isinstance(v, Label):
        return v.name
    if isinstance(v, tuple):
        inner = ", ".join(format_value(x) for x in v)
        return f"({inner},)" if len(v) == 1 else f"({inner})"
    if isinstance(v, frozenset):
        return "{" + ", ".join(format_value(x) for x in sorted(v, key=value_key)) + "}"
    if isinstance(v, Quoted):
        return f"'{v.node}'"
    return repr(v)


def contains(v, target) -> bool:
    if v == target and type(v) is type(target):
        return True
    if isinstance(v, (tuple, frozenset)):
        return any(contains(x, target) for x in v)
    return False


# -------------------------------------------------------- interpretations

@dataclass(frozen=True)
class EnumBounds:
    max_domain_atoms: int = 3
    nat_bound: int = 32
    powerset_cap: int = 16

    def __post_init__(self):
        for f in ("max_domain_atoms", "nat_bound", "powerset_cap"):
            v = getattr(self, f)
            if not isinstance(v, int) or v <= 0:
                raise ValueError(f"{f} must be a positive integer, got {v!r}")

    _KEYS = {"atoms": "max_domain_atoms", "nat": "nat_bound", "pow": "powerset_cap"}

    @classmethod
    def parse(cls, text: str, base: "EnumBounds | None" = None) -> "EnumBounds":
        """Parse ``atoms=N,nat=N,pow=N`` (any subset, any order)."""
        values = dict(vars(base or cls()))
        for part in filter(None, (p.strip() for p in text.split(","))):
            key, sep, num = part.partition("=")
            if not sep or key.strip() not in cls._KEYS or not re.fullmatch(r"\d+", num.strip()):
                raise ValueError(f"bad bounds item {part!r}; expected atoms=N, nat=N or pow=N")
            values[cls._KEYS[key.strip()]] = int(num)
        return cls(**values)

    def as_dict(self) -> dict:
        return {"atoms": self.max_domain_atoms, "nat": self.nat_bound, "pow": self.powerset_cap}

    def __str__(self) -> str:
        return ",".join(f"{k}={v}" for k, v in self.as_dict().items())


def default_max_worlds() -> int:
    env = os.environ.get("ALK_MAX_WORLDS")
    return int(env) if env else DEFAULT_MAX_WORLDS


@dataclass(frozen=True)
class Interpretation:
    """A possible world over a finite atom pool.

    Only uninterpreted symbols are stored; defined symbols are evaluated from
    their definitions on demand.  ``operators`` maps a name to its function
    table ``{argument tuple: value}``; ``fluents`` maps a name to one value
    per time point, in ``timepoints`` order.
    """

    individuals: Mapping[str, Value] = field(default_factory=dict)
    concepts: Mapping[str, frozenset] = field(default_factory=dict)
    operators: Mapping[str, Mapping[tuple, Value]] = field(default_factory=dict)
    fluents: Mapping[str, tuple] = field(default_factory=dict)
    timepoints: tuple = ()
    pool: tuple = ()
    nat_bound: int = 32
    powerset_cap: int = 16

    def extend(self, individuals: Mapping[str, Value]) -> "Interpretation":
        if not individuals:
            return self
        return Interpretation({**self.individuals, **individuals}, self.concepts,
                              self.operators, self.fluents, self.timepoints, self.pool,
                              self.nat_bound, self.powerset_cap)

    def tp_index(self, tp: str) -> int:
        try:
            return self.timepoints.index(tp)
        except ValueError:
            raise UnknownTimePoint(f"unknown time point '{tp}'") from None

    @property
    def domain(self) -> frozenset:
        vals = set(self.pool)
        vals.update(self.individuals.values())
        for ext in self.concepts.values():
            vals.update(ext)
        for traj in self.fluents.values():
            vals.update(traj)
        for table in self.operators.values():
            vals.update(table.values())
        return frozenset(vals)

    def uses(self, atom: Atom) -> bool:
        stores = itertools.chain(
            self.individuals.values(), self.concepts.values(), self.fluents.values(),
            (v for t in self.operators.values() for kv in t.items() for v in kv))
        return any(contains(v, atom) for v in stores)

    def describe(self) -> str:
        parts = []
        for n, v in self.concepts.items():
            parts.append(f"{n}={format_value(v)}")
        for n, v in self.individuals.items():
            parts.append(f"{n}={format_value(v)}")
        for n, traj in self.fluents.items():
            parts.append(f"{n}=[" + ", ".join(f"{tp}:{format_value(x)}"
                                              for tp, x in zip(self.timepoints, traj)) + "]")
        for n, table in self.operators.items():
            body = ", ".join(f"{format_value(k)}->{format_value(v)}" for k, v in
                             sorted(table.items(), key=lambda kv: value_key(kv[0])))
            parts.append(f"{n}={{{body}}}")
        return "; ".join(parts)


class WorldSpace:
    """Weighted possible worlds, materialised or streamed lazily.

    A lazy space takes a zero-argument factory that yields
    ``(interpretation, weight)`` pairs; the factory may be called repeatedly.
    """

    def __init__(self, worlds: Iterable = (), *, stream: Callable[[], Iterable] | None = None,
                 count: int | None = None):
        if stream is None:
            items = []
            for w, wt in worlds:
                items.append((w, _check_weight(wt)))
            self._items = items
            self._stream = None
            self.count = len(items)
        else:
            self._items = None
            self._stream = stream
            self.count = count
        self.prob_cache: dict = {}

    def __iter__(self) -> Iterator:
        if self._items is not None:
            return iter(self._items)
        return ((w, _check_weight(wt)) for w, wt in self._stream())

    def __len__(self) -> int:
        if self.count is None:
            self.count = sum(1 for _ in self)
        return self.count

    def materialize(self) -> "WorldSpace":
        return self if self._items is not None else WorldSpace(list(self))

    @property
    def weights(self) -> list[float]:
        return [wt for _, wt in self]

    @property
    def interpretations(self) -> list[Interpretation]:
        return [w for w, _ in self]


def _check_weight(wt) -> float:
    wt = float(wt)
    if not (wt > 0 and math.isfinite(wt)):
        raise ValueError(f"world weights must be positive and finite, got {wt}")
    return wt


# -------------------------------------------------------------- evaluation

EMPTY_ENV: Mapping = {}


def _as_set(v, what) -> frozenset:
    if not isinstance(v, frozenset):
        raise EvalError(f"{what} is not a set: {format_value(v)}")
    return v


def _as_num(v, what):
    if not isinstance(v, Num):
        raise EvalError(f"{what} is not a number: {format_value(v)}")
    return v.value


class Evaluator:
    """Evaluates terms and formulas in one world.

    ``env`` binds variables: quantifier/comprehension variables and named
    operator parameters by name, schema copies by :class:`ConceptCopy`.
    ``tp`` is the current time point, or None outside temporal context.
    """

    def __init__(self, kb: KnowledgeBase | None = None, world: Interpretation | None = None,
                 space: WorldSpace | None = None):
        self.kb = kb if kb is not None else EMPTY_KB
        self.world = world if world is not None else Interpretation()
        self.space = space
        self.defs = self.kb.definitions
        self._cache: dict = {}

    # -- terms

    def term(self, t, env: Mapping = EMPTY_ENV, tp: str | None = None):
        kind = type(t)
        if kind is Atomic:
            return self._atomic(t.name, env, tp)
        if kind is Compound:
            args = tuple(self.term(a, env, tp) for a in t.args)
            if t.op in BUILTIN_OPS:
                return self._builtin(t.op, args, t)
            return self.apply(t.op, args)
        if kind is ConceptCopy:
            try:
                return env[t]
            except KeyError:
                raise UnboundSymbol(f"concept copy {t} is not bound here") from None
        if kind is Comprehension:
            base = _as_set(self.term(t.base, env, tp), f"base of {t}")
            return frozenset(x for x in base
                             if self.formula(t.cond, {**env, t.var: x}, tp))
        if kind is Image:
            bases = [sorted(_as_set(self.term(b, env, tp), f"base of {t}"), key=value_key)
                     for b in t.bases]
            return frozenset(self.apply(t.op, args) for args in itertools.product(*bases))
        if kind is Prob:
            return Num(self._probability(t))
        if kind is Timed:
            self.world.tp_index(t.tp)
            return self.term(t.term, env, t.tp)
        raise TypeError(f"not a term: {t!r}")

    def _atomic(self, name: str, env: Mapping, tp: str | None):
        if name in env:
            return env[name]
        w = self.world
        if name in w.fluents:
            if tp is None:
                raise EvalError(f"fluent '{name}' used outside a temporal context")
            return w.fluents[name][w.tp_index(tp)]
        if name in w.individuals:
            return w.individuals[name]
        d = self.defs.get(name)
        if d is not None:
            if isinstance(d, OperatorDef):
                if d.sig.arity == 0:
                    return self.apply(name, ())
            else:
                key = (name, tp)
                if key not in self._cache:
                    self._cache[key] = self.term(d.body, EMPTY_ENV, tp)
                return self._cache[key]
        if name in w.concepts:
            return w.concepts[name]
        if name in BUILTIN_CONCEPTS:
            return self.builtin_concept(name)
        if name in w.operators and () in w.operators[name]:
            return w.operators[name][()]
        if name in w.timepoints:
            return Label(name)
        if name in LITERALS:
            return TOP if name == "true" else BOT
        if INT_RE.match(name):
            n = int(name)
            if n > w.nat_bound:
                raise EvalError(f"natural {n} exceeds the bound nat={w.nat_bound}")
            return Num(n)
        if is_numeral(name):
            return Num(float(name))
        raise UnboundSymbol(f"'{name}' has no interpretation in this world")

    def builtin_concept(self, name: str) -> frozenset:
        w = self.world
        if name == "Nat":
            return frozenset(Num(i) for i in range(w.nat_bound + 1))
        if name == "Atoms":
            return frozenset(w.pool)
        if name == "Bool":
            return frozenset({TOP, BOT})
        if name == "Tp":
            return frozenset(Label(t) for t in w.timepoints)
        if name == "Any":
            raise InfiniteExtent("the universal concept 'Any' has no finite extent")
        if name == "Assertions":
            return frozenset(Quoted(f) for f in self.kb.assertions)
        if name == "Terms":
            return frozenset(Quoted(n) for f in self.kb.assertions for n in walk(f)
                             if isinstance(n, (Atomic, Compound)))
        if name == "Concepts":
            return frozenset(self._atomic(c, EMPTY_ENV, None) for c in self.kb.structure.concepts)
        raise UnboundSymbol(f"unknown built-in concept '{name}'")

    def concept_extent(self, ref: str) -> frozenset:
        return _as_set(self._atomic(ref, EMPTY_ENV, None), f"concept '{ref}'")

    def apply(self, op: str, args: tuple):
        table = self.world.operators.get(op)
        if table is not None:
            try:
                return table[args]
            except KeyError:
                raise OutsideDomain(f"{op} is not defined on "
                                    f"({', '.join(format_value(a) for a in args)})") from None
        d = self.defs.get(op)
        if isinstance(d, OperatorDef):
            if len(args) != d.sig.arity:
                raise EvalError(f"{op} expects {d.sig.arity} argument(s), got {len(args)}")
            env = {}
            for param, ref, v in zip(d.params, d.sig.domain, args):
                if ref != "Any" and v not in self.concept_extent(ref):
                    raise OutsideDomain(f"{format_value(v)} is outside the domain '{ref}' of {op}")
                env[param] = v
            return self.term(d.body, env, None)
        raise UnboundSymbol(f"operator '{op}' has no interpretation in this world")

    def _builtin(self, op: str, args: tuple, node):
        if op == "set" or op == "singleton":
            return frozenset(args)
        if op == "tuple":
            return args
        if op in ("union", "intersect", "diff", "subseteq"):
            a = _as_set(args[0], f"first argument of {node}")
            b = _as_set(args[1], f"second argument of {node}")
            if op == "union":
                return a | b
            if op == "intersect":
                return a & b
            if op == "diff":
                return a - b
            return TOP if a <= b else BOT
        if op == "product":
            a = _as_set(args[0], f"first argument of {node}")
            b = _as_set(args[1], f"second argument of {node}")
            return frozenset((x, y) for x in a for y in b)
        if op == "powerset":
            a = sorted(_as_set(args[0], f"argument of {node}"), key=value_key)
            if len(a) > self.world.powerset_cap:
                raise InfiniteExtent(f"powerset of a {len(a)}-element set exceeds the cap "
                                     f"pow={self.world.powerset_cap}")
            return frozenset(frozenset(c) for r in range(len(a) + 1)
                             for c in itertools.combinations(a, r))
        if op == "member":
            return TOP if args[0] in _as_set(args[1], f"second argument of {node}") else BOT
        if op == "truth":
            q = args[0]
            if not isinstance(q, Quoted):
                raise EvalError(f"truth() expects an assertion, got {format_value(q)}")
            return TOP if self.check(as_formula(q.node)) else BOT
        x = _as_num(args[0], f"first argument of {node}")
        y = _as_num(args[1], f"second argument of {node}")
        if op == "geq":
            return Bool(x >= y)
        if op == "leq":
            return Bool(x <= y)
        if op == "gt":
            return Bool(x > y)
        if op == "lt":
            return Bool(x < y)
        if op == "add":
            return Num(x + y)
        if op == "sub":
            return Num(x - y)
        if op == "mul":
            return Num(x * y)
        raise EvalError(f"unknown built-in '{op}'")

    def _probability(self, t: Prob) -> float:
        if self.space is None:
            raise EvalError(f"{t} needs a world space; use it inside a probability or entailment query")
        from .uncertainty import measure
        key = (id(self.kb), t.event, t.given)
        cache = self.space.prob_cache
        if key not in cache:
            cache[key] = measure(self.kb, t.event, self.space, t.given).value
        return cache[key]

    # -- formulas

    def formula(self, f, env: Mapping = EMPTY_ENV, tp: str | None = None) -> bool:
        """Direct classical evaluation of a formula (no desugaring)."""
        kind = type(f)
        if kind is Prim:
            a = f.assertion
            return self.term(a.lhs, env, tp) == self.term(a.rhs, env, tp)
        if kind is Assertion:
            return self.term(f.lhs, env, tp) == self.term(f.rhs, env, tp)
        if kind is Not:
            return not self.formula(f.body, env, tp)
        if kind is And:
            left, right = self.formula(f.left, env, tp), self.formula(f.right, env, tp)
            return left and right
        if kind is Or:
            left, right = self.formula(f.left, env, tp), self.formula(f.right, env, tp)
            return left or right
        if kind is Implies:
            left, right = self.formula(f.left, env, tp), self.formula(f.right, env, tp)
            return (not left) or right
        if kind in QUANTIFIERS:
            ext = _as_set(self.term(f.concept, env, tp), f"range of {f.var}")
            results = [self.formula(f.body, {**env, f.var: x}, tp) for x in ext]
            return all(results) if kind is Forall else any(results)
        if kind is At:
            self.world.tp_index(f.tp)
            return self.formula(f.body, env, f.tp)
        raise TypeError(f"not a formula: {f!r}")

    def check(self, f, env: Mapping = EMPTY_ENV, tp: str | None = None) -> bool:
        """Evaluate ``f``, reading free concept copies schematically.

        A formula mentioning copies holds iff every grounding of the copies
        (each copy ranging independently over its concept) holds.
        """
        f = as_formula(f)
        copies = sorted((c for c in mentions(f) if c not in env),
                        key=lambda c: (c.concept, c.index))
        if not copies:
            return self.formula(f, env, tp)
        pools = [sorted(self.concept_extent(c.concept), key=value_key) for c in copies]
        return all(self.formula(f, {**env, **dict(zip(copies, vals))}, tp)
                   for vals in itertools.product(*pools))


def eval_term(kb: KnowledgeBase | None, w: Interpretation, t, space: WorldSpace | None = None):
    return Evaluator(kb, w, space).term(t)


def satisfies(kb: KnowledgeBase | None, w: Interpretation, a, space: WorldSpace | None = None) -> bool:
    """``w`` is a model of the (possibly schematic) assertion ``a``."""
    return Evaluator(kb, w, space).check(as_formula(a))


def is_model(kb: KnowledgeBase, w: Interpretation, space: WorldSpace | None = None) -> bool:
    ev = Evaluator(kb, w, space)
    return all(ev.check(f) for f in kb.assertions)


# ------------------------------------------------------------- enumeration

@dataclass(frozen=True)
class _Choice:
    kind: str          # concept | individual | fluent | operator
    name: str
    refs: tuple        # concept names whose extents shape the choice space
    deps: frozenset    # choice names (and possibly "Atoms") the space depends on


class _Enumerator:
    def __init__(self, kb: KnowledgeBase, bounds: EnumBounds):
        self.kb = kb
        self.bounds = bounds
        self.atoms = tuple(Atom(i) for i in range(bounds.max_domain_atoms))
        concepts, individuals, fluents, operators = kb.uninterpreted()
        self.choice_names = set(concepts) | set(individuals) | set(fluents) | set(operators)
        self.concept_choices = set(concepts)
        raw = [_Choice("concept", c, (), frozenset()) for c in concepts]
        raw += [_Choice("individual", n, (c,), self._closure_of(c)) for n, c in individuals.items()]
        raw += [_Choice("fluent", n, (c,), self._closure_of(c)) for n, c in fluents.items()]
        for n, sig in operators.items():
            refs = tuple(sig.domain) + (sig.range or "Atoms",)
            raw.append(_Choice("operator", n, refs,
                               frozenset().union(*(self._closure_of(r) for r in refs))))
        self.choices = self._toposort(raw)
        self.later_needed = [any(c.name in d.deps for d in self.choices[i + 1:])
                             for i, c in enumerate(self.choices)]
        # whether Δ itself is observable, so each pool size is a distinct world
        self.observes_pool = kb.mentions_name("Atoms")

    def _closure_of(self, ref: str, seen: set | None = None) -> frozenset:
        seen = set() if seen is None else seen
        if ref in seen:
            return frozenset()
        seen.add(ref)
        if ref == "Atoms":
            return frozenset({"Atoms"})
        if ref == "Concepts":
            out = set(self.concept_choices)
            for c in self.kb.structure.concepts:
                if c in self.kb.definitions:
                    out |= self._closure_of(c, seen)
            return frozenset(out)
        if ref in self.choice_names:
            return frozenset({ref})
        d = self.kb.definitions.get(ref)
        if d is None:
            return frozenset()
        bound = frozenset(p for p in getattr(d, "params", ()) if isinstance(p, str))
        out = set()
        for _, name, _ in symbols(d.body, bound):
            out |= self._closure_of(name, seen)
        for c in mentions(d.body):
            out |= self._closure_of(c.concept, seen)
        if isinstance(d, OperatorDef):
            for r in d.sig.domain:
                out |= self._closure_of(r, seen)
        return frozenset(out)

    @staticmethod
    def _toposort(raw: list) -> list:
        rank = {"concept": 0, "individual": 1, "fluent": 2, "operator": 3}
        order = {c.name: i for i, c in enumerate(raw)}
        done: list = []
        pending = sorted(raw, key=lambda c: (rank[c.kind], order[c.name]))
        while pending:
            waiting = {c.name for c in pending}
            ready = next((c for c in pending if not c.deps & waiting), None)
            if ready is None:
                names = ", ".join(c.name for c in pending)
                raise EvalError(f"circular dependency between the declarations of {names}")
            done.append(ready)
            pending.remove(ready)
        return done

    # -- choice spaces

    def _world(self, st: dict, pool: tuple) -> Interpretation:
        return Interpretation(dict(st["individual"]), dict(st["concept"]), dict(st["operator"]),
                              dict(st["fluent"]), self.kb.timepoints, pool,
                              self.bounds.nat_bound, self.bounds.powerset_cap)

    def _extent(self, st: dict, pool: tuple, ref: str) -> list:
        ev = Evaluator(self.kb, self._world(st, pool))
        return sorted(ev.concept_extent(ref), key=value_key)

    def _space(self, c: _Choice, st: dict, pool: tuple) -> Iterator:
        if c.kind == "concept":
            k = len(pool)
            for mask in range(1 << k):
                yield frozenset(pool[j] for j in range(k) if mask >> j & 1)
            return
        if c.kind == "individual":
            yield from self._extent(st, pool, c.refs[0])
            return
        if c.kind == "fluent":
            ext = self._extent(st, pool, c.refs[0])
            yield from itertools.product(ext, repeat=len(self.kb.timepoints))
            return
        dom = list(itertools.product(*(self._extent(st, pool, r) for r in c.refs[:-1])))
        rng = self._extent(st, pool, c.refs[-1])
        for vals in itertools.product(rng, repeat=len(dom)):
            yield dict(zip(dom, vals))

    def _size(self, c: _Choice, st: dict, pool: tuple) -> int:
        if c.kind == "concept":
            return 1 << len(pool)
        if c.kind == "individual":
            return len(self._extent(st, pool, c.refs[0]))
        if c.kind == "fluent":
            return len(self._extent(st, pool, c.refs[0])) ** len(self.kb.timepoints)
        n_dom = math.prod(len(self._extent(st, pool, r)) for r in c.refs[:-1])
        return len(self._extent(st, pool, c.refs[-1])) ** n_dom

    @staticmethod
    def _state() -> dict:
        return {"concept": {}, "individual": {}, "fluent": {}, "operator": {}}

    def _walk(self, i: int, st: dict, pool: tuple) -> Iterator[Interpretation]:
        if i == len(self.choices):
            yield self._world(st, pool)
            return
        c = self.choices[i]
        slot = st[c.kind]
        for value in self._space(c, st, pool):
            slot[c.name] = value
            yield from self._walk(i + 1, st, pool)
        slot.pop(c.name, None)

    def _count(self, i: int, st: dict, pool: tuple) -> int:
        if i == len(self.choices):
            return 1
        c = self.choices[i]
        if not self.later_needed[i]:
            size = self._size(c, st, pool)
            return size * self._count(i + 1, st, pool) if size else 0
        total = 0
        slot = st[c.kind]
        for value in self._space(c, st, pool):
            slot[c.name] = value
            total += self._count(i + 1, st, pool)
        slot.pop(c.name, None)
        return total

    # -- public

    def count(self) -> int:
        if self.observes_pool:
            return sum(self._count(0, self._state(), self.atoms[:k])
                       for k in range(len(self.atoms) + 1))
        return self._count(0, self._state(), self.atoms)

    def stream(self) -> Iterator[Interpretation]:
        """Worlds in canonical order, stratified by the largest atom used.

        Worlds that fit in a pool of ``k`` atoms come before every world that
        needs atom ``k``, so raising ``atoms`` only appends worlds.
        """
        for k in range(len(self.atoms) + 1):
            pool = self.atoms[:k]
            newest = pool[-1] if pool else None
            for w in self._walk(0, self._state(), pool):
                if self.observes_pool or newest is None or w.uses(newest):
                    yield w


def count_worlds(kb: KnowledgeBase, b: EnumBounds | None = None) -> int:
    """Number of interpretations :func:`enumerate_worlds` would produce."""
    return _Enumerator(kb, b or EnumBounds()).count()


def enumerate_worlds(kb: KnowledgeBase, b: EnumBounds | None = None,
                     max_worlds: int | None = None) -> WorldSpace:
    """Every interpretation consistent with the declarations, weight 1 each.

    The space is lazy; its size is computed up front and checked against
    ``max_worlds`` (default 10**7, or ``$ALK_MAX_WORLDS``).
    """
    en = _Enumerator(kb, b or EnumBounds())
    cap = default_max_worlds() if max_worlds is None else max_worlds
    total = en.count()
    if total > cap:
        raise BoundsExceeded(f"{total} worlds exceed the cap of {cap}; "
                             f"tighten the bounds or raise --max-worlds", total, cap)
    return WorldSpace(stream=lambda: ((w, 1.0) for w in en.stream()), count=total)


def models(kb: KnowledgeBase, b: EnumBounds | None = None,
           max_worlds: int | None = None) -> Iterator[Interpretation]:
    for w, _ in enumerate_worlds(kb, b, max_worlds):
        if is_model(kb, w):
            yield w


# ------------------------------------------------------------- reductions

def partitions(space: WorldSpace, n: int) -> list[Iterator]:
    """Split a world stream round-robin into ``n`` independent streams."""
    if n <= 1:
        return [iter(space)]
    return [itertools.islice(iter(space), j, None, n) for j in range(n)]


def run_partitioned(space: WorldSpace, n: int, work: Callable[[Iterable], object]) -> list:
    parts = partitions(space, n)
    if n <= 1:
        return [work(parts[0])]
    with ThreadPoolExecutor(max_workers=n) as pool:
        return list(pool.map(work, parts))


@dataclass(frozen=True)
class Entailment:
    verdict: bool
    vacuous: bool
    world_count: int
    model_count: int
    counterexample: Interpretation | None = None

    def __bool__(self) -> bool:
        return self.verdict


def check_entailment(kb: KnowledgeBase, q, b: EnumBounds | None = None, *,
                     max_worlds: int | None = None, workers: int = 1,
                     space: WorldSpace | None = None) -> Entailment:
    """Every enumerated model of ``kb`` satisfies ``q``.

    ``space`` is the world space nested ``pr`` terms are evaluated against;
    by default the KB's weighted models.
    """
    b = b or EnumBounds()
    q = as_formula(q)
    worlds = enumerate_worlds(kb, b, max_worlds)
    if space is None and _uses_prob(kb, q):
        from .uncertainty import weighted_models
        space = weighted_models(kb, b, max_worlds=max_worlds)

    def work(stream):
        n_models, first_bad = 0, None
        for w, _ in stream:
            ev = Evaluator(kb, w, space)
            if all(ev.check(f) for f in kb.assertions):
                n_models += 1
                if first_bad is None and not ev.check(q):
                    first_bad = w
        return n_models, first_bad

    results = run_partitioned(worlds, workers, work)
    n_models = sum(r[0] for r in results)
    bad = next((r[1] for r in results if r[1] is not None), None)
    return Entailment(bad is None, n_models == 0, len(worlds), n_models, bad)


def _uses_prob(kb: KnowledgeBase, q) -> bool:
    nodes = itertools.chain(walk(q), *(walk(f) for f in kb.assertions))
    return any(isinstance(n, Prob) for n in nodes)


def entails(kb: KnowledgeBase, q, b: EnumBounds | None = None, **kw) -> bool:
    return check_entailment(kb, q, b, **kw).verdict


def infer_signature(q, base: KnowledgeBase | None = None) -> KnowledgeBase:
    """The empty KB over ``q``'s signature.

    Unknown names become individuals ranging over ``Atoms``, unknown applied
    operators become uninterpreted ``Atoms^n -> Atoms`` operators, names used
    as a quantifier range or comprehension base become uninterpreted concepts
    and unknown time points are declared in first-use order.
    """
    kb = base if base is not None else EMPTY_KB
    q = as_formula(q)
    st = kb.structure
    concepts, individuals, operators, tps = [], [], {}, []
    concept_pos = set()
    for n in walk(q):
        if isinstance(n, QUANTIFIERS):
            if isinstance(n.concept, Atomic):
                concept_pos.add(n.concept.name)
        elif isinstance(n, Comprehension) and isinstance(n.base, Atomic):
            concept_pos.add(n.base.name)
        elif isinstance(n, Image):
            concept_pos.update(b.name for b in n.bases if isinstance(b, Atomic))
    for c in mentions(q):
        concept_pos.add(c.concept)

    def known(name):
        return (st.kind_of(name) is not None or name in BUILTIN_CONCEPTS
                or name in LITERALS or is_numeral(name))

    for role, name, node in symbols(q):
        if role == "op":
            if name in BUILTIN_OPS or name in st.operators:
                continue
            arity = len(node.args) if isinstance(node, Compound) else len(node.bases)
            if operators.setdefault(name, arity) != arity:
                from .errors import IllFormed
                raise IllFormed(f"operator '{name}' is used with different arities")
        elif role == "tp":
            if name not in st.timepoints and name not in tps:
                tps.append(name)
        elif not known(name):
            target = concepts if name in concept_pos else individuals
            if name not in target:
                target.append(name)
    for c in sorted(concept_pos):
        if not known(c) and c not in concepts:
            concepts.append(c)
    if tps:
        kb = kb.add(TimepointsDecl(tuple(tps)))
    if concepts:
        kb = kb.add(ConceptDecl(tuple(concepts)))
    if individuals:
        kb = kb.add(IndividualDecl(tuple(individuals), "Atoms"))
    for name, arity in operators.items():
        kb = kb.add(OperatorDecl(OperatorSig(name, ("Atoms",) * arity, "Atoms")))
    return kb


def is_tautology(q, b: EnumBounds | None = None, *, max_worlds: int | None = None,
                 workers: int = 1) -> bool:
    """``q`` holds in every enumerated interpretation of its own signature."""
    return check_tautology(q, b, max_worlds=max_worlds, workers=workers).verdict


def check_tautology(q, b: EnumBounds | None = None, *, max_worlds: int | None = None,
                    workers: int = 1, base: KnowledgeBase | None = None) -> Entailment:
    kb = infer_signature(q, base)
    return check_entailment(kb, q, b, max_worlds=max_worlds, workers=workers)
