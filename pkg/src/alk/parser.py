"""Hand-written recursive-descent parser for ``.al`` knowledge bases.

Statements are keyword-led and end with ``.``; ``%`` starts a comment.
Syntax errors are collected per statement (the parser resynchronises at
the next ``.``) and reported together as :class:`ParseErrors`.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .core import (KEYWORDS, SPECIAL_FORMS, And, Assertion, At, Atomic, Comprehension,
                   Compound, ConceptCopy, ConceptDecl, Exists, FluentDecl, Forall,
                   Image, Implies, IndividualDecl, Not, OperatorDecl, OperatorSig, Or,
                   Prim, Prob, SourceSpan, Timed, TimepointsDecl, walk)
from .definitions import ConceptDef, IndividualDef, OperatorDef, as_concept_expr
from .errors import ALKError, ParseError, ParseErrors
from .kb import (Assert, Define, EntailQuery, HoldsQuery, KnowledgeBase, ProbQuery,
                 TautQuery, WeightDecl)

_TOKEN_RE = re.compile(r"""
    (?P<ws>[ \t\r\n]+|%[^\n]*)
  | (?P<REAL>\d+\.\d+(?:[eE][-+]?\d+)?|\d+[eE][-+]?\d+)
  | (?P<INT>\d+)
  | (?P<NAME>[A-Za-z_][A-Za-z0-9_']*)
  | (?P<SYM>!=|->|[.,:;(){}|=\#])
""", re.VERBOSE)


@dataclass(frozen=True)
class Token:
    kind: str       # NAME, KW, INT, REAL, SYM, EOF
    text: str
    span: SourceSpan


def tokenize(text: str, file: str = "<input>") -> list[Token]:
    tokens: list[Token] = []
    errors: list[ParseError] = []
    pos, line, line_start = 0, 1, 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        span = SourceSpan(file, line, pos - line_start + 1)
        if m is None:
            ch = text[pos]
            msg = ("'$' names are reserved for generated individuals" if ch == "$"
                   else f"unexpected character {ch!r}")
            errors.append(ParseError(msg, span))
            pos += 1
            # swallow the rest of a `$name` so it yields a single error
            while ch == "$" and pos < len(text) and (text[pos].isalnum() or text[pos] == "_"):
                pos += 1
            continue
        kind = m.lastgroup
        lexeme = m.group()
        if kind != "ws":
            if kind == "NAME" and lexeme in KEYWORDS:
                kind = "KW"
            tokens.append(Token(kind, lexeme, span))
        newlines = lexeme.count("\n")
        if newlines:
            line += newlines
            line_start = pos + lexeme.rindex("\n") + 1
        pos = m.end()
    tokens.append(Token("EOF", "", SourceSpan(file, line, pos - line_start + 1)))
    if errors:
        raise ParseErrors(errors)
    return tokens


class _Backtrack(Exception):
    pass


class Parser:
    def __init__(self, text: str, file: str = "<input>"):
        self.file = file
        self.toks = tokenize(text, file)
        self.i = 0

    # -- token helpers

    @property
    def tok(self) -> Token:
        return self.toks[self.i]

    def peek(self, k: int = 1) -> Token:
        return self.toks[min(self.i + k, len(self.toks) - 1)]

    def at(self, text: str, kind: str | None = None) -> bool:
        t = self.tok
        return t.text == text and t.kind in ((kind,) if kind else ("KW", "SYM"))

    def accept(self, text: str) -> bool:
        if self.at(text):
            self.i += 1
            return True
        return False

    def expect(self, text: str) -> Token:
        if not self.at(text):
            self.error(f"expected '{text}'")
        t = self.tok
        self.i += 1
        return t

    def error(self, msg: str):
        t = self.tok
        found = "end of input" if t.kind == "EOF" else f"'{t.text}'"
        raise ParseError(f"{msg}, found {found}", t.span)

    def name(self, what: str = "a name", allow_int: bool = False) -> str:
        t = self.tok
        if t.kind == "NAME" or (allow_int and t.kind == "INT"):
            self.i += 1
            return t.text
        self.error(f"expected {what}")

    def names(self, what: str) -> tuple:
        out = [self.name(what)]
        while self.accept(","):
            out.append(self.name(what))
        return tuple(out)

    # -- statements

    def statements(self) -> tuple[list, list]:
        stmts, errors = [], []
        while self.tok.kind != "EOF":
            start = self.i
            try:
                stmts.append(self.statement())
            except ParseError as e:
                errors.append(e)
                self.i = max(self.i, start + 1)
                while self.tok.kind != "EOF" and not self.at("."):
                    self.i += 1
                self.accept(".")
        return stmts, errors

    def statement(self):
        t = self.tok
        span = t.span
        if t.kind != "KW":
            self.error("expected a statement keyword")
        self.i += 1
        kw = t.text
        if kw == "concept":
            s = ConceptDecl(self.names("a concept name"), span)
        elif kw in ("individual", "fluent"):
            names = self.names(f"{kw} name")
            self.expect(":")
            cls = IndividualDecl if kw == "individual" else FluentDecl
            s = cls(names, self.name("a concept name"), span)
        elif kw == "operator":
            s = OperatorDecl(self.signature(), span)
        elif kw == "timepoints":
            s = TimepointsDecl(self.names("a time point"), span)
        elif kw == "define":
            s = Define(self.definition(), span)
        elif kw == "assert":
            s = Assert(self.formula(), span)
        elif kw == "at":
            tp = self.name("a time point")
            self.expect("assert")
            s = Assert(At(tp, self.formula()), span)
        elif kw == "weight":
            factor = self.number()
            self.expect("when")
            s = WeightDecl(factor, self.formula(), span)
        elif kw == "entail":
            s = EntailQuery(self.formula(), span)
        elif kw == "taut":
            s = TautQuery(self.formula(), span)
        elif kw == "prob":
            event = self.formula()
            given = self.formula() if self.accept("given") else None
            s = ProbQuery(event, given, span)
        elif kw == "holds":
            f = self.formula()
            self.expect("at")
            s = HoldsQuery(f, self.name("a time point"), span)
        else:
            self.i -= 1
            self.error("expected a statement keyword")
        self.expect(".")
        return s

    def number(self) -> float:
        t = self.tok
        if t.kind not in ("INT", "REAL"):
            self.error("expected a number")
        self.i += 1
        return float(t.text)

    def signature(self) -> OperatorSig:
        name = self.name("an operator name")
        self.expect(":")
        self.expect("(")
        domain = []
        if not self.at(")"):
            domain = list(self.names("a concept name"))
        self.expect(")")
        rng = self.name("a concept name") if self.accept("->") else None
        return OperatorSig(name, tuple(domain), rng)

    def definition(self):
        kind = self.tok.text if self.tok.kind == "KW" else None
        if kind == "individual":
            self.i += 1
            name = self.name("an individual name", allow_int=True)
            self.expect("=")
            return IndividualDef(name, self.term())
        if kind == "concept":
            self.i += 1
            name = self.name("a concept name")
            self.expect("=")
            return ConceptDef(name, as_concept_expr(self.term()))
        if kind == "operator":
            self.i += 1
            name = self.name("an operator name")
            self.expect("(")
            params, domain = [], []
            if not self.at(")"):
                while True:
                    p, c = self.param()
                    params.append(p)
                    domain.append(c)
                    if not self.accept(","):
                        break
            self.expect(")")
            rng = self.name("a concept name") if self.accept("->") else None
            self.expect("=")
            body = self.term()
            copies = {p.concept: p for p in params if isinstance(p, ConceptCopy) and p.index == 1}
            if copies:
                body = _bare_copies(body, copies)
            return OperatorDef(OperatorSig(name, tuple(domain), rng), tuple(params), body)
        self.error("expected 'individual', 'operator' or 'concept'")

    def param(self):
        first = self.name("a parameter")
        if self.accept(":"):
            return first, self.name("a concept name")
        if self.accept("#"):
            return ConceptCopy(first, self.index()), first
        return ConceptCopy(first, 1), first

    def index(self) -> int:
        t = self.tok
        if t.kind != "INT" or int(t.text) < 1:
            self.error("expected a positive copy index")
        self.i += 1
        return int(t.text)

    # -- formulas

    def formula(self):
        left = self.disjunction()
        if self.accept("implies"):
            return Implies(left, self.formula())
        return left

    def disjunction(self):
        left = self.conjunction()
        if self.accept("or"):
            return Or(left, self.disjunction())
        return left

    def conjunction(self):
        left = self.negation()
        if self.accept("and"):
            return And(left, self.conjunction())
        return left

    def negation(self):
        if self.accept("not"):
            return Not(self.negation())
        if self.at("forall") or self.at("exists"):
            cls = Forall if self.tok.text == "forall" else Exists
            self.i += 1
            var = self.name("a variable")
            self.expect("in")
            concept = self.term()
            self.expect(":")
            return cls(var, concept, self.formula())
        if self.at("at"):
            self.i += 1
            tp = self.name("a time point")
            self.expect(":")
            return At(tp, self.formula())
        if self.at("("):
            saved = self.i
            try:
                self.i += 1
                f = self.formula()
                self.expect(")")
                if self.at("=") or self.at("!="):
                    raise _Backtrack
                return f
            except (ParseError, _Backtrack):
                self.i = saved
        return self.equation()

    def equation(self):
        lhs = self.term()
        if self.accept("="):
            return Prim(Assertion(lhs, self.term()))
        if self.accept("!="):
            return Not(Prim(Assertion(lhs, self.term())))
        self.error("expected '=' or '!='")

    # -- terms

    def term(self):
        t = self.tok
        span = t.span
        if t.kind in ("INT", "REAL"):
            self.i += 1
            return Atomic(t.text, span)
        if t.kind == "NAME":
            self.i += 1
            if self.accept("#"):
                return ConceptCopy(t.text, self.index())
            if self.accept("("):
                if t.text in SPECIAL_FORMS:
                    return self.special(t.text)
                args = self.terms(")")
                return Compound(t.text, args, span)
            return Atomic(t.text, span)
        if self.accept("{"):
            if self.tok.kind == "NAME" and self.peek().text == "in" and self.peek().kind == "KW":
                var = self.name()
                self.i += 1
                base = self.term()
                self.expect("|")
                cond = self.formula()
                self.expect("}")
                return Comprehension(var, base, cond)
            return Compound("set", self.terms("}"), span)
        if self.accept("("):
            first = self.term()
            if self.accept(")"):
                return first
            self.expect(",")
            items = [first]
            while not self.at(")"):
                items.append(self.term())
                if not self.accept(","):
                    break
            self.expect(")")
            return Compound("tuple", tuple(items), span)
        self.error("expected a term")

    def terms(self, close: str) -> tuple:
        items = []
        if not self.accept(close):
            items.append(self.term())
            while self.accept(","):
                items.append(self.term())
            self.expect(close)
        return tuple(items)

    def special(self, form: str):
        if form == "pr":
            event = self.formula()
            given = self.formula() if self.accept("given") else None
            self.expect(")")
            return Prob(event, given)
        if form == "value_at":
            inner = self.term()
            self.expect(",")
            tp = self.name("a time point")
            self.expect(")")
            return Timed(inner, tp)
        op = self.name("an operator name")
        bases = []
        while self.accept(","):
            bases.append(self.term())
        self.expect(")")
        if not bases:
            self.error("image() needs at least one concept")
        return Image(op, tuple(bases))


def _bare_copies(body, copies: dict):
    """Read bare concept names in an operator body as the parameter copies."""
    if not any(isinstance(n, Atomic) and n.name in copies for n in walk(body)):
        return body
    return _replace_atoms(body, copies)


def _replace_atoms(node, mapping: dict):
    if isinstance(node, Atomic):
        return mapping.get(node.name, node)
    if isinstance(node, Compound):
        return Compound(node.op, tuple(_replace_atoms(a, mapping) for a in node.args), node.span)
    if isinstance(node, Image):
        return Image(node.op, tuple(_replace_atoms(b, mapping) for b in node.bases))
    if isinstance(node, Comprehension):
        inner = {k: v for k, v in mapping.items() if k != node.var}
        return Comprehension(node.var, _replace_atoms(node.base, mapping),
                             _replace_atoms(node.cond, inner))
    if isinstance(node, Timed):
        return Timed(_replace_atoms(node.term, mapping), node.tp)
    if isinstance(node, Prob):
        return Prob(_replace_atoms(node.event, mapping),
                    None if node.given is None else _replace_atoms(node.given, mapping))
    if isinstance(node, Assertion):
        return Assertion(_replace_atoms(node.lhs, mapping), _replace_atoms(node.rhs, mapping))
    if isinstance(node, Prim):
        return Prim(_replace_atoms(node.assertion, mapping))
    if isinstance(node, Not):
        return Not(_replace_atoms(node.body, mapping))
    if isinstance(node, (And, Or, Implies)):
        return type(node)(_replace_atoms(node.left, mapping), _replace_atoms(node.right, mapping))
    if isinstance(node, (Forall, Exists)):
        inner = {k: v for k, v in mapping.items() if k != node.var}
        return type(node)(node.var, _replace_atoms(node.concept, mapping),
                          _replace_atoms(node.body, inner))
    if isinstance(node, At):
        return At(node.tp, _replace_atoms(node.body, mapping))
    return node


def parse_statements(text: str, file: str = "<input>") -> list:
    """Syntax only: the statements of ``text`` without name resolution."""
    stmts, errors = Parser(text, file).statements()
    if errors:
        raise ParseErrors(errors)
    return stmts


def parse_kb(text: str, file: str = "<input>", base: KnowledgeBase | None = None) -> KnowledgeBase:
    """Parse and resolve a knowledge base (optionally extending ``base``)."""
    kb = base if base is not None else KnowledgeBase()
    for s in parse_statements(text, file):
        kb = kb.add(s)
    return kb


def parse_file(path: str, base: KnowledgeBase | None = None) -> KnowledgeBase:
    with open(path, encoding="utf-8") as fh:
        return parse_kb(fh.read(), str(path), base)


def _parse_whole(text: str, rule: str):
    p = Parser(text)
    node = getattr(p, rule)()
    if p.tok.kind != "EOF":
        p.error("unexpected trailing input")
    return node


def parse_term(text: str):
    return _parse_whole(text, "term")


def parse_formula(text: str):
    return _parse_whole(text, "formula")


__all__ = ["ALKError", "ParseError", "ParseErrors", "Parser", "Token", "parse_file",
           "parse_formula", "parse_kb", "parse_statements", "parse_term", "tokenize"]
