"""``alk`` command line and REPL.

Exit codes: 0 ok / true, 1 false, 2 error.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass, field
from typing import TextIO

from .core import At, Prob, as_formula, walk
from .errors import ALKError, ParseErrors
from .kb import (Assert, EntailQuery, HoldsQuery, KnowledgeBase, ProbQuery, QUERIES,
                 TautQuery, WeightDecl)
from .parser import parse_formula, parse_statements
from .semantics import (EnumBounds, check_entailment, check_tautology, count_worlds,
                        default_max_worlds, infer_signature)
from .uncertainty import measure, weighted_models

EXIT_OK, EXIT_FALSE, EXIT_ERROR = 0, 1, 2
NESTED_PR_NOTE = "nested pr() terms are evaluated once against the query's world space"


@dataclass
class QueryResult:
    kind: str
    value: object
    bounds: EnumBounds
    world_count: int | None = None
    wall_time: float = 0.0
    diagnostics: list = field(default_factory=list)
    vacuous: bool | None = None
    model_count: int | None = None
    numerator: float | None = None
    denominator: float | None = None

    @property
    def exit_code(self) -> int:
        return EXIT_FALSE if self.value is False else EXIT_OK

    def to_dict(self, timing: bool = False) -> dict:
        d = {"kind": self.kind, "value": self.value, "bounds": self.bounds.as_dict(),
             "world_count": self.world_count, "diagnostics": list(self.diagnostics)}
        for k in ("vacuous", "model_count", "numerator", "denominator"):
            v = getattr(self, k)
            if v is not None:
                d[k] = v
        if timing:
            d["wall_time"] = self.wall_time
        return d

    def to_json(self, timing: bool = False) -> str:
        return json.dumps(self.to_dict(timing), sort_keys=True)

    def to_text(self) -> str:
        if isinstance(self.value, bool):
            shown = "true" if self.value else "false"
        elif self.value is None:
            shown = "-"
        else:
            shown = repr(self.value)
        parts = [f"bounds {self.bounds}"]
        if self.world_count is not None:
            parts.append(f"worlds {self.world_count}")
        if self.model_count is not None:
            parts.append(f"models {self.model_count}")
        if self.numerator is not None:
            parts.append(f"weight {self.numerator!r}/{self.denominator!r}")
        if self.vacuous:
            parts.append("vacuous: the knowledge base has no models")
        parts += self.diagnostics
        return f"{self.kind}: {shown}  [{'; '.join(parts)}]"


def _uses_prob(*formulas) -> bool:
    return any(isinstance(n, Prob) for f in formulas if f is not None for n in walk(f))


class Session:
    """An accumulated knowledge base plus the settings queries run under."""

    def __init__(self, bounds: EnumBounds | None = None, max_worlds: int | None = None,
                 workers: int = 1, dry_run: bool = False):
        self.kb = KnowledgeBase()
        self.bounds = bounds or EnumBounds()
        self.max_worlds = default_max_worlds() if max_worlds is None else max_worlds
        self.workers = workers
        self.dry_run = dry_run

    # -- loading

    def load_text(self, text: str, file: str = "<input>",
                  run_queries: bool = True) -> list[QueryResult]:
        """Add every statement of ``text``; run queries as they are met."""
        results = []
        for stmt in parse_statements(text, file):
            r = self.execute(stmt, run_queries)
            if r is not None:
                results.append(r)
        return results

    def load_file(self, path: str, run_queries: bool = True) -> list[QueryResult]:
        with open(path, encoding="utf-8") as fh:
            return self.load_text(fh.read(), path, run_queries)

    def execute(self, stmt, run_queries: bool = True) -> QueryResult | None:
        if isinstance(stmt, QUERIES):
            self.kb.add(stmt)     # resolution check only; queries are not kept
            return self.query(stmt) if run_queries else None
        self.kb = self.kb.add(stmt)
        return None

    # -- queries

    def _base(self) -> KnowledgeBase:
        """Declarations and definitions only, for tautology signatures."""
        return KnowledgeBase.from_statements(
            s for s in self.kb.statements
            if not isinstance(s, (Assert, WeightDecl) + QUERIES))

    def query(self, q) -> QueryResult:
        start = time.perf_counter()
        if isinstance(q, EntailQuery):
            r = self._entail("entail", q.formula)
        elif isinstance(q, HoldsQuery):
            r = self._entail("holds", At(q.tp, as_formula(q.formula)))
        elif isinstance(q, TautQuery):
            r = self._taut(q.formula)
        elif isinstance(q, ProbQuery):
            r = self._prob(q.event, q.given)
        else:
            raise TypeError(f"not a query: {q!r}")
        r.wall_time = time.perf_counter() - start
        return r

    def _entail(self, kind: str, f) -> QueryResult:
        n = count_worlds(self.kb, self.bounds)
        notes = [NESTED_PR_NOTE] if _uses_prob(f, *self.kb.assertions) else []
        if self.dry_run:
            return QueryResult(kind, None, self.bounds, n, diagnostics=["dry run"])
        e = check_entailment(self.kb, f, self.bounds, max_worlds=self.max_worlds,
                             workers=self.workers)
        return QueryResult(kind, e.verdict, self.bounds, e.world_count, diagnostics=notes,
                           vacuous=e.vacuous, model_count=e.model_count)

    def _taut(self, f) -> QueryResult:
        base = self._base()
        if self.dry_run:
            n = count_worlds(infer_signature(f, base), self.bounds)
            return QueryResult("taut", None, self.bounds, n, diagnostics=["dry run"])
        e = check_tautology(f, self.bounds, max_worlds=self.max_worlds,
                            workers=self.workers, base=base)
        return QueryResult("taut", e.verdict, self.bounds, e.world_count,
                           model_count=e.model_count)

    def _prob(self, event, given) -> QueryResult:
        n = count_worlds(self.kb, self.bounds)
        notes = [NESTED_PR_NOTE] if _uses_prob(event, given) else []
        if self.dry_run:
            return QueryResult("prob", None, self.bounds, n, diagnostics=["dry run"])
        ws = weighted_models(self.kb, self.bounds, max_worlds=self.max_worlds)
        p = measure(self.kb, event, ws, given, workers=self.workers)
        return QueryResult("prob", p.value, self.bounds, n, diagnostics=notes,
                           model_count=p.world_count, numerator=p.numerator,
                           denominator=p.denominator)

    def check(self) -> QueryResult:
        return QueryResult("check", True, self.bounds, None,
                           diagnostics=[f"{len(self.kb.statements)} statement(s)"])


# ------------------------------------------------------------------ CLI

def _bounds_arg(text: str) -> EnumBounds:
    try:
        return EnumBounds.parse(text)
    except ValueError as e:
        raise argparse.ArgumentTypeError(str(e)) from None


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--bounds", type=_bounds_arg, default=EnumBounds(),
                        help="enumeration bounds, e.g. atoms=3,nat=32,pow=16")
    common.add_argument("--json", action="store_true", help="print results as JSON")
    common.add_argument("--max-worlds", type=int, default=None,
                        help="refuse to enumerate more worlds than this "
                             "(default 10^7 or $ALK_MAX_WORLDS)")
    common.add_argument("--dry-run", action="store_true", help="only count worlds")
    common.add_argument("--workers", type=int, default=1,
                        help="partition the world stream across this many threads")
    common.add_argument("--timing", action="store_true", help="include wall_time in output")

    ap = argparse.ArgumentParser(prog="alk", description="Assertional logic kernel.")
    sub = ap.add_subparsers(dest="command", required=True)
    p = sub.add_parser("check", parents=[common], help="parse and validate a knowledge base")
    p.add_argument("file")
    p = sub.add_parser("entail", parents=[common], help="does the KB entail a formula?")
    p.add_argument("file")
    p.add_argument("-q", "--query", required=True)
    p = sub.add_parser("taut", parents=[common], help="is a formula a tautology?")
    p.add_argument("-q", "--query", required=True)
    p.add_argument("--kb", help="knowledge base supplying declarations and definitions")
    p = sub.add_parser("prob", parents=[common], help="probability of a formula")
    p.add_argument("file")
    p.add_argument("-q", "--query", required=True)
    p.add_argument("--given")
    p = sub.add_parser("holds", parents=[common], help="does a formula hold at a time point?")
    p.add_argument("file")
    p.add_argument("-q", "--query", required=True)
    p.add_argument("--at", required=True, dest="tp")
    p = sub.add_parser("run", parents=[common], help="load a file and answer its queries")
    p.add_argument("file")
    p = sub.add_parser("repl", parents=[common], help="interactive session")
    p.add_argument("file", nargs="?")
    return ap


def _emit(r: QueryResult, args, out: TextIO) -> None:
    print(r.to_json(args.timing) if args.json else r.to_text(), file=out)


def _report_error(e: Exception, args, out: TextIO, err: TextIO) -> None:
    if args.json:
        kind = type(e).__name__
        msgs = [str(x) for x in e.errors] if isinstance(e, ParseErrors) else [str(e)]
        print(json.dumps({"error": kind, "diagnostics": msgs}, sort_keys=True), file=out)
    else:
        print(f"error: {e}", file=err)


def main(argv: list[str] | None = None, out: TextIO | None = None,
         err: TextIO | None = None, inp: TextIO | None = None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    args = build_parser().parse_args(argv)
    session = Session(args.bounds, args.max_worlds, args.workers, args.dry_run)
    try:
        if args.command == "repl":
            return repl(session, inp or sys.stdin, out, args.file)
        if args.command == "taut":
            if args.kb:
                session.load_file(args.kb, run_queries=False)
            r = session.query(TautQuery(parse_formula(args.query)))
            _emit(r, args, out)
            return r.exit_code
        loaded = session.load_file(args.file, run_queries=args.command == "run")
        if args.command == "check":
            r = session.check()
        elif args.command == "run":
            for r in loaded:
                _emit(r, args, out)
            return EXIT_FALSE if any(r.value is False for r in loaded) else EXIT_OK
        elif args.command == "entail":
            r = session.query(EntailQuery(parse_formula(args.query)))
        elif args.command == "holds":
            r = session.query(HoldsQuery(parse_formula(args.query), args.tp))
        else:
            given = parse_formula(args.given) if args.given else None
            r = session.query(ProbQuery(parse_formula(args.query), given))
        _emit(r, args, out)
        return r.exit_code
    except (ALKError, OSError) as e:
        _report_error(e, args, out, err)
        return EXIT_ERROR


# ----------------------------------------------------------------- REPL

def _complete(buffer: str) -> bool:
    code = "\n".join(line.split("%", 1)[0] for line in buffer.splitlines())
    return code.rstrip().endswith(".")


def repl(session: Session, inp: TextIO, out: TextIO, file: str | None = None) -> int:
    """Read statements line by line; ``:load``, ``:bounds`` and ``:quit`` are commands."""
    interactive = inp.isatty() if hasattr(inp, "isatty") else False

    def show(results):
        for r in results:
            print(r.to_text(), file=out)

    def guarded(fn, *a):
        try:
            show(fn(*a))
        except (ALKError, OSError, ValueError) as e:
            print(f"error: {e}", file=out)

    if file:
        guarded(session.load_file, file)
    buffer = ""
    while True:
        if interactive:
            out.write("... " if buffer else "alk> ")
            out.flush()
        line = inp.readline()
        if not line:
            break
        stripped = line.strip()
        if not buffer and stripped.startswith(":"):
            cmd, _, rest = stripped.partition(" ")
            rest = rest.strip()
            if cmd in (":quit", ":q"):
                return EXIT_OK
            if cmd == ":load":
                guarded(session.load_file, rest)
            elif cmd == ":bounds":
                if rest:
                    try:
                        session.bounds = EnumBounds.parse(rest, session.bounds)
                    except ValueError as e:
                        print(f"error: {e}", file=out)
                        continue
                print(f"bounds {session.bounds}", file=out)
            else:
                print(f"error: unknown command {cmd}; try :load, :bounds or :quit", file=out)
            continue
        buffer += line
        if _complete(buffer):
            text, buffer = buffer, ""
            guarded(session.load_text, text, "<repl>")
    if buffer.strip():
        print("error: incomplete statement at end of input", file=out)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
