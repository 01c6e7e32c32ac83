"""Line-oriented context files declaring a universe and named structures.

Grammar (``#`` starts a comment; blank lines are ignored)::

    universe <elem>*
    relation <id> [closure: (refl|sym|trans)*]
      pair <a> <b>
    end
    cover <id>
      block <name> <elem>*
    end
    sequence <id> <elem>*
    fuzzy <id>
      level <p/q> : <elem>*
    end
    granules <id>
      granule <elem>*
    end

The universe line comes first and appears once; every later element name
must be declared there.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from .cover import CoverSystem
from .fuzzy import FuzzySet
from .universe import DomainError, ElementSet, Relation, Universe, closure

CLOSURE_WORDS = {"refl": "reflexive", "sym": "symmetric", "trans": "transitive",
                 "reflexive": "reflexive", "symmetric": "symmetric", "transitive": "transitive"}
_NAME = re.compile(r"[^\s{},:#]+\Z")
_BLOCK_ITEMS = {"relation": "pair", "cover": "block", "fuzzy": "level", "granules": "granule"}


class ContextError(DomainError):
    def __init__(self, message: str, line: int, column: int, source: str = "<context>"):
        super().__init__(f"{source}:{line}:{column}: {message}")
        self.line = line
        self.column = column


@dataclass
class Context:
    universe: Universe
    relations: dict[str, Relation] = field(default_factory=dict)
    covers: dict[str, CoverSystem] = field(default_factory=dict)
    sequences: dict[str, tuple[str, ...]] = field(default_factory=dict)
    fuzzy: dict[str, FuzzySet] = field(default_factory=dict)
    granules: dict[str, tuple[ElementSet, ...]] = field(default_factory=dict)

    def _get(self, table: dict, kind: str, name: str):
        try:
            return table[name]
        except KeyError:
            known = ", ".join(table) or "none"
            raise DomainError(f"no {kind} named {name!r} (declared: {known})") from None

    def relation(self, name: str) -> Relation:
        return self._get(self.relations, "relation", name)

    def cover(self, name: str) -> CoverSystem:
        return self._get(self.covers, "cover", name)

    def sequence(self, name: str) -> tuple[str, ...]:
        return self._get(self.sequences, "sequence", name)

    def fuzzy_set(self, name: str) -> FuzzySet:
        return self._get(self.fuzzy, "fuzzy set", name)

    def granule_family(self, name: str) -> tuple[ElementSet, ...]:
        return self._get(self.granules, "granule family", name)


@dataclass
class _Tok:
    text: str
    line: int
    col: int


def _tokens(line: str, lineno: int) -> list[_Tok]:
    line = line.split("#", 1)[0]
    out = []
    for m in re.finditer(r"\S+", line):
        text, col = m.group(), m.start() + 1
        # "level 1/2: a b" and "level 1/2 :a" both split the colon off
        if text != ":" and ":" in text and not text.startswith("closure"):
            head, _, tail = text.partition(":")
            if head:
                out.append(_Tok(head, lineno, col))
            out.append(_Tok(":", lineno, col + len(head)))
            if tail:
                out.append(_Tok(tail, lineno, col + len(head) + 1))
        else:
            out.append(_Tok(text, lineno, col))
    return out


class _Parser:
    def __init__(self, text: str, source: str):
        self.source = source
        self.lines = [(i + 1, _tokens(l, i + 1)) for i, l in enumerate(text.splitlines())]
        self.lines = [(n, t) for n, t in self.lines if t]
        self.ctx: Context | None = None
        self.names: set[str] = set()

    def err(self, msg: str, tok: _Tok) -> ContextError:
        return ContextError(msg, tok.line, tok.col, self.source)

    def elem(self, tok: _Tok) -> str:
        if tok.text not in self.ctx.universe:
            raise self.err(f"unknown element {tok.text!r}", tok)
        return tok.text

    def ident(self, toks: list[_Tok], head: _Tok) -> str:
        if len(toks) < 2:
            raise self.err(f"{head.text} needs a name", head)
        tok = toks[1]
        if not _NAME.match(tok.text):
            raise self.err(f"bad name {tok.text!r}", tok)
        if tok.text in self.names:
            raise self.err(f"name {tok.text!r} declared twice", tok)
        self.names.add(tok.text)
        return tok.text

    def parse(self) -> Context:
        i = 0
        if not self.lines:
            self.ctx = Context(Universe(()))
            return self.ctx
        n, toks = self.lines[0]
        if toks[0].text != "universe":
            raise self.err("the first declaration must be 'universe'", toks[0])
        elems = []
        for t in toks[1:]:
            if not _NAME.match(t.text):
                raise self.err(f"bad element name {t.text!r}", t)
            if t.text in elems:
                raise self.err(f"duplicate element {t.text!r}", t)
            elems.append(t.text)
        self.ctx = Context(Universe(elems))
        i = 1
        while i < len(self.lines):
            _, toks = self.lines[i]
            head = toks[0]
            kind = head.text
            if kind == "universe":
                raise self.err("only one universe per file", head)
            if kind == "sequence":
                name = self.ident(toks, head)
                self.ctx.sequences[name] = tuple(self.elem(t) for t in toks[2:])
                i += 1
                continue
            if kind not in _BLOCK_ITEMS:
                raise self.err(f"unknown declaration {kind!r}", head)
            name = self.ident(toks, head)
            body = []
            i += 1
            while True:
                if i >= len(self.lines):
                    raise self.err(f"{kind} {name!r} is missing 'end'", head)
                _, inner = self.lines[i]
                i += 1
                if inner[0].text == "end":
                    if len(inner) > 1:
                        raise self.err("unexpected text after 'end'", inner[1])
                    break
                if inner[0].text != _BLOCK_ITEMS[kind]:
                    raise self.err(f"expected '{_BLOCK_ITEMS[kind]}' or 'end' inside {kind}", inner[0])
                body.append(inner)
            getattr(self, "_" + kind)(name, toks, body)
        return self.ctx

    def _relation(self, name, header, body):
        kinds = []
        rest = header[2:]
        if rest:
            first = rest[0]
            if first.text == "closure:":
                words = rest[1:]
            elif first.text.startswith("closure:"):
                words = [_Tok(first.text[8:], first.line, first.col + 8)] + rest[1:]
            else:
                raise self.err("expected 'closure:' after the relation name", first)
            for w in words:
                for part in filter(None, w.text.split("|")):
                    if part not in CLOSURE_WORDS:
                        raise self.err(f"unknown closure kind {part!r}", w)
                    kinds.append(CLOSURE_WORDS[part])
        pairs = []
        for toks in body:
            if len(toks) != 3:
                raise self.err("pair takes exactly two elements", toks[0])
            pairs.append((self.elem(toks[1]), self.elem(toks[2])))
        rel = Relation.from_pairs(self.ctx.universe, pairs)
        self.ctx.relations[name] = closure(rel, kinds) if kinds else rel

    def _cover(self, name, header, body):
        if len(header) > 2:
            raise self.err("unexpected text after the cover name", header[2])
        blocks, seen = [], set()
        for toks in body:
            if len(toks) < 2:
                raise self.err("block needs a name", toks[0])
            if toks[1].text in seen:
                raise self.err(f"block {toks[1].text!r} declared twice", toks[1])
            seen.add(toks[1].text)
            blocks.append((toks[1].text, [self.elem(t) for t in toks[2:]]))
        self.ctx.covers[name] = CoverSystem.from_blocks(self.ctx.universe, blocks)

    def _fuzzy(self, name, header, body):
        if len(header) > 2:
            raise self.err("unexpected text after the fuzzy set name", header[2])
        levels = {}
        for toks in body:
            if len(toks) < 3 or toks[2].text != ":":
                raise self.err("expected 'level <p/q> : <elem>*'", toks[0])
            try:
                p = Fraction(toks[1].text)
            except (ValueError, ZeroDivisionError):
                raise self.err(f"bad level {toks[1].text!r}", toks[1]) from None
            if not 0 <= p <= 1:
                raise self.err(f"level {p} lies outside [0, 1]", toks[1])
            if p in levels:
                raise self.err(f"level {p} given twice", toks[1])
            levels[p] = [self.elem(t) for t in toks[3:]]
        try:
            self.ctx.fuzzy[name] = FuzzySet.of(self.ctx.universe, levels)
        except DomainError as e:
            first = header[1]
            raise self.err(f"fuzzy set {name!r}: {e}", first) from None

    def _granules(self, name, header, body):
        if len(header) > 2:
            raise self.err("unexpected text after the family name", header[2])
        u = self.ctx.universe
        self.ctx.granules[name] = tuple(u.set(self.elem(t) for t in toks[1:]) for toks in body)


def parse_context_text(text: str, source: str = "<context>") -> Context:
    return _Parser(text, source).parse()


def parse_context(path: str | Path) -> Context:
    path = Path(path)
    return parse_context_text(path.read_text(encoding="utf-8"), str(path))


def parse_set(universe: Universe, text: str) -> ElementSet:
    """Read ``{a,b}``, ``a,b`` or ``a b``; ``{}`` is the empty set."""
    body = text.strip()
    if body.startswith("{"):
        if not body.endswith("}"):
            raise DomainError(f"unbalanced braces in {text!r}")
        body = body[1:-1]
    names = [n for n in re.split(r"[\s,]+", body) if n]
    return universe.set(names)
