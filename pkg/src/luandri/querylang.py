"""Structured query language: lexer, parser, canonical rendering.

Grammar (documented in docs/grammar.md):

    query  := item+
    item   := belief | filter
    belief := TERM
            | '#combine' '(' belief+ ')'
            | '#syn' '(' prox+ ')'
            | '#od' INT '(' TERM TERM+ ')'
            | '#uw' INT '(' TERM TERM+ ')'
    prox   := TERM | '#od' INT '(' ... ')' | '#uw' INT '(' ... ')' | '#syn' '(' prox+ ')'
    filter := '#greater' '(' FIELD INT ')'
            | '#less'    '(' FIELD INT ')'
            | '#between' '(' FIELD INT INT ')'
            | '#equals'  '(' FIELD INT ')'

Filters are top-level only.  Bare words are run through the ingest tokenizer,
so one word may contribute several terms (or none, which is an error).
Multiple top-level beliefs are wrapped in an implicit ``#combine``.
"""

from __future__ import annotations

from dataclasses import dataclass

from luandri.errors import QueryParseError
from luandri.ingest import tokenize

MAX_NESTING = 128

FILTER_OPS = ("greater", "less", "between", "equals")


# ---------------------------------------------------------------------------
# AST


@dataclass(frozen=True)
class Term:
    term: str


@dataclass(frozen=True)
class Combine:
    children: tuple


@dataclass(frozen=True)
class Syn:
    children: tuple


@dataclass(frozen=True)
class OrderedWindow:
    n: int
    terms: tuple


@dataclass(frozen=True)
class UnorderedWindow:
    n: int
    terms: tuple


@dataclass(frozen=True)
class Empty:
    """Belief with no scorable content; retrieval maps it to zero results."""


@dataclass(frozen=True)
class NumericFilter:
    op: str  # greater | less | between | equals
    field: str
    bounds: tuple

    def matches(self, value: int | None) -> bool:
        if value is None:
            return False  # a missing field fails every filter
        if self.op == "greater":
            return value > self.bounds[0]
        if self.op == "less":
            return value < self.bounds[0]
        if self.op == "equals":
            return value == self.bounds[0]
        return self.bounds[0] <= value <= self.bounds[1]


BELIEF_NODES = (Term, Combine, Syn, OrderedWindow, UnorderedWindow)
PROX_NODES = (Term, Syn, OrderedWindow, UnorderedWindow)


# ---------------------------------------------------------------------------
# Lexer

_WORD_TERMINATORS = frozenset("()")


@dataclass(frozen=True)
class _Token:
    kind: str  # word | op | lparen | rparen | eof
    offset: int  # character offset into the query string
    text: str = ""
    opname: str = ""
    n: int | None = None


def _lex(text: str) -> list[_Token]:
    tokens = []
    i = 0
    size = len(text)
    while i < size:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch == "(":
            tokens.append(_Token("lparen", i, text="("))
            i += 1
            continue
        if ch == ")":
            tokens.append(_Token("rparen", i, text=")"))
            i += 1
            continue
        if ch == "#":
            start = i
            i += 1
            letters = i
            while i < size and text[i].isascii() and text[i].isalpha():
                i += 1
            name = text[letters:i].lower()
            if not name:
                raise QueryParseError(
                    _byte_offset(text, start), "an operator name after '#'", _preview(text, i)
                )
            digits = i
            while i < size and text[i].isdigit() and text[i].isascii():
                i += 1
            n = int(text[digits:i]) if i > digits else None
            tokens.append(_Token("op", start, text=text[start:i], opname=name, n=n))
            continue
        start = i
        while i < size and not text[i].isspace() and text[i] not in _WORD_TERMINATORS:
            i += 1
        tokens.append(_Token("word", start, text=text[start:i]))
    tokens.append(_Token("eof", size))
    return tokens


def _byte_offset(text: str, char_index: int) -> int:
    return len(text[:char_index].encode("utf-8", "surrogatepass"))


def _preview(text: str, i: int) -> str:
    return repr(text[i:i + 12]) if i < len(text) else "end of input"


def _describe(tok: _Token) -> str:
    if tok.kind == "eof":
        return "end of input"
    if tok.kind == "op":
        return f"'{tok.text}'"
    return repr(tok.text)


# ---------------------------------------------------------------------------
# Parser


class _Parser:
    def __init__(self, text: str, tokens: list[_Token]):
        self.text = text
        self.tokens = tokens
        self.pos = 0

    def peek(self) -> _Token:
        return self.tokens[self.pos]

    def advance(self) -> _Token:
        tok = self.tokens[self.pos]
        if tok.kind != "eof":
            self.pos += 1
        return tok

    def fail(self, tok: _Token, expected: str):
        raise QueryParseError(_byte_offset(self.text, tok.offset), expected, _describe(tok))

    def expect(self, kind: str, expected: str) -> _Token:
        tok = self.peek()
        if tok.kind != kind:
            self.fail(tok, expected)
        return self.advance()

    def parse(self):
        beliefs = []
        filters = []
        while True:
            tok = self.peek()
            if tok.kind == "eof":
                break
            if tok.kind == "op" and tok.opname in FILTER_OPS:
                filters.append(self.filter())
            else:
                beliefs.extend(self.belief(depth=0))
        if not beliefs and not filters:
            self.fail(self.peek(), "a query term or operator")
        if not beliefs:
            belief = Empty()
        elif len(beliefs) == 1:
            belief = beliefs[0]
        else:
            belief = Combine(tuple(beliefs))
        return belief, filters

    def belief(self, depth: int) -> list:
        if depth > MAX_NESTING:
            self.fail(self.peek(), "a less deeply nested query")
        tok = self.peek()
        if tok.kind == "word":
            return self.terms()
        if tok.kind == "op":
            if tok.opname in FILTER_OPS:
                self.fail(tok, "filters only at the top level of the query")
            if tok.opname == "combine":
                return [self.combine(depth)]
            if tok.opname == "syn":
                return [self.syn(depth)]
            if tok.opname in ("od", "uw"):
                return [self.window()]
            self.fail(tok, "a known operator (#combine, #syn, #odN, #uwN, or a filter)")
        if tok.kind == "rparen":
            self.fail(tok, "a query term or operator before ')'")
        self.fail(tok, "a query term or operator")

    def terms(self) -> list:
        tok = self.advance()
        terms = tokenize(tok.text)
        if not terms:
            self.fail(tok, "a term with at least one letter or digit")
        return [Term(t) for t in terms]

    def no_suffix(self, tok: _Token):
        if tok.n is not None:
            self.fail(tok, f"'#{tok.opname}' without a numeric suffix")

    def combine(self, depth: int) -> Combine:
        op = self.advance()
        self.no_suffix(op)
        self.expect("lparen", f"'(' after '{op.text}'")
        children = []
        while self.peek().kind not in ("rparen", "eof"):
            children.extend(self.belief(depth + 1))
        self.expect("rparen", "')' closing '#combine('")
        if not children:
            self.fail(op, "at least one argument in #combine")
        return Combine(tuple(children))

    def syn(self, depth: int) -> Syn:
        op = self.advance()
        self.no_suffix(op)
        self.expect("lparen", f"'(' after '{op.text}'")
        children = []
        while self.peek().kind not in ("rparen", "eof"):
            children.extend(self.prox(depth + 1))
        self.expect("rparen", "')' closing '#syn('")
        if not children:
            self.fail(op, "at least one argument in #syn")
        return Syn(tuple(children))

    def prox(self, depth: int) -> list:
        if depth > MAX_NESTING:
            self.fail(self.peek(), "a less deeply nested query")
        tok = self.peek()
        if tok.kind == "word":
            return self.terms()
        if tok.kind == "op":
            if tok.opname in ("od", "uw"):
                return [self.window()]
            if tok.opname == "syn":
                return [self.syn(depth)]
            if tok.opname in FILTER_OPS:
                self.fail(tok, "filters only at the top level of the query")
            self.fail(tok, "a term, window, or #syn inside #syn")
        self.fail(tok, "a term, window, or #syn inside #syn")

    def window(self):
        op = self.advance()
        if op.n is None:
            self.fail(op, f"a window size, as in '#{op.opname}1'")
        if op.n < 1:
            self.fail(op, "a window size of at least 1")
        self.expect("lparen", f"'(' after '{op.text}'")
        terms = []
        while True:
            tok = self.peek()
            if tok.kind in ("rparen", "eof"):
                break
            if tok.kind != "word":
                self.fail(tok, f"a bare term inside '{op.text}('")
            terms.extend(t.term for t in self.terms())
        self.expect("rparen", f"')' closing '{op.text}('")
        if len(terms) < 2:
            self.fail(op, "at least two terms in a window operator")
        node_type = OrderedWindow if op.opname == "od" else UnorderedWindow
        return node_type(op.n, tuple(terms))

    def filter(self) -> NumericFilter:
        op = self.advance()
        self.no_suffix(op)
        self.expect("lparen", f"'(' after '{op.text}'")
        field_tok = self.expect("word", f"a field name in '{op.text}('")
        field = field_tok.text.lower()
        bounds = []
        want = 2 if op.opname == "between" else 1
        for _ in range(want):
            tok = self.expect("word", "an integer bound")
            text = tok.text
            sign = text[1:] if text[:1] in "+-" else text
            if not (sign.isdigit() and sign.isascii()):
                self.fail(tok, "an integer bound")
            bounds.append(int(text))
        if op.opname == "between" and bounds[0] > bounds[1]:
            self.fail(self.tokens[self.pos - 1], "an upper bound not below the lower bound")
        self.expect("rparen", f"')' closing '{op.text}('")
        return NumericFilter(op=op.opname, field=field, bounds=tuple(bounds))


def parse_query(text: str):
    """Parse query text into (belief AST, top-level filters).

    Raises :class:`~luandri.errors.QueryParseError` with a byte offset on any
    malformed input; never raises anything else.
    """
    return _Parser(text, _lex(text)).parse()


# ---------------------------------------------------------------------------
# Rendering


def render_node(node) -> str:
    if isinstance(node, Term):
        return node.term
    if isinstance(node, Combine):
        return "#combine( " + " ".join(render_node(c) for c in node.children) + " )"
    if isinstance(node, Syn):
        return "#syn( " + " ".join(render_node(c) for c in node.children) + " )"
    if isinstance(node, OrderedWindow):
        return f"#od{node.n}( " + " ".join(node.terms) + " )"
    if isinstance(node, UnorderedWindow):
        return f"#uw{node.n}( " + " ".join(node.terms) + " )"
    raise TypeError(f"cannot render {type(node).__name__}")


def render_filter(f: NumericFilter) -> str:
    return f"#{f.op}( {f.field} " + " ".join(str(b) for b in f.bounds) + " )"


def render_query(belief, filters=()) -> str:
    """Canonical text form; re-parsing it reproduces the same AST."""
    parts = []
    if not isinstance(belief, Empty):
        parts.append(render_node(belief))
    parts.extend(render_filter(f) for f in filters)
    return " ".join(parts)


# ---------------------------------------------------------------------------
# Stop words


def apply_stopwords(belief, stopwords):
    """Remove stopped Term children of Combine nodes (and a bare top-level
    Term).  Terms inside #syn/#odN/#uwN keep their adjacency semantics and are
    never removed.  Returns :class:`Empty` when nothing scorable remains.
    """
    stopset = set(stopwords)

    def walk(node):
        if isinstance(node, Term):
            return None if node.term in stopset else node
        if isinstance(node, Combine):
            kept = tuple(c for c in (walk(child) for child in node.children) if c is not None)
            return Combine(kept) if kept else None
        return node

    if isinstance(belief, Empty):
        return belief
    result = walk(belief)
    return Empty() if result is None else result
