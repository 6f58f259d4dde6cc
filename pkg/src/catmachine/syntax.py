"""Textual syntax for domains and morphisms.

Domains::

    O            terminal
    A            base domain
    {a}          singleton domain
    A x B        product (left associative, binds tighter than ->)
    A -> B       exponential (right associative)

Morphisms::

    id[D]  fst[A,B]  snd[A,B]  eps[A,R]  bang[D]
    point(c, D)  prim(name, A, R)  curry(f)  <f, g>
    f . g        composition, g applied first (right associative)
    f * g        functor product, desugared to <f . fst, g . snd>
"""
from __future__ import annotations

import re
from dataclasses import dataclass

from .core import (
    TERMINAL, Base, Bang, Compose, Curry, EvalMap, Exp, Fst, Id, Pair, Point, Prim,
    Prod, Snd, desugar_functor_product, singleton,
)
from .errors import MorphismTypeError, ParseError

_TOKEN = re.compile(r"""
    (?P<ws>\s+)
  | (?P<arrow>->|\|->)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_']*)
  | (?P<punct>[\[\](){}<>,.*:×;=\\#$λ|])
""", re.VERBOSE)


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    pos: int


def tokenize(text):
    toks = []
    i = 0
    while i < len(text):
        mt = _TOKEN.match(text, i)
        if mt is None:
            raise _error(text, f"unexpected character {text[i]!r}", i)
        kind = mt.lastgroup
        if kind != "ws":
            toks.append(Token(kind, mt.group(), i))
        i = mt.end()
    toks.append(Token("eof", "", len(text)))
    return toks


def _error(text, message, pos):
    line = text.count("\n", 0, pos) + 1
    col = pos - (text.rfind("\n", 0, pos) + 1) + 1
    return ParseError(message, pos=pos, line=line, col=col)


class Parser:
    """Recursive-descent parser over a token list; shared by the file formats."""

    def __init__(self, text):
        self.text = text
        self.toks = tokenize(text)
        self.i = 0

    @property
    def tok(self):
        return self.toks[self.i]

    def peek(self, k=1):
        return self.toks[min(self.i + k, len(self.toks) - 1)]

    def at(self, text):
        return self.tok.text == text and self.tok.kind != "eof"

    def error(self, message, tok=None):
        tok = tok or self.tok
        return _error(self.text, message, tok.pos)

    def advance(self):
        t = self.tok
        self.i += 1
        return t

    def expect(self, text):
        if not self.at(text):
            found = self.tok.text or "end of input"
            raise self.error(f"expected {text!r}, found {found!r}")
        return self.advance()

    def ident(self):
        if self.tok.kind != "ident":
            found = self.tok.text or "end of input"
            raise self.error(f"expected identifier, found {found!r}")
        return self.advance().text

    def done(self):
        if self.tok.kind != "eof":
            raise self.error(f"unexpected {self.tok.text!r}")

    # -- domains --

    def dom(self):
        left = self.prod_dom()
        if self.at("->"):
            self.advance()
            return Exp(left, self.dom())
        return left

    def prod_dom(self):
        d = self.dom_atom()
        while self.at("x") or self.at("×"):
            self.advance()
            d = Prod(d, self.dom_atom())
        return d

    def dom_atom(self):
        if self.at("("):
            self.advance()
            d = self.dom()
            self.expect(")")
            return d
        if self.at("{"):
            self.advance()
            a = self.ident()
            self.expect("}")
            return singleton(a)
        if self.at("O"):
            self.advance()
            return TERMINAL
        if self.tok.kind == "ident" and self.tok.text != "x":
            return Base(self.advance().text)
        raise self.error(f"expected a domain, found {self.tok.text or 'end of input'!r}")

    # -- morphisms --

    def mor(self):
        left = self.prod_mor()
        if self.at("."):
            self.advance()
            return Compose(left, self.mor())
        return left

    def prod_mor(self):
        start = self.tok
        m = self.mor_atom()
        while self.at("*"):
            self.advance()
            rhs = self.mor_atom()
            try:
                m = desugar_functor_product(m, rhs)
            except MorphismTypeError as exc:
                raise self.error(f"ill-typed functor product: {exc}", start) from exc
        return m

    def _bracket_doms(self, n):
        self.expect("[")
        ds = [self.dom()]
        for _ in range(n - 1):
            self.expect(",")
            ds.append(self.dom())
        self.expect("]")
        return ds

    def mor_atom(self):
        t = self.tok
        if self.at("("):
            self.advance()
            m = self.mor()
            self.expect(")")
            return m
        if self.at("<"):
            self.advance()
            f = self.mor()
            self.expect(",")
            g = self.mor()
            self.expect(">")
            return Pair(f, g)
        if t.kind != "ident":
            raise self.error(f"expected a morphism, found {t.text or 'end of input'!r}")
        name = self.advance().text
        if name == "id":
            return Id(*self._bracket_doms(1))
        if name == "fst":
            return Fst(*self._bracket_doms(2))
        if name == "snd":
            return Snd(*self._bracket_doms(2))
        if name == "eps":
            return EvalMap(*self._bracket_doms(2))
        if name == "bang":
            return Bang(*self._bracket_doms(1))
        if name == "curry":
            self.expect("(")
            g = self.mor()
            self.expect(")")
            return Curry(g)
        if name == "point":
            self.expect("(")
            c = self.ident()
            self.expect(",")
            d = self.dom()
            self.expect(")")
            return Point(c, d)
        if name == "prim":
            self.expect("(")
            n = self.ident()
            self.expect(",")
            a = self.dom()
            self.expect(",")
            r = self.dom()
            self.expect(")")
            return Prim(n, a, r)
        raise self.error(f"unknown morphism constructor {name!r}", t)

    # -- raw value literals --

    def raw_value(self):
        """``atom``, ``[v, w]``, ``()`` or a table ``{v |-> w, ...}``.

        Returns nested python data: str, ("pair", l, r), ("unit",),
        ("table", [(k, v), ...]).
        """
        if self.at("["):
            self.advance()
            left = self.raw_value()
            self.expect(",")
            right = self.raw_value()
            self.expect("]")
            return ("pair", left, right)
        if self.at("("):
            self.advance()
            self.expect(")")
            return ("unit",)
        if self.at("{"):
            self.advance()
            entries = []
            if not self.at("}"):
                entries.append(self._table_entry())
                while self.at(","):
                    self.advance()
                    entries.append(self._table_entry())
            self.expect("}")
            return ("table", entries)
        return self.ident()

    def _table_entry(self):
        k = self.raw_value()
        self.expect("|->")
        return k, self.raw_value()


def parse_dom(text):
    p = Parser(text)
    d = p.dom()
    p.done()
    return d


def parse_mor(text):
    p = Parser(text)
    m = p.mor()
    p.done()
    return m


def parse_raw_value(text):
    p = Parser(text)
    v = p.raw_value()
    p.done()
    return v
