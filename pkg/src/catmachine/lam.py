"""Surface lambda terms and their compilation to combinators.

Variables compile to projection pointers into the environment product,
constants to points or curried citation maps, abstraction to ``curry``
and application to the evaluation map.
"""
from __future__ import annotations

from dataclasses import dataclass

from .core import (
    Base, Bang, Compose, Curry, EvalMap, Exp, Pair, Point, Prod, access_path, env_shape,
    infer_type,
)
from .errors import ApplyNonFunction, MorphismTypeError, ParseError, ScopeError, UnknownAtom
from .machine import AtomV, PrimV, PairV, citation_fun, enumerate_domain
from .syntax import Parser


class LambdaTerm:
    __slots__ = ()

    def __str__(self):
        return show_term(self)


@dataclass(frozen=True)
class Var(LambdaTerm):
    name: str


@dataclass(frozen=True)
class ConstAtom(LambdaTerm):
    name: str


@dataclass(frozen=True)
class ConstFun(LambdaTerm):
    name: str


@dataclass(frozen=True)
class App(LambdaTerm):
    fun: LambdaTerm
    arg: LambdaTerm


@dataclass(frozen=True)
class Lam(LambdaTerm):
    binder: str
    body: LambdaTerm
    dom: object = None


@dataclass(frozen=True)
class Context:
    """Typed variables, leftmost first, on top of an implicit rest domain.

    ``binders`` supplies domains for abstractions written without an
    annotation.
    """
    entries: tuple = ()
    rest: object = Base("E")
    binders: tuple = ()

    def __post_init__(self):
        names = [n for n, _ in self.entries]
        if len(set(names)) != len(names):
            raise ScopeError(f"duplicate variable in context: {names}")

    def shape(self):
        return env_shape(self.rest, *(d for _, d in self.entries))

    def index(self, name):
        """De Bruijn index counted from the right; the rightmost binding wins."""
        for k, (n, _) in enumerate(reversed(self.entries)):
            if n == name:
                return k
        raise ScopeError(f"unbound variable {name}")

    def extend(self, name, d):
        # shadowing is allowed: the new binding is found first by index()
        kept = tuple((n, x) for n, x in self.entries)
        obj = object.__new__(Context)
        object.__setattr__(obj, "entries", kept + ((name, d),))
        object.__setattr__(obj, "rest", self.rest)
        object.__setattr__(obj, "binders", self.binders)
        return obj

    def binder_dom(self, name):
        for n, d in self.binders:
            if n == name:
                return d
        return None

    @property
    def names(self):
        return [n for n, _ in self.entries]


# -- parsing ------------------------------------------------------------------

class _TermParser(Parser):
    def term(self):
        if self.at("\\") or self.at("λ"):
            self.advance()
            name = self.ident()
            d = None
            if self.at(":"):
                self.advance()
                d = self.dom()
            self.expect(".")
            return Lam(name, self.term(), d)
        return self.app()

    def _starts_atom(self):
        t = self.tok
        return t.kind == "ident" or t.text in ("#", "$", "(", "\\", "λ")

    def app(self):
        t = self.atom()
        while self._starts_atom():
            if self.at("\\") or self.at("λ"):
                t = App(t, self.term())
                break
            t = App(t, self.atom())
        return t

    def atom(self):
        if self.at("("):
            self.advance()
            t = self.term()
            self.expect(")")
            return t
        if self.at("#"):
            self.advance()
            return ConstAtom(self.ident())
        if self.at("$"):
            self.advance()
            return ConstFun(self.ident())
        if self.tok.kind == "ident":
            return Var(self.advance().text)
        raise self.error(f"expected a term, found {self.tok.text or 'end of input'!r}")


def parse(source):
    p = _TermParser(source)
    t = p.term()
    p.done()
    return t


def parse_context(text):
    """``E, y:Dy, x:Dx``: implicit rest first, then named entries left to right."""
    parts = [x.strip() for x in text.split(",")]
    if not parts or not parts[0]:
        raise ParseError("context needs an implicit rest domain", line=1, col=1)
    p = Parser(parts[0])
    rest = p.dom()
    p.done()
    return rest, tuple(_typed_name(x) for x in parts[1:])


def _typed_name(text):
    p = Parser(text)
    n = p.ident()
    p.expect(":")
    d = p.dom()
    p.done()
    return n, d


def parse_term_file(text):
    """Header lines ``ctx: ...`` (required) and ``binders: z:Dx, ...`` (optional), then the term."""
    rest = entries = None
    binders = ()
    body = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("--", 1)[0].rstrip()
        stripped = line.strip()
        try:
            if stripped.startswith("ctx:") and not body:
                rest, entries = parse_context(stripped[4:])
                continue
            if stripped.startswith("binders:") and not body:
                binders = tuple(_typed_name(x.strip()) for x in stripped[8:].split(",") if x.strip())
                continue
        except ParseError as exc:
            raise ParseError(exc.message, line=lineno, col=exc.col) from exc
        if stripped:
            body.append((lineno, line))
    if rest is None:
        raise ParseError("missing 'ctx:' header", line=1, col=1)
    if not body:
        raise ParseError("missing term", line=1, col=1)
    first = body[0][0]
    src = "\n".join([""] * (first - 1) + [b for _, b in body])
    try:
        t = parse(src)
    except ParseError as exc:
        raise ParseError(exc.message, line=exc.line, col=exc.col) from exc
    return Context(entries, rest, binders), t


# -- compilation --------------------------------------------------------------

def compile_term(t, ctx, s):
    """Combinator code for ``t``; its domain is ``ctx.shape()``."""
    shape = ctx.shape()
    match t:
        case Var(name):
            return access_path(shape, ctx.index(name))
        case ConstAtom(name):
            return Compose(Point(name, s.point_domain(name)), Bang(shape))
        case ConstFun(name):
            return citation_fun(name, shape, s)
        case App(fun, arg):
            m = compile_term(fun, ctx, s)
            n = compile_term(arg, ctx, s)
            fc = infer_type(m)[1]
            ac = infer_type(n)[1]
            if not isinstance(fc, Exp):
                raise MorphismTypeError(m, Exp(ac, Base("?")), fc, f"applying non-function {fun}")
            if fc.arg != ac:
                raise MorphismTypeError(n, fc.arg, ac, f"argument of {fun}")
            return Compose(EvalMap(fc.arg, fc.result), Pair(m, n))
        case Lam(binder, body, d):
            d = d if d is not None else ctx.binder_dom(binder)
            if d is None:
                raise ScopeError(f"no domain given for binder {binder}")
            return Curry(compile_term(body, ctx.extend(binder, d), s))
    raise TypeError(f"not a lambda term: {t!r}")


# -- reference interpreter ----------------------------------------------------

@dataclass(frozen=True)
class OracleClosure:
    binder: str
    body: LambdaTerm
    env: tuple


def oracle_eval(t, env, s):
    """Direct environment-passing evaluation with variables looked up by name."""
    match t:
        case Var(name):
            if name not in env:
                raise ScopeError(f"unbound variable {name}")
            return env[name]
        case ConstAtom(name):
            if name not in s.points:
                raise UnknownAtom(name)
            return AtomV(name, s.points[name])
        case ConstFun(name):
            return s.prim_value(name)
        case App(fun, arg):
            f = oracle_eval(fun, env, s)
            x = oracle_eval(arg, env, s)
            return oracle_apply(f, x, s)
        case Lam(binder, body, _):
            return OracleClosure(binder, body, tuple(env.items()))
    raise TypeError(f"not a lambda term: {t!r}")


def oracle_apply(f, x, s):
    if isinstance(f, OracleClosure):
        env = dict(f.env)
        env[f.binder] = x
        return oracle_eval(f.body, env, s)
    if isinstance(f, PrimV):
        return f(oracle_canonical(x, f.dom, s))
    raise ApplyNonFunction(f"cannot apply {f}")


def oracle_canonical(v, d, s):
    """Closures of the reference interpreter as function tables."""
    match d:
        case Prod(l, r):
            return PairV(oracle_canonical(v.left, l, s), oracle_canonical(v.right, r, s))
        case Exp(a, r):
            if isinstance(v, PrimV):
                return v
            return PrimV("", a, r, tuple(
                (x, oracle_canonical(oracle_apply(v, x, s), r, s))
                for x in enumerate_domain(a, s)))
    return v


def bindings(ctx, instance):
    """Name -> value map read off a nested environment instance."""
    env = {}
    cur = instance
    for name, _ in reversed(ctx.entries):
        env.setdefault(name, cur.right)
        cur = cur.left
    return env


# -- printing -----------------------------------------------------------------

def show_term(t):
    match t:
        case Var(n):
            return n
        case ConstAtom(n):
            return "#" + n
        case ConstFun(n):
            return "$" + n
        case App(f, x):
            fs = show_term(f)
            if isinstance(f, Lam):
                fs = f"({fs})"
            xs = show_term(x)
            if isinstance(x, (App, Lam)):
                xs = f"({xs})"
            return f"{fs} {xs}"
        case Lam(b, body, d):
            ann = f":{d}" if d is not None else ""
            return f"\\{b}{ann}. {show_term(body)}"
    raise TypeError(t)
