"""Rewriting to normal form, equality of morphisms, and diagram checking."""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from functools import lru_cache

from .core import (
    TERMINAL, Bang, Compose, Curry, EvalMap, Fst, Id, Pair, Prod, Snd, chain, compose,
    infer_type,
)
from .errors import DiagramError, MorphismTypeError, SizeLimit, UnknownPrimitive
from . import machine

RULES = (
    "cat-l", "cat-r", "assoc",
    "prod-beta1", "prod-beta2", "exp-beta",
    "pair-nat", "curry-nat",
    "prod-eta", "exp-eta",
    "term",
)

MAX_STEPS = 100_000


@dataclass(frozen=True)
class Step:
    rule: str
    before: object
    after: object


@dataclass(frozen=True)
class RewriteTrace:
    steps: tuple = ()

    def __len__(self):
        return len(self.steps)

    def __iter__(self):
        return iter(self.steps)


# -- exp-eta support ----------------------------------------------------------

def _unshift(x, level):
    """Find ``k`` with ``k . (fst x id x ... x id) == x``, or None.

    ``x`` is a normal form whose domain is ``(...((A x B) x C1) ... ) x Cm``
    with ``m == level``; ``k`` has the same domain with ``A x B`` replaced by
    ``A``.  Fails whenever ``x`` reads the ``B`` slot.
    """
    gammas = [infer_type(x)[0]]
    for _ in range(level):
        g = gammas[-1]
        if not isinstance(g, Prod):
            return None
        gammas.append(g.left)
    gammas.reverse()  # gammas[i] is Gamma_i
    if not isinstance(gammas[0], Prod):
        return None
    primed = [gammas[0].left]
    for i in range(1, level + 1):
        primed.append(Prod(primed[-1], gammas[i].right))

    parts = chain(x)
    idx = len(parts) - 1
    lvl = level
    tail = []
    replaced = None
    while idx >= 0:
        c = parts[idx]
        if lvl == 0 and c == Fst(gammas[0].left, gammas[0].right):
            replaced = []
            idx -= 1
            break
        if isinstance(c, Fst) and lvl >= 1:
            tail.insert(0, Fst(primed[lvl - 1], gammas[lvl].right))
            lvl -= 1
            idx -= 1
            continue
        if isinstance(c, Snd) and lvl >= 1:
            replaced = [Snd(primed[lvl - 1], gammas[lvl].right)]
        elif isinstance(c, Bang):
            replaced = [Bang(primed[lvl])]
        elif isinstance(c, Pair):
            f = _unshift(c.f, lvl)
            g = _unshift(c.g, lvl) if f is not None else None
            if g is None:
                return None
            replaced = [Pair(f, g)]
        elif isinstance(c, Curry):
            g = _unshift(c.g, lvl + 1)
            if g is None:
                return None
            replaced = [Curry(g)]
        else:
            return None
        idx -= 1
        break
    if replaced is None:
        return None
    pieces = parts[:idx + 1] + replaced + tail
    if not pieces:
        return Id(primed[level])
    return compose(*pieces)


def _eta_candidate(f, g):
    """The ``h`` with ``f == fst . h`` and ``g == snd . h`` (in normal form), if any."""

    def split(m, proj):
        if isinstance(m, proj):
            return Id(Prod(m.l, m.r))
        if isinstance(m, Compose) and isinstance(m.outer, proj):
            return m.inner
        return None

    def expected(proj, h):
        l, r = infer_type(h)[1].left, infer_type(h)[1].right
        p = proj(l, r)
        target = l if proj is Fst else r
        if target == TERMINAL:
            return Bang(infer_type(h)[0])
        return p if isinstance(h, Id) else Compose(p, h)

    for h in (split(f, Fst), split(g, Snd)):
        if h is None:
            continue
        if not isinstance(infer_type(h)[1], Prod):
            continue
        if expected(Fst, h) == f and expected(Snd, h) == g:
            return h
    return None


# -- rules --------------------------------------------------------------------

def _root(m):
    """Try each law at the root of ``m`` in priority order."""
    if isinstance(m, Compose):
        o, i = m.outer, m.inner
        if isinstance(o, Id):
            return "cat-l", i
        if isinstance(i, Id):
            return "cat-r", o
        if isinstance(o, Compose):
            return "assoc", Compose(o.outer, Compose(o.inner, i))
        if isinstance(o, Fst) and isinstance(i, Pair):
            return "prod-beta1", i.f
        if isinstance(o, Snd) and isinstance(i, Pair):
            return "prod-beta2", i.g
        if isinstance(o, EvalMap) and isinstance(i, Pair):
            fn, q = i.f, i.g
            if isinstance(fn, Curry):
                return "exp-beta", Compose(fn.g, Pair(Id(infer_type(q)[0]), q))
            if isinstance(fn, Compose) and isinstance(fn.outer, Curry):
                return "exp-beta", Compose(fn.outer.g, Pair(fn.inner, q))
        if isinstance(o, Pair):
            return "pair-nat", Pair(Compose(o.f, i), Compose(o.g, i))
        if isinstance(o, Curry):
            a = infer_type(i)[0]
            b = infer_type(o.g)[0].right
            return "curry-nat", Curry(Compose(o.g, Pair(Compose(i, Fst(a, b)), Snd(a, b))))
    if isinstance(m, Pair):
        f, g = m.f, m.g
        if isinstance(f, Fst) and g == Snd(f.l, f.r):
            return "prod-eta", Id(Prod(f.l, f.r))
        h = _eta_candidate(f, g)
        if h is not None:
            return "prod-eta", h
    if isinstance(m, Curry):
        body = m.g
        if isinstance(body, EvalMap):
            return "exp-eta", Id(infer_type(m)[1])
        if (isinstance(body, Compose) and isinstance(body.outer, EvalMap)
                and isinstance(body.inner, Pair)):
            x, q = body.inner.f, body.inner.g
            bd = infer_type(body)[0]
            if q == Snd(bd.left, bd.right):
                k = _unshift(x, 0)
                if k is not None:
                    return "exp-eta", k
    d, c = infer_type(m)
    if c == TERMINAL and m != Bang(d):
        return "term", Bang(d)
    return None


@lru_cache(maxsize=1 << 16)
def _step(m):
    """One innermost rewrite step on ``m``: ``(rule, m')`` or None if normal."""
    match m:
        case Compose(o, i):
            r = _step(o)
            if r:
                return r[0], Compose(r[1], i)
            r = _step(i)
            if r:
                return r[0], Compose(o, r[1])
        case Pair(f, g):
            r = _step(f)
            if r:
                return r[0], Pair(r[1], g)
            r = _step(g)
            if r:
                return r[0], Pair(f, r[1])
        case Curry(g):
            r = _step(g)
            if r:
                return r[0], Curry(r[1])
    return _root(m)


def normalize(m):
    """Rewrite ``m`` to normal form; returns ``(normal, trace)``."""
    infer_type(m)
    steps = []
    cur = m
    while True:
        r = _step(cur)
        if r is None:
            return cur, RewriteTrace(tuple(steps))
        rule, nxt = r
        steps.append(Step(rule, cur, nxt))
        cur = nxt
        if len(steps) > MAX_STEPS:
            raise RuntimeError(f"rewriting did not terminate within {MAX_STEPS} steps")


@lru_cache(maxsize=1 << 14)
def normal_form(m):
    return normalize(m)[0]


# -- equality -----------------------------------------------------------------

class Outcome(enum.Enum):
    EQUAL = "Equal"
    NOT_EQUAL = "NotEqual"
    UNDECIDED = "Undecided"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class Verdict:
    outcome: Outcome
    counterexample: object = None
    traces: tuple = ()
    method: str = "symbolic"
    note: str = ""

    @property
    def equal(self):
        return self.outcome is Outcome.EQUAL

    def __str__(self):
        return str(self.outcome)


def equal(a, b, semantics=None):
    """Decide ``a == b`` by normal forms, falling back to exhaustive evaluation."""
    ta, tb = infer_type(a), infer_type(b)
    if ta != tb:
        raise MorphismTypeError(b, ta, tb, "equality of non-parallel morphisms")
    na, trace_a = normalize(a)
    nb, trace_b = normalize(b)
    traces = (trace_a, trace_b)
    if na == nb:
        return Verdict(Outcome.EQUAL, traces=traces)
    if semantics is None:
        return Verdict(Outcome.UNDECIDED, traces=traces, note="distinct normal forms")
    v = equal_exhaustive(a, b, semantics)
    return Verdict(v.outcome, v.counterexample, traces, v.method, v.note)


def equal_exhaustive(a, b, semantics):
    """Compare images of every element of the domain, skipping normalization."""
    ta, tb = infer_type(a), infer_type(b)
    if ta != tb:
        raise MorphismTypeError(b, ta, tb, "equality of non-parallel morphisms")
    dom, cod = ta
    try:
        for v in machine.enumerate_domain(dom, semantics):
            x = machine.apply_mor(a, v, semantics)
            y = machine.apply_mor(b, v, semantics)
            if not machine.values_equal(x, y, cod, semantics):
                return Verdict(Outcome.NOT_EQUAL, v, method="exhaustive")
    except UnknownPrimitive as exc:
        return Verdict(Outcome.UNDECIDED, method="exhaustive",
                       note=f"uninterpreted primitive {exc}")
    except SizeLimit as exc:
        return Verdict(Outcome.UNDECIDED, method="exhaustive", note=str(exc))
    return Verdict(Outcome.EQUAL, method="exhaustive")


# -- diagrams -----------------------------------------------------------------

@dataclass(frozen=True)
class Edge:
    name: str
    morphism: object
    src: object
    dst: object


@dataclass
class Diagram:
    nodes: list = field(default_factory=list)
    edges: dict = field(default_factory=dict)
    claims: list = field(default_factory=list)
    expected: list = field(default_factory=list)

    def add_edge(self, name, morphism, src=None, dst=None):
        d, c = infer_type(morphism)
        src = d if src is None else src
        dst = c if dst is None else dst
        for n in (src, dst):
            if n not in self.nodes:
                self.nodes.append(n)
        self.edges[name] = Edge(name, morphism, src, dst)
        return self

    def claim(self, path_a, path_b, expected=None):
        """Paths are edge-name sequences; ``expected`` is the anticipated Outcome."""
        if isinstance(path_a, str):
            path_a = path_a.split()
        if isinstance(path_b, str):
            path_b = path_b.split()
        self.claims.append((tuple(path_a), tuple(path_b)))
        self.expected.append(expected or Outcome.EQUAL)
        return self

    def validate(self):
        for e in self.edges.values():
            if e.src not in self.nodes or e.dst not in self.nodes:
                raise DiagramError(f"edge {e.name} connects undeclared nodes")
            try:
                t = infer_type(e.morphism)
            except MorphismTypeError as exc:
                raise DiagramError(f"edge {e.name} is ill-typed: {exc}") from exc
            if t != (e.src, e.dst):
                raise DiagramError(
                    f"edge {e.name} types as {t[0]} -> {t[1]}, declared {e.src} -> {e.dst}")
        for a, b in self.claims:
            pa, pb = self.path(a), self.path(b)
            if infer_type(pa) != infer_type(pb):
                raise DiagramError(f"claim {' '.join(a)} ; {' '.join(b)} compares non-parallel paths")

    def path(self, names):
        """Composite of a path, written in composition order (last edge applied first)."""
        if not names:
            raise DiagramError("empty path")
        for n in names:
            if n not in self.edges:
                raise DiagramError(f"unknown edge {n}")
        edges = [self.edges[n] for n in names]
        for outer, inner in zip(edges, edges[1:]):
            if inner.dst != outer.src:
                raise DiagramError(
                    f"path {' '.join(names)} does not compose at {inner.name} -> {outer.name}")
        return compose(*(e.morphism for e in edges))


@dataclass(frozen=True)
class ClaimResult:
    path_a: tuple
    path_b: tuple
    verdict: Verdict

    @property
    def label(self):
        return f"{' '.join(self.path_a)} ; {' '.join(self.path_b)}"

    def record(self):
        rec = {
            "claim": self.label,
            "verdict": str(self.verdict),
            "trace_length": sum(len(t) for t in self.verdict.traces),
        }
        if self.verdict.counterexample is not None:
            rec["counterexample"] = str(self.verdict.counterexample)
        return rec


@dataclass(frozen=True)
class DiagramReport:
    results: tuple

    @property
    def commutes(self):
        return all(r.verdict.equal for r in self.results)

    def verdicts(self):
        return tuple(r.verdict.outcome for r in self.results)


def check_diagram(d, semantics=None):
    d.validate()
    results = []
    for a, b in d.claims:
        v = equal(d.path(a), d.path(b), semantics)
        results.append(ClaimResult(a, b, v))
    return DiagramReport(tuple(results))


__all__ = [
    "RULES", "Step", "RewriteTrace", "normalize", "normal_form", "Outcome", "Verdict",
    "equal", "equal_exhaustive", "Edge", "Diagram", "ClaimResult", "DiagramReport", "check_diagram",
]
