"""Random well-typed morphisms and lambda terms for law and compiler checks.

Generation is type directed: the caller fixes the domain and codomain
(or the context and result type) and a depth budget.  When the budget
runs out a structural fallback is used, so every request over domains
whose base types carry a declared point succeeds.
"""
from __future__ import annotations

import random

from .core import (
    TERMINAL, Bang, Base, Compose, Curry, EvalMap, Exp, Fst, Id, Pair, Point, Prim, Prod,
    Snd, Terminal,
)
from .lam import App, ConstAtom, ConstFun, Context, Lam, Var


class MorphismGenerator:
    def __init__(self, semantics, pool, rng=None, unknown_prims=False):
        self.s = semantics
        self.pool = list(pool)
        self.rng = rng or random.Random(0)
        self.unknown_prims = unknown_prims
        self._points = {}
        for atom, dname in semantics.points.items():
            self._points.setdefault(dname, []).append(atom)

    def _point_for(self, d):
        if isinstance(d, Base):
            atoms = self._points.get(d.name)
            if atoms:
                return Point(self.rng.choice(atoms), d)
        return None

    def _projections(self, dom, cod, limit=4):
        """Projection paths out of ``dom`` reaching ``cod``."""
        found = []

        def walk(d, path, n):
            if d == cod:
                found.append(path)
            if n == 0 or not isinstance(d, Prod):
                return
            walk(d.left, [Fst(d.left, d.right)] + path, n - 1)
            walk(d.right, [Snd(d.left, d.right)] + path, n - 1)

        walk(dom, [], limit)
        return [p for p in found if p]

    def minimal(self, dom, cod):
        """Smallest construction by the shape of ``cod``."""
        paths = self._projections(dom, cod)
        if paths:
            return _chain(self.rng.choice(paths))
        match cod:
            case Terminal():
                return Bang(dom)
            case Prod(l, r):
                return Pair(self.minimal(dom, l), self.minimal(dom, r))
            case Exp(a, r):
                return Curry(self.minimal(Prod(dom, a), r))
            case Base():
                p = self._point_for(cod)
                if p is not None:
                    return Compose(p, Bang(dom))
        if dom == cod:
            return Id(dom)
        raise ValueError(f"cannot build a morphism {dom} -> {cod}")

    def morphism(self, dom, cod, depth=4):
        if depth <= 1:
            return self.minimal(dom, cod)
        rng = self.rng
        options = ["minimal"]
        if dom == cod:
            options.append("id")
        if cod == TERMINAL:
            options.append("bang")
        if isinstance(cod, Prod):
            options += ["pair"] * 3
        if isinstance(cod, Exp):
            options += ["curry"] * 3
        if isinstance(dom, Prod):
            options += ["fst", "snd"]
        if self._point_for(cod) is not None:
            options.append("point")
        options += ["compose", "eval"]
        if self._prims_into(cod):
            options += ["prim"] * 2
        if self.unknown_prims:
            options.append("unknown")
        choice = rng.choice(options)
        d = depth - 1
        if choice == "id":
            return Id(dom)
        if choice == "bang":
            return Bang(dom)
        if choice == "pair":
            return Pair(self.morphism(dom, cod.left, d), self.morphism(dom, cod.right, d))
        if choice == "curry":
            return Curry(self.morphism(Prod(dom, cod.arg), cod.result, d))
        if choice == "fst":
            return Compose(self.morphism(dom.left, cod, d), Fst(dom.left, dom.right))
        if choice == "snd":
            return Compose(self.morphism(dom.right, cod, d), Snd(dom.left, dom.right))
        if choice == "point":
            return Compose(self._point_for(cod), Bang(dom))
        if choice == "compose":
            mid = rng.choice(self.pool)
            return Compose(self.morphism(mid, cod, d), self.morphism(dom, mid, d))
        if choice == "eval":
            a = rng.choice([x for x in self.pool if not isinstance(x, Exp)])
            return Compose(EvalMap(a, cod),
                           Pair(self.morphism(dom, Exp(a, cod), d), self.morphism(dom, a, d)))
        if choice == "prim":
            p = rng.choice(self._prims_into(cod))
            return Compose(Prim(p.name, p.dom, p.cod), self.morphism(dom, p.dom, d))
        if choice == "unknown":
            return Prim(f"u{rng.randrange(3)}", dom, cod)
        return self.minimal(dom, cod)

    def _prims_into(self, cod):
        return [p for p in self.s.primitives.values() if p.cod == cod]

    def parallel_pair(self, depth=4):
        dom = self.rng.choice(self.pool)
        cod = self.rng.choice(self.pool)
        return self.morphism(dom, cod, depth), self.morphism(dom, cod, depth)


def _chain(path):
    m = path[-1]
    for p in reversed(path[:-1]):
        m = Compose(p, m)
    return m


def default_pool():
    E, Dx, Dy = Base("E"), Base("Dx"), Base("Dy")
    return [E, Dx, Dy, Prod(E, Dx), Prod(Dx, Dy), Prod(Prod(E, Dy), Dx), Exp(Dx, Dy),
            Exp(Dx, Dx)]


class TermGenerator:
    """Well-typed lambda terms, every binder annotated."""

    def __init__(self, semantics, types, rng=None):
        self.s = semantics
        self.types = list(types)
        self.rng = rng or random.Random(0)
        self._fresh = 0

    def context(self, max_vars=3, rest=Base("E")):
        n = self.rng.randint(0, max_vars)
        names = ["x", "y", "z"][:n]
        return Context(tuple((nm, self.rng.choice(self.types)) for nm in names), rest)

    def fresh(self):
        self._fresh += 1
        return f"v{self._fresh}"

    def term(self, ctx, ty, depth=5):
        rng = self.rng
        vars_ = [n for n, d in self._visible(ctx) if d == ty]
        atoms = [a for a, dn in self.s.points.items() if Base(dn) == ty]
        funs = [p for p in self.s.primitives.values() if Exp(p.dom, p.cod) == ty]
        apps = [p for p in self.s.primitives.values() if p.cod == ty]
        leaf = []
        if vars_:
            leaf.append(lambda: Var(rng.choice(vars_)))
        if atoms:
            leaf.append(lambda: ConstAtom(rng.choice(atoms)))
        if funs:
            leaf.append(lambda: ConstFun(rng.choice(funs).name))
        if depth <= 1 or (leaf and rng.random() < 0.25):
            if leaf:
                return rng.choice(leaf)()
            if isinstance(ty, Exp):
                return self._lam(ctx, ty, 1)
            raise ValueError(f"no leaf of type {ty}")
        options = list(leaf)
        if isinstance(ty, Exp):
            options += [lambda: self._lam(ctx, ty, depth)] * 2
        if apps:
            def prim_app():
                p = rng.choice(apps)
                return App(ConstFun(p.name), self.term(ctx, p.dom, depth - 1))
            options.append(prim_app)

        def general_app():
            a = rng.choice([t for t in self.types if not isinstance(t, Exp)])
            return App(self.term(ctx, Exp(a, ty), depth - 1), self.term(ctx, a, depth - 1))
        options.append(general_app)
        return rng.choice(options)()

    def _lam(self, ctx, ty, depth):
        name = self.fresh() if self.rng.random() < 0.7 else self.rng.choice(["x", "y", "z"])
        inner = ctx.extend(name, ty.arg)
        return Lam(name, self.term(inner, ty.result, depth - 1), ty.arg)

    @staticmethod
    def _visible(ctx):
        seen = {}
        for n, d in ctx.entries:
            seen[n] = d
        return list(seen.items())


def default_term_types():
    Dx, Dy = Base("Dx"), Base("Dy")
    return [Dx, Dy, Exp(Dx, Dx), Exp(Dx, Dy)]
