"""Randomized soundness battery for the rewrite laws over a finite semantics.

Every law instance is checked twice: syntactically, by comparing normal
forms, and element-wise, by evaluating both sides on every inhabitant of
the domain.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field

from .core import (
    TERMINAL, Bang, Base, Compose, Curry, EvalMap, Exp, Fst, Pair, Prod, Snd, infer_type,
)
from .generate import MorphismGenerator
from .laws import normal_form
from .machine import PairV, apply_mor, enumerate_domain, values_equal

LAWS = ("prod-beta1", "prod-beta2", "prod-eta", "curry-corr", "curry-corr-k", "curry-pointwise",
        "terminal", "normalize-sound")


@dataclass(frozen=True)
class LawFailure:
    law: str
    detail: str
    witness: object = None

    def record(self):
        rec = {"law": self.law, "detail": self.detail}
        if self.witness is not None:
            rec["witness"] = str(self.witness)
        return rec


@dataclass
class BatteryReport:
    checked: dict = field(default_factory=lambda: dict.fromkeys(LAWS, 0))
    failures: list = field(default_factory=list)

    @property
    def passed(self):
        return not self.failures

    def records(self):
        for law in LAWS:
            bad = [f for f in self.failures if f.law == law]
            yield {"law": law, "checked": self.checked[law], "failures": len(bad)}


def pool_for(s, limit=3):
    """Generation pool over the pointed base domains of ``s``."""
    bases = [Base(n) for n in s.domains if any(d == n for d in s.points.values())][:limit]
    if not bases:
        raise ValueError("semantics declares no points; nothing to generate from")
    a, b = bases[0], bases[-1]
    mid = bases[1] if len(bases) > 2 else b
    pool = list(dict.fromkeys(bases + [Prod(a, b), Prod(mid, b), Prod(Prod(a, mid), b)]))
    if len(bases) > 1:
        pool.append(Exp(bases[1], b))
    pool.append(Exp(b, b))
    return pool


def pointwise_diff(a, b, s):
    """First input on which ``a`` and ``b`` disagree, or None."""
    dom, cod = infer_type(a)
    for v in enumerate_domain(dom, s):
        if not values_equal(apply_mor(a, v, s), apply_mor(b, v, s), cod, s):
            return v
    return None


class _Run:
    def __init__(self, s, report):
        self.s = s
        self.report = report

    def law(self, name, lhs, rhs, symbolic=True):
        self.report.checked[name] += 1
        if symbolic and normal_form(lhs) != normal_form(rhs):
            self.report.failures.append(LawFailure(
                name, f"normal forms differ: {normal_form(lhs)} vs {normal_form(rhs)}"))
            return
        w = pointwise_diff(lhs, rhs, self.s)
        if w is not None:
            self.report.failures.append(LawFailure(name, f"{lhs} vs {rhs}", w))


def run_battery(s, pairs=500, seed=0, depth=4):
    """Check every law family on ``pairs`` generated instances each."""
    rng = random.Random(seed)
    pool = pool_for(s)
    gen = MorphismGenerator(s, pool, rng)
    report = BatteryReport()
    run = _Run(s, report)
    plain = [d for d in pool if not isinstance(d, Exp)]
    for _ in range(pairs):
        d, a, b = rng.choice(pool), rng.choice(pool), rng.choice(pool)
        f = gen.morphism(d, a, depth)
        g = gen.morphism(d, b, depth)
        p = Pair(f, g)
        run.law("prod-beta1", Compose(Fst(a, b), p), f)
        run.law("prod-beta2", Compose(Snd(a, b), p), g)
        h = gen.morphism(d, Prod(a, b), depth)
        run.law("prod-eta", Pair(Compose(Fst(a, b), h), Compose(Snd(a, b), h)), h)

        env, x, y = rng.choice(plain), rng.choice(plain), rng.choice(plain)
        gm = gen.morphism(Prod(env, x), y, depth)
        corr = Compose(EvalMap(x, y), Pair(Compose(Curry(gm), Fst(env, x)), Snd(env, x)))
        run.law("curry-corr", corr, gm)
        k = gen.morphism(env, Exp(x, y), depth)
        run.law("curry-corr-k",
                Curry(Compose(EvalMap(x, y), Pair(Compose(k, Fst(env, x)), Snd(env, x)))), k)
        _pointwise_curry(s, gm, env, x, report)

        t = gen.morphism(d, TERMINAL, depth)
        report.checked["terminal"] += 1
        if normal_form(t) != Bang(d):
            report.failures.append(LawFailure("terminal", f"{t} normalizes to {normal_form(t)}"))

        m = gen.morphism(d, a, depth)
        _normalize_sound(s, m, run)
    return report


def _pointwise_curry(s, g, env, x, report):
    report.checked["curry-pointwise"] += 1
    ghat = Curry(g)
    ev = EvalMap(x, infer_type(g)[1])
    for i in enumerate_domain(env, s):
        closure = apply_mor(ghat, i, s)
        for v in enumerate_domain(x, s):
            if apply_mor(ev, PairV(closure, v), s) != apply_mor(g, PairV(i, v), s):
                report.failures.append(LawFailure("curry-pointwise", str(g), PairV(i, v)))
                return


def _normalize_sound(s, m, run):
    normal = normal_form(m)
    if infer_type(normal) != infer_type(m):
        run.report.checked["normalize-sound"] += 1
        run.report.failures.append(LawFailure("normalize-sound", f"type changed for {m}"))
        return
    run.law("normalize-sound", m, normal, symbolic=False)
