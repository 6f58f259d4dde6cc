"""Executable encodings of the figures, the citation lemma and theorem.

Each case is either a :class:`~catmachine.laws.Diagram` whose claims carry
their expected verdicts, or a :class:`PropertyCheck` that walks every
element of the relevant finite domains.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from .core import (
    Base, Compose, Curry, EvalMap, Exp, Fst, Id, Pair, Prim, Prod, Snd,
    desugar_functor_product, singleton,
)
from .errors import UnknownCase
from .laws import Diagram, Outcome, check_diagram, equal, equal_exhaustive
from .machine import (
    AtomV, PairV, PrimV, apply_mor, canonical, citation_const, citation_fun, encapsulate,
    enumerate_domain, subst_morphism, update_env, values_equal,
)

EQ, NE, UND = Outcome.EQUAL, Outcome.NOT_EQUAL, Outcome.UNDECIDED


@dataclass(frozen=True)
class Probe:
    label: str
    outcome: Outcome
    expected: Outcome = EQ
    counterexample: object = None


@dataclass
class PropertyCheck:
    label: str
    run: Callable[[], list]


@dataclass(frozen=True)
class PaperCase:
    id: str
    paper_location: str
    build: Callable


@dataclass(frozen=True)
class CaseResult:
    id: str
    paper_location: str
    probes: tuple
    error: str = ""

    @property
    def verdict(self):
        if self.error:
            return "Error"
        return ",".join(str(p.outcome) for p in self.probes)

    @property
    def expected(self):
        return ",".join(str(p.expected) for p in self.probes)

    @property
    def passed(self):
        return not self.error and all(p.outcome is p.expected for p in self.probes)

    @property
    def counterexample(self):
        for p in self.probes:
            if p.counterexample is not None and p.outcome is not p.expected:
                return p.counterexample
        return None

    def record(self):
        rec = {
            "id": self.id,
            "paper_location": self.paper_location,
            "verdict": self.verdict,
            "expected": self.expected,
            "pass": self.passed,
        }
        if self.counterexample is not None:
            rec["counterexample"] = str(self.counterexample)
        if self.error:
            rec["error"] = self.error
        return rec


@dataclass(frozen=True)
class SuiteReport:
    results: tuple

    @property
    def passed(self):
        return all(r.passed for r in self.results)

    def by_id(self):
        return {r.id: r for r in self.results}


# -- helpers ------------------------------------------------------------------

@dataclass(frozen=True)
class Frame:
    """Domains the cases are built over, picked from the semantics."""
    E: object
    Dx: object
    Dy: object
    prims: tuple
    constants: tuple = ()

    @property
    def env(self):
        return Prod(Prod(self.E, self.Dy), self.Dx)

    def prim_env(self, p):
        return Prod(Prod(self.E, Exp(p.dom, p.cod)), p.dom)


def frame(s):
    names = list(s.domains)
    E = Base("E") if "E" in s.domains else Base(names[0])
    prims = tuple(sorted(s.primitives.values(), key=lambda p: p.name))
    if "Dx" in s.domains:
        Dx = Base("Dx")
    elif prims:
        Dx = prims[0].dom
    else:
        Dx = Base(names[-1])
    Dy = Base("Dy") if "Dy" in s.domains else Dx
    return Frame(E, Dx, Dy, prims, tuple(s.points))


def _fresh_prim(s, base):
    name = base
    while name in s.primitives:
        name += "_"
    return name


def _forall(label, elements, predicate):
    """Probe that ``predicate`` holds on every element; the first failure is the witness."""
    for x in elements:
        if not predicate(x):
            return Probe(label, NE, EQ, x)
    return Probe(label, EQ)


def _identity_table(d, s):
    return PrimV("", d, d, tuple((x, x) for x in enumerate_domain(d, s)))


def _claim_probe(label, verdict, expected=EQ):
    return Probe(label, verdict.outcome, expected, verdict.counterexample)


def _variable_diagram(env, dx, g, subst):
    """Square and triangle shared by the substitution figures.

    ``g : env x dx -> dx`` is the map to solve for, ``subst`` the update
    ``env x dx -> env``.
    """
    ghat = Curry(g)
    fn = Exp(dx, dx)
    dg = Diagram()
    dg.add_edge("subst", subst, Prod(env, dx), env)
    dg.add_edge("ghat", ghat)
    dg.add_edge("ghat_x_id", desugar_functor_product(ghat, Id(dx)))
    dg.add_edge("fst", Fst(fn, dx))
    dg.add_edge("eps", EvalMap(dx, dx))
    dg.add_edge("g", g)
    return dg


# -- figures ------------------------------------------------------------------

def _fig1(s, **_):
    f = frame(s)
    a = f.constants[0] if f.constants else next(iter(s.domains.values()))[0]
    one = singleton(a)
    env = Prod(f.E, one)
    shape = Prod(env, one)
    enc = encapsulate(a, shape)
    g = Compose(Id(one), Snd(env, one))
    ghat = Curry(g)
    leg = Compose(Fst(Exp(one, one), one), desugar_functor_product(ghat, Id(one)))
    atom = AtomV(a, one.name)
    ident = _identity_table(one, s)

    def run():
        insts = enumerate_domain(env, s)
        return [
            _forall("encapsulation captures a", insts,
                    lambda i: apply_mor(enc, PairV(i, atom), s) == update_env(i, atom) == i),
            _forall("closure is the identity 1_{a}", insts,
                    lambda i: canonical(apply_mor(ghat, apply_mor(enc, PairV(i, atom), s), s),
                                        Exp(one, one), s) == ident),
            _forall("eps [1_{a}, a] = a", [ident],
                    lambda c: apply_mor(EvalMap(one, one), PairV(c, atom), s) == atom),
            _forall("g [i, a] = a", insts,
                    lambda i: apply_mor(g, PairV(i, atom), s) == atom),
            _forall("fst leg yields the closure", insts,
                    lambda i: values_equal(apply_mor(leg, PairV(i, atom), s),
                                           apply_mor(ghat, apply_mor(enc, PairV(i, atom), s), s),
                                           Exp(one, one), s)),
        ]

    return PropertyCheck("fig1", run)


def _fig2(s, **_):
    f = frame(s)
    a = f.constants[0] if f.constants else next(iter(s.domains.values()))[0]
    one = singleton(a)
    env = Prod(f.E, one)
    shape = Prod(env, one)
    dg = _variable_diagram(env, one, Compose(Id(one), Snd(env, one)), encapsulate(a, shape))
    dg.claim("eps ghat_x_id", "g")
    dg.claim("fst ghat_x_id", "ghat subst")
    return dg


def _fig3(s, subst=None, rest=None, **_):
    f = frame(s)
    env = Prod(rest or f.E, f.Dx)
    g = Prim(_fresh_prim(s, "g"), Prod(env, f.Dx), f.Dx)
    dg = _variable_diagram(env, f.Dx, g, subst or subst_morphism(Prod(env, f.Dx)))
    dg.add_edge("fst_x_id", desugar_functor_product(Fst(env.left, env.right), Id(f.Dx)))
    dg.claim("eps ghat_x_id", "g")
    # commutes only once g is solved for
    dg.claim("ghat subst", "fst ghat_x_id", UND)
    dg.claim("subst", "fst_x_id")
    return dg


def _fig4(s, **_):
    f = frame(s)
    env = Prod(f.E, f.Dx)
    subst = desugar_functor_product(Fst(f.E, f.Dx), Id(f.Dx))
    dg = _variable_diagram(env, f.Dx, Snd(env, f.Dx), subst)
    dg.claim("eps ghat_x_id", "g")
    dg.claim("ghat subst", "fst ghat_x_id")
    return dg


def _fig5(s, **_):
    f = frame(s)
    env = f.env
    ey = env.left
    subst = desugar_functor_product(Fst(ey, f.Dx), Id(f.Dx))
    dg = _variable_diagram(env, f.Dx, Snd(env, f.Dx), subst)
    dg.add_edge("fst_pair", Fst(env, f.Dx))
    dg.add_edge("snd_pair", Snd(env, f.Dx))
    dg.add_edge("fst_env", Fst(ey, f.Dx))
    dg.add_edge("snd_env", Snd(ey, f.Dx))
    dg.add_edge("snd_y", Snd(ey.left, ey.right))
    dg.claim("eps ghat_x_id", "g")
    dg.claim("ghat subst", "fst ghat_x_id")
    dg.claim("fst_env subst", "fst_env fst_pair")
    dg.claim("snd_env subst", "snd_pair")
    dg.claim("snd_y fst_env subst", "snd_y fst_env fst_pair")
    return dg


def _theorem_diagram(p, gd, gf, abc_expected):
    a, b = p.dom, p.cod
    dg = Diagram()
    dg.add_edge("gd", gd)
    dg.add_edge("gf", gf)
    dg.add_edge("gdhat_x_id", desugar_functor_product(Curry(gd), Id(a)))
    dg.add_edge("gfhat_x_id", desugar_functor_product(Curry(gf), Id(a)))
    dg.add_edge("eps_d", EvalMap(a, a))
    dg.add_edge("eps_f", EvalMap(a, b))
    dg.add_edge("f", Prim(p.name, a, b))
    dg.claim("eps_d gdhat_x_id", "gd")
    dg.claim("eps_f gfhat_x_id", "gf")
    dg.claim("f eps_d gdhat_x_id", "eps_f gfhat_x_id", abc_expected)
    return dg


def _fig6(s, **_):
    f = frame(s)
    p = f.prims[0]
    env = f.prim_env(p)
    gd = Prim(_fresh_prim(s, "g_d"), Prod(env, p.dom), p.dom)
    gf = Prim(_fresh_prim(s, "g_f"), Prod(env, p.dom), p.cod)
    return _theorem_diagram(p, gd, gf, UND)


def _solutions(s, p):
    env = frame(s).prim_env(p)
    gd = Compose(Id(p.dom), Snd(env, p.dom))
    gf = Compose(Prim(p.name, p.dom, p.cod), Snd(env, p.dom))
    return gd, gf


def _fig7(s, **_):
    p = frame(s).prims[0]
    return _theorem_diagram(p, *_solutions(s, p), EQ)


# -- lemma and theorem --------------------------------------------------------

def _lemma1a(s, **_):
    f = frame(s)
    p = f.prims[0] if f.prims else None
    env = f.prim_env(p) if p else f.env

    def run():
        probes = []
        insts = enumerate_domain(env, s)
        for c in f.constants:
            one = singleton(c)
            cit = citation_const(c, env, s)
            body = Compose(Id(one), Snd(env, one))
            atom = AtomV(c, one.name)

            def chain_holds(i, cit=cit, body=body, atom=atom, one=one):
                closure = apply_mor(cit, i, s)
                via_eval = apply_mor(EvalMap(one, one), PairV(closure, atom), s)
                via_body = apply_mor(body, PairV(i, atom), s)
                return via_eval == via_body == atom

            probes.append(_forall(f"citation of constant {c}", insts, chain_holds))
        return probes

    return PropertyCheck("lemma1a", run)


def _lemma1b(s, **_):
    f = frame(s)

    def run():
        probes = []
        for p in f.prims:
            env = f.prim_env(p)
            cit = citation_fun(p.name, env, s)
            body = Compose(Prim(p.name, p.dom, p.cod), Snd(env, p.dom))
            table = s.prim_value(p.name)
            ev = EvalMap(p.dom, p.cod)
            cases = [(i, d) for i in enumerate_domain(env, s) for d in enumerate_domain(p.dom, s)]

            def chain_holds(c, cit=cit, body=body, table=table, ev=ev):
                i, d = c
                via_eval = apply_mor(ev, PairV(apply_mor(cit, i, s), d), s)
                via_body = apply_mor(body, PairV(i, d), s)
                return via_eval == via_body == table(d)

            probes.append(_forall(f"citation of function {p.name}", cases, chain_holds))
        return probes

    return PropertyCheck("lemma1b", run)


def theorem_composites(s, p):
    """Both sides of the function-citation equation with the solutions substituted."""
    gd, gf = _solutions(s, p)
    a, b = p.dom, p.cod
    left = Compose(Prim(p.name, a, b),
                   Compose(EvalMap(a, a), desugar_functor_product(Curry(gd), Id(a))))
    right = Compose(EvalMap(a, b), desugar_functor_product(Curry(gf), Id(a)))
    return left, right


def _thm1(s, **_):
    f = frame(s)

    def run():
        probes = []
        for p in f.prims:
            left, right = theorem_composites(s, p)
            sym = equal(left, right)
            exh = equal_exhaustive(left, right, s)
            probes.append(_claim_probe(f"{p.name}: symbolic", sym))
            probes.append(_claim_probe(f"{p.name}: exhaustive", exh))
            agree = sym.outcome is UND or sym.outcome is exh.outcome
            probes.append(Probe(f"{p.name}: routes agree", EQ if agree else NE))
            env = f.prim_env(p)
            table = s.prim_value(p.name)
            cases = [PairV(i, d) for i in enumerate_domain(env, s)
                     for d in enumerate_domain(p.dom, s)]
            probes.append(_forall(
                f"{p.name}: both sides give f(d)", cases,
                lambda c, left=left, right=right, table=table:
                    apply_mor(left, c, s) == apply_mor(right, c, s) == table(c.right)))
        return probes

    return PropertyCheck("thm1", run)


def _box_g_snd(s, **_):
    f = frame(s)
    env, dx = f.env, f.Dx
    snd = Snd(env, dx)
    ident = _identity_table(dx, s)

    def run():
        pairs = [PairV(i, d) for i in enumerate_domain(env, s) for d in enumerate_domain(dx, s)]
        sym = equal(Compose(EvalMap(dx, dx), desugar_functor_product(Curry(snd), Id(dx))), snd)
        return [
            _claim_probe("eps . (snd^ x id) = snd", sym),
            _forall("g [i, d] = d", pairs, lambda c: apply_mor(snd, c, s) == c.right),
            _forall("g^(i) = 1_Dx", enumerate_domain(env, s),
                    lambda i: canonical(apply_mor(Curry(snd), i, s), Exp(dx, dx), s) == ident),
        ]

    return PropertyCheck("box_g_snd", run)


def _box_subst(s, **_):
    f = frame(s)
    env, dx = f.env, f.Dx
    shape = Prod(env, dx)
    sub = subst_morphism(shape)

    def run():
        pairs = [(i, d) for i in enumerate_domain(env, s) for d in enumerate_domain(dx, s)]
        sym = equal(sub, desugar_functor_product(Fst(env.left, env.right), Id(dx)))
        return [
            _claim_probe("<fst . fst, snd> = fst x id", sym),
            _forall("[[e, x], d] |-> [e, d]", pairs,
                    lambda c: apply_mor(sub, PairV(*c), s) == PairV(c[0].left, c[1])),
            _forall("agrees with update", pairs,
                    lambda c: apply_mor(sub, PairV(*c), s) == update_env(c[0], c[1], env, s)),
        ]

    return PropertyCheck("box_subst", run)


def _corr_eq1(s, **_):
    f = frame(s)
    env = f.env
    g = Prim(_fresh_prim(s, "g"), Prod(env, f.Dx), f.Dy)

    def law(gm, dx, r):
        return Compose(EvalMap(dx, r), Pair(Compose(Curry(gm), Fst(env, dx)), Snd(env, dx)))

    def run():
        probes = [_claim_probe("symbolic, g uninterpreted", equal(law(g, f.Dx, f.Dy), g))]
        for p in f.prims:
            pe = f.prim_env(p)
            gm = Compose(Prim(p.name, p.dom, p.cod), Snd(pe, p.dom))
            lhs = Compose(EvalMap(p.dom, p.cod),
                          Pair(Compose(Curry(gm), Fst(pe, p.dom)), Snd(pe, p.dom)))
            probes.append(_claim_probe(f"exhaustive, g = {p.name} . snd",
                                       equal_exhaustive(lhs, gm, s)))
        return probes

    return PropertyCheck("corr_eq1", run)


def _corr_eq2(s, **_):
    f = frame(s)
    env = f.env
    k = Prim(_fresh_prim(s, "k"), env, Exp(f.Dx, f.Dy))

    def uncurried(km, e, a, r):
        return Curry(Compose(EvalMap(a, r), Pair(Compose(km, Fst(e, a)), Snd(e, a))))

    def run():
        probes = [_claim_probe("symbolic, k uninterpreted",
                               equal(uncurried(k, env, f.Dx, f.Dy), k))]
        for p in f.prims:
            pe = f.prim_env(p)
            km = citation_fun(p.name, pe, s)
            probes.append(_claim_probe(f"exhaustive, k = citation of {p.name}",
                                       equal_exhaustive(uncurried(km, pe, p.dom, p.cod), km, s)))
        return probes

    return PropertyCheck("corr_eq2", run)


CASES = (
    PaperCase("fig1", "Figure 1: encapsulation of a constant a", _fig1),
    PaperCase("fig2", "Figure 2: environment of encapsulation", _fig2),
    PaperCase("fig3", "Figure 3: substitution of a variable", _fig3),
    PaperCase("fig4", "Figure 4: pointers for a variable", _fig4),
    PaperCase("fig5", "Figure 5: partitioning an environment Env", _fig5),
    PaperCase("fig6", "Figure 6: evaluation of a constant function", _fig6),
    PaperCase("fig7", "Figure 7: pointers to access the environment with a constant function",
              _fig7),
    PaperCase("lemma1a", "Lemma 1 (citation), item (1): constants", _lemma1a),
    PaperCase("lemma1b", "Lemma 1 (citation), item (2): function constants", _lemma1b),
    PaperCase("thm1", "Theorem 1 (citation of the function), items (1) and (2)", _thm1),
    PaperCase("box_g_snd", "boxed solution g = Snd", _box_g_snd),
    PaperCase("box_subst", "boxed solution Subst_x = <Fst . Fst, Snd> (= Fst x id)", _box_subst),
    PaperCase("corr_eq1", "correspondence equation eps . <g^ . Fst, Snd> = g", _corr_eq1),
    PaperCase("corr_eq2", "correspondence equation for k, corrected form", _corr_eq2),
)

CASE_IDS = tuple(c.id for c in CASES)


def get_case(case_id):
    for c in CASES:
        if c.id == case_id:
            return c
    raise UnknownCase(case_id)


def build_case(case_id, s, **overrides):
    return get_case(case_id).build(s, **overrides)


def run_case(case_id, s, **overrides):
    case = get_case(case_id)
    try:
        built = case.build(s, **overrides)
        if isinstance(built, Diagram):
            report = check_diagram(built, s)
            probes = tuple(
                Probe(r.label, r.verdict.outcome, exp, r.verdict.counterexample)
                for r, exp in zip(report.results, built.expected))
        else:
            probes = tuple(built.run())
    except Exception as exc:  # failures are report entries
        return CaseResult(case.id, case.paper_location, (), f"{type(exc).__name__}: {exc}")
    return CaseResult(case.id, case.paper_location, probes)


def run_suite(s):
    return SuiteReport(tuple(run_case(c.id, s) for c in CASES))
