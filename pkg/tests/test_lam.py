import random

import pytest
from hypothesis import given, settings, strategies as st

from catmachine.core import Base, Compose, Curry, EvalMap, Exp, Fst, Pair, Prod, Snd, infer_type
from catmachine.errors import MorphismTypeError, ParseError, ScopeError
from catmachine.generate import TermGenerator, default_term_types
from catmachine.lam import (
    App, ConstAtom, ConstFun, Context, Lam, Var, bindings, compile_term, oracle_apply,
    oracle_canonical, oracle_eval, parse, parse_context, parse_term_file, show_term,
)
from catmachine.machine import AtomV, PairV, apply_mor, canonical, enumerate_domain

from strategies import SEM

E, DX, DY = Base("E"), Base("Dx"), Base("Dy")
CTX = Context((("y", DY), ("x", DX)))


def test_parse_examples():
    assert parse("$f x") == App(ConstFun("f"), Var("x"))
    assert parse("\\x. x") == Lam("x", Var("x"))
    assert parse("\\x. $f x") == Lam("x", App(ConstFun("f"), Var("x")))
    assert parse("λx:Dx. #p") == Lam("x", ConstAtom("p"), DX)
    assert parse("f x y") == App(App(Var("f"), Var("x")), Var("y"))
    assert parse("f \\z. z") == App(Var("f"), Lam("z", Var("z")))


def test_parse_errors():
    with pytest.raises(ParseError) as info:
        parse("\\x x")
    assert info.value.col == 4
    with pytest.raises(ParseError):
        parse("(x")


@settings(max_examples=100)
@given(st.integers(0, 2 ** 32 - 1))
def test_show_round_trip(seed):
    gen = TermGenerator(SEM, default_term_types(), random.Random(seed))
    ctx = gen.context(3)
    t = gen.term(ctx, gen.rng.choice(gen.types), 5)
    assert parse(show_term(t)) == t


def test_context_shape_and_index():
    assert CTX.shape() == Prod(Prod(E, DY), DX)
    assert CTX.index("x") == 0 and CTX.index("y") == 1
    with pytest.raises(ScopeError):
        CTX.index("z")
    with pytest.raises(ScopeError):
        Context((("x", DX), ("x", DY)))
    shadow = CTX.extend("y", DX)
    assert shadow.index("y") == 0


def test_parse_context_and_file():
    assert parse_context("E, y:Dy, x:Dx") == (E, (("y", DY), ("x", DX)))
    ctx, t = parse_term_file("-- comment\nctx: E, x:Dx\nbinders: z:Dx\n\\z. z x -- tail\n")
    assert ctx.shape() == Prod(E, DX)
    assert ctx.binder_dom("z") == DX
    assert t == Lam("z", App(Var("z"), Var("x")))
    with pytest.raises(ParseError) as info:
        parse_term_file("ctx: E, x:Dx\n\n  x )")
    assert (info.value.line, info.value.col) == (3, 5)
    with pytest.raises(ParseError):
        parse_term_file("x")


def test_compile_variables():
    shape = CTX.shape()
    # "g = Snd" and "Snd o Fst : Env_New -> D_y"
    assert compile_term(Var("x"), CTX, SEM) == Snd(shape.left, DX)
    assert compile_term(Var("y"), CTX, SEM) == Compose(Snd(E, DY), Fst(shape.left, DX))


def test_compile_identity_abstraction():
    m = compile_term(Lam("x", Var("x"), DX), Context((), E), SEM)
    assert m == Curry(Snd(E, DX))
    for e in enumerate_domain(E, SEM):
        c = apply_mor(m, e, SEM)
        assert canonical(c, Exp(DX, DX), SEM) == canonical(SEM.prim_value("idx"), Exp(DX, DX), SEM)


def test_compile_application_of_function_constant():
    m = compile_term(App(ConstFun("rot"), Var("x")), CTX, SEM)
    assert isinstance(m, Compose) and m.outer == EvalMap(DX, DX)
    assert isinstance(m.inner, Pair)
    rot = {"p": "q", "q": "r", "r": "p"}
    for i in enumerate_domain(CTX.shape(), SEM):
        assert apply_mor(m, i, SEM).name == rot[i.right.name]


def test_compile_binder_domain_from_context():
    ctx = Context((), E, (("z", DX),))
    assert infer_type(compile_term(Lam("z", Var("z")), ctx, SEM)) == (E, Exp(DX, DX))
    with pytest.raises(ScopeError):
        compile_term(Lam("w", Var("w")), ctx, SEM)


def test_compile_type_errors():
    with pytest.raises(MorphismTypeError):
        compile_term(App(Var("x"), Var("x")), CTX, SEM)
    with pytest.raises(MorphismTypeError):
        compile_term(App(ConstFun("rot"), Var("y")), CTX, SEM)
    with pytest.raises(ScopeError):
        compile_term(Var("nope"), CTX, SEM)


def test_oracle_examples():
    d = AtomV("q", "Dx")
    assert oracle_eval(Var("x"), {"x": d}, SEM) == d
    assert oracle_eval(App(ConstFun("rot"), Var("x")), {"x": d}, SEM).name == "r"
    closure = oracle_eval(Lam("x", Var("x")), {}, SEM)
    assert oracle_apply(closure, d, SEM) == d
    assert oracle_eval(ConstAtom("u"), {}, SEM) == AtomV("u", "Dy")
    with pytest.raises(ScopeError):
        oracle_eval(Var("x"), {}, SEM)


def test_bindings_read_environment():
    i = PairV(PairV(AtomV("e1", "E"), AtomV("u", "Dy")), AtomV("p", "Dx"))
    assert bindings(CTX, i) == {"x": i.right, "y": i.left.right}
    shadow = Context((("x", DY), ("y", DX)))
    assert bindings(shadow.extend("x", DX), PairV(i, AtomV("q", "Dx")))["x"].name == "q"


def test_shadowed_variable_compiles_to_innermost():
    t = Lam("x", Var("x"), DY)
    m = compile_term(t, CTX, SEM)
    for i in enumerate_domain(CTX.shape(), SEM):
        c = apply_mor(m, i, SEM)
        assert canonical(c, Exp(DY, DY), SEM) == oracle_canonical(
            oracle_eval(t, bindings(CTX, i), SEM), Exp(DY, DY), SEM)


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 2 ** 32 - 1))
def test_compiler_agrees_with_oracle(seed):
    gen = TermGenerator(SEM, default_term_types(), random.Random(seed))
    ctx = gen.context(2)
    ty = gen.rng.choice(gen.types)
    t = gen.term(ctx, ty, 4)
    m = compile_term(t, ctx, SEM)
    assert infer_type(m) == (ctx.shape(), ty)
    for i in enumerate_domain(ctx.shape(), SEM):
        got = canonical(apply_mor(m, i, SEM), ty, SEM)
        want = oracle_canonical(oracle_eval(t, bindings(ctx, i), SEM), ty, SEM)
        assert got == want
