import pytest
from hypothesis import given, strategies as st

from catmachine.core import (
    TERMINAL, Bang, Base, Compose, Curry, EvalMap, Exp, Fst, Id, Pair, Point, Prim, Prod, Snd,
    access_path, chain, component, compose, desugar_functor_product, env_shape, infer_type,
    singleton, singleton_atom,
)
from catmachine.errors import MorphismTypeError
from catmachine.laws import Outcome, equal

from strategies import domains, morphisms

E, DX, DY = Base("E"), Base("Dx"), Base("Dy")
ENV = Prod(Prod(E, DY), DX)


def test_projection_types():
    # "Fst : D_y x D_x -> D_y"
    assert infer_type(Fst(DY, DX)) == (Prod(DY, DX), DY)
    assert infer_type(Snd(DY, DX)) == (Prod(DY, DX), DX)


def test_pairing_rule():
    f = Prim("f", ENV, DY)
    g = Prim("g", ENV, DX)
    assert infer_type(Pair(f, g)) == (ENV, Prod(DY, DX))


def test_identity_composition():
    assert infer_type(Compose(Fst(DY, DX), Id(Prod(DY, DX)))) == (Prod(DY, DX), DY)


def test_composition_mismatch_carries_types():
    with pytest.raises(MorphismTypeError) as info:
        infer_type(Compose(Fst(DY, DX), Snd(DY, DX)))
    err = info.value
    assert isinstance(err, TypeError)
    assert err.expected == Prod(DY, DX)
    assert err.actual == DX


def test_pair_domain_mismatch():
    with pytest.raises(MorphismTypeError):
        infer_type(Pair(Id(DX), Id(DY)))


def test_curry_needs_product():
    with pytest.raises(MorphismTypeError):
        infer_type(Curry(Id(DX)))
    assert infer_type(Curry(Snd(E, DX))) == (E, Exp(DX, DX))


def test_constants_and_terminal():
    assert infer_type(EvalMap(DX, DY)) == (Prod(Exp(DX, DY), DX), DY)
    assert infer_type(Bang(ENV)) == (ENV, TERMINAL)
    assert infer_type(Point("p", DX)) == (TERMINAL, DX)


def test_products_are_not_associative():
    assert Prod(E, Prod(DY, DX)) != Prod(Prod(E, DY), DX)


def test_access_paths():
    # "Access to D_x.New": Snd; "Access to D_y": Snd . Fst
    p0 = access_path(ENV, 0)
    assert p0 == Snd(Prod(E, DY), DX)
    assert infer_type(p0)[1] == DX
    p1 = access_path(ENV, 1)
    assert p1 == Compose(Snd(E, DY), Fst(Prod(E, DY), DX))
    assert infer_type(p1)[1] == DY
    with pytest.raises(IndexError):
        access_path(Prod(E, DX), 5)


@given(st.lists(st.sampled_from([E, DX, DY]), min_size=1, max_size=5), st.data())
def test_access_path_selects_component(doms, data):
    shape = env_shape(E, *doms)
    k = data.draw(st.integers(0, len(doms) - 1))
    m = access_path(shape, k)
    assert infer_type(m) == (shape, component(shape, k))
    assert component(shape, k) == doms[-1 - k]


def test_functor_product_subst():
    # "Subst_x = <Fst . Fst, Snd>" as (Fst x id)
    m = desugar_functor_product(Fst(E, DY), Id(DX))
    assert m == Pair(Compose(Fst(E, DY), Fst(Prod(E, DY), DX)), Snd(Prod(E, DY), DX))


def test_functor_product_of_curry():
    g = Prim("g", Prod(ENV, DX), DX)
    m = desugar_functor_product(Curry(g), Id(DX))
    assert m == Pair(Compose(Curry(g), Fst(ENV, DX)), Snd(ENV, DX))


def test_functor_product_of_identities():
    m = desugar_functor_product(Id(DX), Id(DY))
    assert equal(m, Id(Prod(DX, DY))).outcome is Outcome.EQUAL


@given(morphisms(), morphisms())
def test_functor_product_typing(f, g):
    a, c = infer_type(f)
    b, d = infer_type(g)
    assert infer_type(desugar_functor_product(f, g)) == (Prod(a, b), Prod(c, d))


@given(morphisms())
def test_typing_is_deterministic(m):
    infer_type.cache_clear()
    first = infer_type(m)
    infer_type.cache_clear()
    assert infer_type(m) == first


@given(morphisms(), morphisms())
def test_projection_of_pair(f, g):
    if infer_type(f)[0] != infer_type(g)[0]:
        return
    a, b = infer_type(f)[1], infer_type(g)[1]
    assert infer_type(Compose(Fst(a, b), Pair(f, g)))[1] == a
    assert infer_type(Compose(Snd(a, b), Pair(f, g)))[1] == b


@given(domains)
def test_domain_equality_is_structural(d):
    assert d == eval(repr(d), {"Base": Base, "Prod": Prod, "Exp": Exp, "Terminal": type(TERMINAL)})


def test_compose_and_chain():
    fs = [Fst(E, DX), Pair(Snd(DX, E), Fst(DX, E))]
    m = compose(*fs)
    assert chain(m) == fs
    assert infer_type(m) == (Prod(DX, E), E)


def test_singletons():
    one = singleton("a")
    assert singleton_atom(one) == "a"
    assert singleton_atom(DX) is None
