import pytest
from hypothesis import given

from catmachine.core import (
    TERMINAL, Base, Compose, Curry, EvalMap, Exp, Fst, Id, Pair, Point, Prim, Prod, Snd, singleton,
)
from catmachine.errors import ParseError
from catmachine.syntax import parse_dom, parse_mor, parse_raw_value

from strategies import domains, morphisms

A, B, E = Base("A"), Base("B"), Base("E")


def test_domain_precedence():
    assert parse_dom("A x B -> A") == Exp(Prod(A, B), A)
    assert parse_dom("A -> B -> A") == Exp(A, Exp(B, A))
    assert parse_dom("A x B x E") == Prod(Prod(A, B), E)
    assert parse_dom("A x (B x E)") == Prod(A, Prod(B, E))
    assert parse_dom("A × B") == Prod(A, B)
    assert parse_dom("O") == TERMINAL
    assert parse_dom("{a}") == singleton("a")


def test_morphism_constructors():
    assert parse_mor("id[A]") == Id(A)
    assert parse_mor("point(c, A)") == Point("c", A)
    assert parse_mor("prim(f, E, A)") == Prim("f", E, A)
    assert parse_mor("eps[A, B]") == EvalMap(A, B)
    assert parse_mor("curry(snd[E, A])") == Curry(Snd(E, A))
    assert parse_mor("<fst[A, B], snd[A, B]>") == Pair(Fst(A, B), Snd(A, B))


def test_composition_is_right_operand_first():
    m = parse_mor("fst[A,B] . <prim(f,E,A), prim(g,E,B)>")
    assert m == Compose(Fst(A, B), Pair(Prim("f", E, A), Prim("g", E, B)))
    assert parse_mor("id[A] . id[A] . id[A]") == Compose(Id(A), Compose(Id(A), Id(A)))


def test_functor_product_desugars():
    m = parse_mor("fst[E, B] * id[A]")
    assert m == Pair(Compose(Fst(E, B), Fst(Prod(E, B), A)), Snd(Prod(E, B), A))


def test_functor_product_binds_tighter_than_composition():
    m = parse_mor("eps[A, A] . curry(snd[E x A, A]) * id[A]")
    assert isinstance(m, Compose) and isinstance(m.inner, Pair)


@pytest.mark.parametrize("text,col", [
    ("fst[A,", 7),
    ("fst[A B]", 7),
    ("frob[A]", 1),
    ("<id[A], id[A]", 14),
])
def test_errors_carry_positions(text, col):
    with pytest.raises(ParseError) as info:
        parse_mor(text)
    assert info.value.line == 1
    assert info.value.col == col


def test_error_line_numbers():
    with pytest.raises(ParseError) as info:
        parse_mor("id[A]\n . ?")
    assert (info.value.line, info.value.col) == (2, 4)


def test_raw_values():
    assert parse_raw_value("[[e1, p], q]") == ("pair", ("pair", "e1", "p"), "q")
    assert parse_raw_value("()") == ("unit",)
    assert parse_raw_value("{p |-> q, q |-> p}") == ("table", [("p", "q"), ("q", "p")])


@given(domains)
def test_domain_round_trip(d):
    assert parse_dom(str(d)) == d


@given(morphisms(depth=5, unknown=True))
def test_morphism_round_trip(m):
    assert parse_mor(str(m)) == m
