import pytest

from catmachine.core import Base, Exp, Prod, singleton
from catmachine.errors import ParseError, UnknownAtom
from catmachine.formats import (
    DEFAULT_SEMANTICS_TEXT, default_semantics, load_semantics, parse_diagram, parse_semantics,
    parse_value,
)
from catmachine.laws import Outcome, check_diagram
from catmachine.machine import AtomV, PairV, PrimV

DX, DY, E = Base("Dx"), Base("Dy"), Base("E")


def test_default_semantics_content():
    s = default_semantics()
    assert s.domains == {"E": ("e1", "e2"), "Dx": ("p", "q", "r"), "Dy": ("u", "v", "w")}
    assert sorted(s.primitives) == ["idx", "rot"]
    assert s.prim_value("rot")(AtomV("r", "Dx")) == AtomV("p", "Dx")
    assert s.points == {"e1": "E", "p": "Dx", "q": "Dx", "u": "Dy"}


def test_singleton_semantics():
    s = load_semantics("singleton")
    assert all(v == ("a",) for v in s.domains.values())


def test_load_from_path(tmp_path):
    f = tmp_path / "sem.txt"
    f.write_text(DEFAULT_SEMANTICS_TEXT)
    assert load_semantics(str(f)).domains == default_semantics().domains
    with pytest.raises(OSError):
        load_semantics(str(tmp_path / "missing.txt"))


def test_cap_is_passed_through():
    assert default_semantics(cap=7).cap == 7


@pytest.mark.parametrize("text,line,col", [
    ("domain E = {a, b\n", 1, 17),
    ("domain E = {a}\nwhatever x\n", 2, 1),
    ("domain E = {a}\nprim f : E = {a |-> a}\n", 2, 12),
    ("domain E = {a, a}\n", 1, 18),
    ("domain E = {a}\nprim f : E -> E = {b |-> a}\n", 2, 1),
])
def test_semantics_errors(text, line, col):
    with pytest.raises(ParseError) as info:
        parse_semantics(text)
    assert (info.value.line, info.value.col) == (line, col)


def test_point_outside_domain():
    with pytest.raises(ParseError):
        parse_semantics("domain E = {a}\npoint b : E\n")


def test_values():
    s = default_semantics()
    v = parse_value("[[e1, p], q]", Prod(Prod(E, DX), DX), s)
    assert v == PairV(PairV(AtomV("e1", "E"), AtomV("p", "Dx")), AtomV("q", "Dx"))
    assert parse_value("rot", Exp(DX, DX), s).name == "rot"
    t = parse_value("{p |-> u, q |-> v, r |-> w}", Exp(DX, DY), s)
    assert isinstance(t, PrimV) and t(AtomV("q", "Dx")) == AtomV("v", "Dy")
    assert parse_value("a", singleton("a"), s) == AtomV("a", "{a}")
    with pytest.raises(UnknownAtom):
        parse_value("u", DX, s)
    with pytest.raises(ValueError):
        parse_value("{p |-> u}", Exp(DX, DY), s)
    with pytest.raises(ValueError):
        parse_value("rot", Exp(DX, DY), s)
    with pytest.raises(ParseError):
        parse_value("[p, ", Prod(DX, DX), s)


DIAGRAM = """\
# Figure 4 style square with g = Snd
nodes:
  E x Dx x Dx
edges:
  subst | fst[E, Dx] * id[Dx] | E x Dx x Dx | E x Dx
  ghat | curry(snd[E x Dx, Dx]) | E x Dx | Dx -> Dx
  ghat_x_id | curry(snd[E x Dx, Dx]) * id[Dx] | E x Dx x Dx | (Dx -> Dx) x Dx
  fst | fst[Dx -> Dx, Dx] | (Dx -> Dx) x Dx | Dx -> Dx
  eps | eps[Dx, Dx] | (Dx -> Dx) x Dx | Dx
  g | snd[E x Dx, Dx] | E x Dx x Dx | Dx
claims:
  eps ghat_x_id ; g
  ghat . subst ; fst . ghat_x_id
"""


def test_parse_and_check_diagram():
    dg = parse_diagram(DIAGRAM)
    assert len(dg.edges) == 6 and len(dg.claims) == 2
    assert dg.claims[1] == (("ghat", "subst"), ("fst", "ghat_x_id"))
    report = check_diagram(dg)
    assert report.verdicts() == (Outcome.EQUAL, Outcome.EQUAL)


def test_diagram_errors():
    with pytest.raises(ParseError) as info:
        parse_diagram("edges:\n  a | id[Dx] | Dx\n")
    assert info.value.line == 2
    with pytest.raises(ParseError) as info:
        parse_diagram("edges:\n  a | id[Dx | Dx | Dx\n")
    assert (info.value.line, info.value.col) == (2, 12)
    with pytest.raises(ParseError):
        parse_diagram("claims:\n  a b\n")
    with pytest.raises(ParseError):
        parse_diagram("a | id[Dx] | Dx | Dx\n")
