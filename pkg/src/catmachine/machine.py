"""Element-level semantics over finite base domains.

Base domains are explicitly enumerated atom sets, function constants are
total lookup tables, and currying produces closures holding the body
morphism together with the captured environment instance.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property, lru_cache

from .core import (
    Bang, Base, Compose, Curry, EvalMap, Exp, Fst, Id, Pair, Point, Prim,
    Prod, Snd, Terminal, has_exp, infer_type, singleton, singleton_atom,
    subst_shape_parts,
)
from .errors import (
    RuntimeTypeFault, ShapeError, SizeLimit, UnknownAtom, UnknownDomain,
    UnknownPrimitive,
)

DEFAULT_CAP = 10 ** 6


class Value:
    __slots__ = ()

    def __str__(self):
        return show_value(self)


@dataclass(frozen=True)
class UnitV(Value):
    pass


@dataclass(frozen=True)
class AtomV(Value):
    name: str
    domain: str


@dataclass(frozen=True)
class PairV(Value):
    left: Value
    right: Value


@dataclass(frozen=True)
class ClosureV(Value):
    body: object
    captured: Value


@dataclass(frozen=True)
class PrimV(Value):
    """A function table as an element of ``dom -> cod``.

    The name is only a label: equality is by table.
    """
    name: str = field(compare=False)
    dom: object
    cod: object
    table: tuple

    @cached_property
    def _lookup(self):
        return dict(self.table)

    def __call__(self, arg):
        try:
            return self._lookup[arg]
        except KeyError:
            raise RuntimeTypeFault(f"{arg} is not in the domain of table {self.name or '<table>'}") from None


UNIT = UnitV()


@dataclass(frozen=True)
class Primitive:
    name: str
    dom: object
    cod: object
    table: tuple


@dataclass(frozen=True, eq=False)
class FiniteSemantics:
    domains: dict
    primitives: dict = field(default_factory=dict)
    points: dict = field(default_factory=dict)
    cap: int = DEFAULT_CAP

    def __post_init__(self):
        for atom, dname in self.points.items():
            if atom not in self.carrier(dname):
                raise UnknownAtom(f"point {atom} is not a member of {dname}")
        for p in self.primitives.values():
            if has_exp(p.dom) or has_exp(p.cod):
                raise ValueError(f"primitive {p.name} must be first order")
            keys = dict(p.table)
            for arg in enumerate_domain(p.dom, self):
                if arg not in keys:
                    raise ValueError(f"primitive {p.name} is not total: missing {arg}")
                if not inhabits(keys[arg], p.cod, self):
                    raise ValueError(f"primitive {p.name} maps {arg} outside {p.cod}")
            if len(keys) != len(p.table) or len(keys) != cardinality(p.dom, self):
                raise ValueError(f"primitive {p.name} has entries outside its domain")

    def carrier(self, name):
        if name in self.domains:
            return tuple(self.domains[name])
        atom = singleton_atom(Base(name))
        if atom is not None:
            return (atom,)
        raise UnknownDomain(name)

    def primitive(self, name):
        try:
            return self.primitives[name]
        except KeyError:
            raise UnknownPrimitive(name) from None

    def prim_value(self, name):
        p = self.primitive(name)
        return PrimV(name, p.dom, p.cod, p.table)

    def point_domain(self, atom):
        try:
            return Base(self.points[atom])
        except KeyError:
            raise UnknownAtom(atom) from None

    def with_cap(self, cap):
        return FiniteSemantics(self.domains, self.primitives, self.points, cap)


def make_semantics(domains, primitives=(), points=None, cap=DEFAULT_CAP):
    """Build a semantics from plain data.

    ``primitives`` is an iterable of ``(name, dom, cod, mapping)`` where the
    mapping takes python-level atoms/tuples to atoms.
    """
    domains = {k: tuple(v) for k, v in domains.items()}
    points = dict(points or {})
    probe = FiniteSemantics(domains, {}, {}, cap)
    prims = {}
    for name, pdom, pcod, mapping in primitives:
        table = tuple(
            (to_value(k, pdom, probe), to_value(v, pcod, probe)) for k, v in mapping.items()
        )
        prims[name] = Primitive(name, pdom, pcod, table)
    return FiniteSemantics(domains, prims, points, cap)


def to_value(x, d, s):
    """Lift python data (atom strings, 2-tuples, ()) to a Value of domain ``d``."""
    match d:
        case Terminal():
            return UNIT
        case Base(name):
            if x not in s.carrier(name):
                raise UnknownAtom(f"{x} is not in {name}")
            return AtomV(x, name)
        case Prod(l, r):
            a, b = x
            return PairV(to_value(a, l, s), to_value(b, r, s))
    raise ValueError(f"cannot lift {x!r} into {d}")


# -- enumeration --------------------------------------------------------------

def cardinality(d, s):
    match d:
        case Terminal():
            return 1
        case Base(name):
            return len(s.carrier(name))
        case Prod(l, r):
            return cardinality(l, s) * cardinality(r, s)
        case Exp(a, r):
            return cardinality(r, s) ** cardinality(a, s)
    raise TypeError(d)


@lru_cache(maxsize=4096)
def enumerate_domain(d, s):
    """Every inhabitant of ``d`` once, left component outermost for products."""
    n = cardinality(d, s)
    if n > s.cap:
        raise SizeLimit(f"{d} has {n} inhabitants, above the cap of {s.cap}")
    match d:
        case Terminal():
            return (UNIT,)
        case Base(name):
            return tuple(AtomV(a, name) for a in s.carrier(name))
        case Prod(l, r):
            return tuple(PairV(a, b) for a, b in
                         itertools.product(enumerate_domain(l, s), enumerate_domain(r, s)))
        case Exp(a, r):
            args = enumerate_domain(a, s)
            outs = enumerate_domain(r, s)
            return tuple(
                PrimV(f"#{k}", a, r, tuple(zip(args, combo)))
                for k, combo in enumerate(itertools.product(outs, repeat=len(args)))
            )
    raise TypeError(d)


# -- evaluation ---------------------------------------------------------------

def inhabits(v, d, s=None):
    """Typing judgment for values; without semantics atoms are checked by domain name only."""
    match d:
        case Terminal():
            return isinstance(v, UnitV)
        case Base(name):
            if not (isinstance(v, AtomV) and v.domain == name):
                return False
            return s is None or v.name in s.carrier(name)
        case Prod(l, r):
            return isinstance(v, PairV) and inhabits(v.left, l, s) and inhabits(v.right, r, s)
        case Exp(a, r):
            if isinstance(v, PrimV):
                return v.dom == a and v.cod == r
            if isinstance(v, ClosureV):
                try:
                    bd, bc = infer_type(v.body)
                except TypeError:
                    return False
                return (isinstance(bd, Prod) and bd.right == a and bc == r
                        and inhabits(v.captured, bd.left, s))
    return False


def apply_mor(m, v, s, trace=None):
    """Run morphism ``m`` on element ``v``.

    When ``trace`` is a list, one ``(node, input, output)`` triple is appended
    per evaluated node, innermost first.
    """
    d, _ = infer_type(m)
    if not inhabits(v, d, s):
        raise RuntimeTypeFault(f"{v} does not inhabit {d}")
    return _apply(m, v, s, trace)


def _apply(m, v, s, trace):
    match m:
        case Id():
            out = v
        case Compose(outer, inner):
            out = _apply(outer, _apply(inner, v, s, trace), s, trace)
        case Fst():
            if not isinstance(v, PairV):
                raise RuntimeTypeFault(f"fst applied to non-pair {v}")
            out = v.left
        case Snd():
            if not isinstance(v, PairV):
                raise RuntimeTypeFault(f"snd applied to non-pair {v}")
            out = v.right
        case Pair(f, g):
            out = PairV(_apply(f, v, s, trace), _apply(g, v, s, trace))
        case Curry(g):
            out = ClosureV(g, v)
        case EvalMap(a, _):
            if not isinstance(v, PairV):
                raise RuntimeTypeFault(f"evaluation map applied to non-pair {v}")
            fn, x = v.left, v.right
            if isinstance(fn, ClosureV):
                out = _apply(fn.body, PairV(fn.captured, x), s, trace)
            elif isinstance(fn, PrimV):
                out = fn(canonical(x, a, s))
            else:
                raise RuntimeTypeFault(f"evaluation map applied to non-function {fn}")
        case Bang():
            out = UNIT
        case Point(c, t):
            if not isinstance(t, Base) or c not in s.carrier(t.name):
                raise UnknownAtom(f"{c} is not an element of {t}")
            out = AtomV(c, t.name)
        case Prim(name, pd, _):
            p = s.primitive(name)
            if (p.dom, p.cod) != infer_type(m):
                raise RuntimeTypeFault(f"primitive {name} is registered as {p.dom} -> {p.cod}")
            out = s.prim_value(name)(canonical(v, pd, s))
        case _:
            raise RuntimeTypeFault(f"not a morphism: {m!r}")
    if trace is not None:
        trace.append((m, v, out))
    return out


def tabulate(fn, a, r, s, canon):
    """Function table of ``fn`` over every element of ``a``, results canonicalized in ``r``."""
    return PrimV("", a, r, tuple((x, canon(fn(x), r, s)) for x in enumerate_domain(a, s)))


def canonical(v, d, s):
    """Extensional normal form: closures become function tables."""
    if not has_exp(d):
        return v
    match d:
        case Prod(l, r):
            return PairV(canonical(v.left, l, s), canonical(v.right, r, s))
        case Exp(a, r):
            if isinstance(v, PrimV):
                return v
            if isinstance(v, ClosureV):
                return tabulate(lambda x: _apply(v.body, PairV(v.captured, x), s, None),
                                a, r, s, canonical)
    raise RuntimeTypeFault(f"{v} does not inhabit {d}")


def values_equal(u, v, d, s):
    return canonical(u, d, s) == canonical(v, d, s)


# -- environment operations ---------------------------------------------------

def subst_morphism(env_shape):
    """``<fst . fst, snd> : (E' x D_old) x D_x -> E' x D_x``."""
    rest, old, new = subst_shape_parts(env_shape)
    inner = env_shape.left
    return Pair(Compose(Fst(rest, old), Fst(inner, new)), Snd(inner, new))


def update_env(old, d, shape=None, s=None):
    """New environment instance that differs from ``old`` only in its last slot."""
    if not isinstance(old, PairV):
        raise RuntimeTypeFault(f"environment instance {old} is not a pair")
    if shape is not None:
        if not isinstance(shape, Prod):
            raise RuntimeTypeFault(f"environment shape {shape} is not a product")
        if not inhabits(old, shape, s):
            raise RuntimeTypeFault(f"{old} does not inhabit {shape}")
        if not inhabits(d, shape.right, s):
            raise RuntimeTypeFault(f"{d} does not inhabit {shape.right}")
    return PairV(old.left, d)


def _declared_atom(c, s):
    if c in s.points:
        return
    if any(c in atoms for atoms in s.domains.values()):
        return
    raise UnknownAtom(c)


def citation_const(c, env_shape, s):
    """``curry(id[{c}] . snd) : Env -> ({c} -> {c})``."""
    _declared_atom(c, s)
    one = singleton(c)
    return Curry(Compose(Id(one), Snd(env_shape, one)))


def citation_fun(f, env_shape, s):
    """``curry(f . snd) : Env -> (A -> B)`` for a registered primitive ``f : A -> B``."""
    p = s.primitive(f)
    return Curry(Compose(Prim(f, p.dom, p.cod), Snd(env_shape, p.dom)))


def encapsulate(a, env_shape):
    """``(E x D_a) x {a} -> E x {a}``, rebuilding the environment around the constant."""
    _, _, slot = subst_shape_parts(env_shape)
    if singleton_atom(slot) != a:
        raise ShapeError(f"last component of {env_shape} must be {{{a}}}")
    return subst_morphism(env_shape)


# -- display ------------------------------------------------------------------

def show_value(v, d=None, s=None):
    """Render a value; with ``d`` and ``s`` closures are shown as their tables."""
    if d is not None and s is not None:
        v = canonical(v, d, s)
    match v:
        case UnitV():
            return "()"
        case AtomV(name, _):
            return name
        case PairV(l, r):
            ld = rd = None
            if isinstance(d, Prod):
                ld, rd = d.left, d.right
            return f"[{show_value(l, ld, s)}, {show_value(r, rd, s)}]"
        case ClosureV(body, captured):
            return f"closure({body} @ {show_value(captured)})"
        case PrimV(name, _, _, table):
            if name and not name.startswith("#"):
                return name
            inner = ", ".join(f"{show_value(k)} |-> {show_value(x)}" for k, x in table)
            return "{" + inner + "}"
    return repr(v)


def value_to_json(v):
    match v:
        case UnitV():
            return []
        case AtomV(name, _):
            return name
        case PairV(l, r):
            return [value_to_json(l), value_to_json(r)]
        case ClosureV(body, captured):
            return {"closure": str(body), "captured": value_to_json(captured)}
        case PrimV(_, _, _, table):
            return {"table": [[value_to_json(k), value_to_json(x)] for k, x in table]}
    return repr(v)
