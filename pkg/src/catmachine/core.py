"""Domains and morphisms of a cartesian closed category.

Every morphism carries enough domain annotations that its type can be
read off in one bottom-up pass, see :func:`infer_type`.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache, reduce

from .errors import MorphismTypeError, ShapeError


class DomExpr:
    __slots__ = ()

    def __str__(self):
        return show_dom(self)


@dataclass(frozen=True)
class Terminal(DomExpr):
    pass


@dataclass(frozen=True)
class Base(DomExpr):
    name: str


@dataclass(frozen=True)
class Prod(DomExpr):
    left: DomExpr
    right: DomExpr


@dataclass(frozen=True)
class Exp(DomExpr):
    arg: DomExpr
    result: DomExpr


class MorExpr:
    __slots__ = ()

    def __str__(self):
        return show_mor(self)


@dataclass(frozen=True)
class Id(MorExpr):
    d: DomExpr


@dataclass(frozen=True)
class Compose(MorExpr):
    """``outer . inner``; ``inner`` is applied first."""
    outer: MorExpr
    inner: MorExpr


@dataclass(frozen=True)
class Fst(MorExpr):
    l: DomExpr
    r: DomExpr


@dataclass(frozen=True)
class Snd(MorExpr):
    l: DomExpr
    r: DomExpr


@dataclass(frozen=True)
class Pair(MorExpr):
    f: MorExpr
    g: MorExpr


@dataclass(frozen=True)
class Curry(MorExpr):
    g: MorExpr


@dataclass(frozen=True)
class EvalMap(MorExpr):
    arg: DomExpr
    result: DomExpr


@dataclass(frozen=True)
class Bang(MorExpr):
    d: DomExpr


@dataclass(frozen=True)
class Point(MorExpr):
    atom: str
    target: DomExpr


@dataclass(frozen=True)
class Prim(MorExpr):
    name: str
    dom: DomExpr
    cod: DomExpr


TERMINAL = Terminal()


def singleton(atom):
    """The one-atom domain ``{atom}``."""
    return Base("{" + atom + "}")


def singleton_atom(d):
    """Return ``a`` when ``d`` is the singleton ``{a}``, else None."""
    if isinstance(d, Base) and d.name.startswith("{") and d.name.endswith("}"):
        return d.name[1:-1]
    return None


def env_shape(rest, *doms):
    """Left-nested product ``((rest x d1) x d2) x ...``."""
    return reduce(Prod, doms, rest)


def compose(*ms):
    """Right-leaning composite ``ms[0] . ms[1] . ... . ms[-1]``."""
    if not ms:
        raise ValueError("compose needs at least one morphism")
    return reduce(lambda acc, m: Compose(m, acc), reversed(ms[:-1]), ms[-1])


def chain(m):
    """Flatten nested compositions into a list, outermost first."""
    if isinstance(m, Compose):
        return chain(m.outer) + chain(m.inner)
    return [m]


def has_exp(d):
    match d:
        case Exp():
            return True
        case Prod(l, r):
            return has_exp(l) or has_exp(r)
    return False


@lru_cache(maxsize=1 << 16)
def infer_type(m):
    """Return ``(dom, cod)`` of ``m`` or raise :class:`MorphismTypeError`."""
    match m:
        case Id(d):
            return d, d
        case Compose(outer, inner):
            a, b = infer_type(inner)
            c, e = infer_type(outer)
            if b != c:
                raise MorphismTypeError(m, c, b, "composition mismatch")
            return a, e
        case Fst(l, r):
            return Prod(l, r), l
        case Snd(l, r):
            return Prod(l, r), r
        case Pair(f, g):
            df, cf = infer_type(f)
            dg, cg = infer_type(g)
            if df != dg:
                raise MorphismTypeError(m, df, dg, "pairing of maps with different domains")
            return df, Prod(cf, cg)
        case Curry(g):
            dg, cg = infer_type(g)
            if not isinstance(dg, Prod):
                raise MorphismTypeError(m, Prod(Base("?"), Base("?")), dg,
                                        "curry of a map not out of a product")
            return dg.left, Exp(dg.right, cg)
        case EvalMap(a, r):
            return Prod(Exp(a, r), a), r
        case Bang(d):
            return d, TERMINAL
        case Point(_, t):
            return TERMINAL, t
        case Prim(_, d, c):
            return d, c
    raise MorphismTypeError(m, None, None, "not a morphism expression")


def dom(m):
    return infer_type(m)[0]


def cod(m):
    return infer_type(m)[1]


def desugar_functor_product(f, g):
    """``f * g`` as ``<f . fst, g . snd>``; an identity factor leaves the bare projection."""
    a, c = infer_type(f)
    b, d = infer_type(g)
    left = Fst(a, b) if isinstance(f, Id) else Compose(f, Fst(a, b))
    right = Snd(a, b) if isinstance(g, Id) else Compose(g, Snd(a, b))
    return Pair(left, right)


def access_path(shape, index):
    """Pointer ``snd . fst^index`` into a left-nested environment product."""
    if index < 0:
        raise IndexError(f"negative access index {index}")
    steps = []
    cur = shape
    for _ in range(index):
        if not isinstance(cur, Prod):
            raise IndexError(f"environment {shape} too shallow for index {index}")
        steps.append(Fst(cur.left, cur.right))
        cur = cur.left
    if not isinstance(cur, Prod):
        raise IndexError(f"environment {shape} too shallow for index {index}")
    return compose(Snd(cur.left, cur.right), *reversed(steps))


def component(shape, index):
    """The domain that :func:`access_path` selects."""
    cur = shape
    for _ in range(index):
        if not isinstance(cur, Prod):
            raise IndexError(index)
        cur = cur.left
    if not isinstance(cur, Prod):
        raise IndexError(index)
    return cur.right


def subst_shape_parts(env_shape):
    """Split ``(E' x D_old) x D_new`` into its three parts."""
    if not (isinstance(env_shape, Prod) and isinstance(env_shape.left, Prod)):
        raise ShapeError(f"expected a product of a product, got {env_shape}")
    return env_shape.left.left, env_shape.left.right, env_shape.right


# -- printing ---------------------------------------------------------------

def show_dom(d):
    match d:
        case Terminal():
            return "O"
        case Base(name):
            return name
        case Prod(l, r):
            ls = show_dom(l)
            if isinstance(l, Exp):
                ls = f"({ls})"
            rs = show_dom(r)
            if isinstance(r, (Prod, Exp)):
                rs = f"({rs})"
            return f"{ls} x {rs}"
        case Exp(a, r):
            a_s = show_dom(a)
            if isinstance(a, Exp):
                a_s = f"({a_s})"
            return f"{a_s} -> {show_dom(r)}"
    raise TypeError(f"not a domain: {d!r}")


def show_mor(m):
    match m:
        case Id(d):
            return f"id[{d}]"
        case Compose(outer, inner):
            o = show_mor(outer)
            if isinstance(outer, Compose):
                o = f"({o})"
            return f"{o} . {show_mor(inner)}"
        case Fst(l, r):
            return f"fst[{l}, {r}]"
        case Snd(l, r):
            return f"snd[{l}, {r}]"
        case Pair(f, g):
            return f"<{show_mor(f)}, {show_mor(g)}>"
        case Curry(g):
            return f"curry({show_mor(g)})"
        case EvalMap(a, r):
            return f"eps[{a}, {r}]"
        case Bang(d):
            return f"bang[{d}]"
        case Point(c, t):
            return f"point({c}, {t})"
        case Prim(n, d, c):
            return f"prim({n}, {d}, {c})"
    raise TypeError(f"not a morphism: {m!r}")
