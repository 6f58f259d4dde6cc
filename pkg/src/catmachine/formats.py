"""Semantics files, diagram files and value literals.

Semantics file::

    # comment
    domain E = {e1, e2}
    prim rot : Dx -> Dx = {p |-> q, q |-> r, r |-> p}
    point p : Dx

Diagram file (edge fields separated by ``|``, claim paths by ``;``)::

    nodes:
      E x Dx
    edges:
      name | morphism | src | dst
    claims:
      e1 e2 ; e3
"""
from __future__ import annotations

from .core import Base, Exp, Prod, Terminal
from .errors import ParseError, UnknownAtom, UnknownDomain, UnknownPrimitive
from .laws import Diagram, Edge
from .machine import (
    UNIT, AtomV, FiniteSemantics, PairV, PrimV, Primitive, canonical, enumerate_domain,
)
from .syntax import Parser

DEFAULT_SEMANTICS_TEXT = """\
# Desk-scale model: two implicit-rest atoms, three-atom value domains,
# an identity table and a cyclic permutation on Dx.
domain E = {e1, e2}
domain Dx = {p, q, r}
domain Dy = {u, v, w}
prim idx : Dx -> Dx = {p |-> p, q |-> q, r |-> r}
prim rot : Dx -> Dx = {p |-> q, q |-> r, r |-> p}
point e1 : E
point p : Dx
point q : Dx
point u : Dy
"""

SINGLETON_SEMANTICS_TEXT = """\
domain E = {a}
domain Dx = {a}
domain Dy = {a}
prim idx : Dx -> Dx = {a |-> a}
point a : Dx
"""


def _line_error(exc, lineno, offset=0):
    col = (exc.col or 1) + max(offset, 0)
    return ParseError(exc.message, line=lineno, col=col)


def parse_semantics(text, cap=None):
    domains, prims_raw, points = {}, [], {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        try:
            p = Parser(line)
            kw = p.ident()
            if kw == "domain":
                name = p.ident()
                p.expect("=")
                p.expect("{")
                atoms = [p.ident()]
                while p.at(","):
                    p.advance()
                    atoms.append(p.ident())
                p.expect("}")
                p.done()
                if len(set(atoms)) != len(atoms):
                    raise p.error(f"duplicate atom in domain {name}")
                domains[name] = tuple(atoms)
            elif kw == "prim":
                name = p.ident()
                p.expect(":")
                d = p.dom()
                if not isinstance(d, Exp):
                    raise p.error("primitive type must be an arrow A -> B")
                p.expect("=")
                table = p.raw_value()
                p.done()
                if table[0] != "table":
                    raise p.error("primitive body must be a table {x |-> y, ...}")
                prims_raw.append((lineno, name, d.arg, d.result, table))
            elif kw == "point":
                atom = p.ident()
                p.expect(":")
                d = p.dom()
                p.done()
                if not isinstance(d, Base):
                    raise p.error("points live in base domains")
                points[atom] = d.name
            else:
                raise ParseError(f"unknown declaration {kw!r}", line=1, col=1)
        except ParseError as exc:
            raise _line_error(exc, lineno) from exc
    kwargs = {} if cap is None else {"cap": cap}
    probe = FiniteSemantics(domains, {}, {}, **kwargs)
    prims = {}
    for lineno, name, a, r, table in prims_raw:
        try:
            entries = tuple((coerce_value(k, a, probe), coerce_value(v, r, probe))
                            for k, v in table[1])
        except (UnknownAtom, UnknownDomain, ValueError) as exc:
            raise ParseError(f"primitive {name}: {exc}", line=lineno, col=1) from exc
        prims[name] = Primitive(name, a, r, entries)
    try:
        return FiniteSemantics(domains, prims, points, **kwargs)
    except (UnknownAtom, UnknownDomain, ValueError) as exc:
        raise ParseError(f"invalid semantics: {exc}", line=1, col=1) from exc


def default_semantics(cap=None):
    return parse_semantics(DEFAULT_SEMANTICS_TEXT, cap)


def load_semantics(source, cap=None):
    """``default``, ``singleton`` or a path to a semantics file."""
    if source in (None, "default"):
        return default_semantics(cap)
    if source == "singleton":
        return parse_semantics(SINGLETON_SEMANTICS_TEXT, cap)
    with open(source) as fh:
        return parse_semantics(fh.read(), cap)


def coerce_value(raw, d, s):
    """Type-directed conversion of a raw literal (see ``Parser.raw_value``) into a Value."""
    match d:
        case Terminal():
            if raw != ("unit",):
                raise ValueError(f"expected () for O, got {raw!r}")
            return UNIT
        case Base(name):
            if not isinstance(raw, str):
                raise ValueError(f"expected an atom of {name}, got {raw!r}")
            if raw not in s.carrier(name):
                raise UnknownAtom(f"{raw} is not in {name}")
            return AtomV(raw, name)
        case Prod(l, r):
            if not (isinstance(raw, tuple) and raw[0] == "pair"):
                raise ValueError(f"expected a pair for {d}, got {raw!r}")
            return PairV(coerce_value(raw[1], l, s), coerce_value(raw[2], r, s))
        case Exp(a, r):
            if isinstance(raw, str):
                try:
                    pv = s.prim_value(raw)
                except UnknownPrimitive:
                    raise ValueError(f"{raw} is not a registered primitive") from None
                if (pv.dom, pv.cod) != (a, r):
                    raise ValueError(f"primitive {raw} is not of type {d}")
                return pv
            if isinstance(raw, tuple) and raw[0] == "table":
                given = {canonical(coerce_value(k, a, s), a, s): coerce_value(v, r, s)
                         for k, v in raw[1]}
                args = enumerate_domain(a, s)
                missing = [x for x in args if x not in given]
                if missing or len(given) != len(args):
                    raise ValueError(f"table for {d} is not total")
                return PrimV("", a, r, tuple((x, canonical(given[x], r, s)) for x in args))
            raise ValueError(f"expected a primitive name or table for {d}, got {raw!r}")
    raise ValueError(f"cannot build a value of {d}")


def parse_value(text, d, s):
    p = Parser(text)
    raw = p.raw_value()
    p.done()
    return coerce_value(raw, d, s)


def parse_diagram(text):
    from .syntax import parse_dom, parse_mor

    dg = Diagram()
    section = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line in ("nodes:", "edges:", "claims:"):
            section = line[:-1]
            continue
        try:
            if section == "nodes":
                dg.nodes.append(parse_dom(line))
            elif section == "edges":
                fields = [f.strip() for f in line.split("|")]
                if len(fields) != 4:
                    raise ParseError("edge needs four |-separated fields: name | morphism | src | dst",
                                     line=1, col=1)
                name, mtext, stext, dtext = fields
                parsed = []
                for ftext, fn in ((mtext, parse_mor), (stext, parse_dom), (dtext, parse_dom)):
                    try:
                        parsed.append(fn(ftext))
                    except ParseError as exc:
                        raise _line_error(exc, 1, line.find(ftext)) from exc
                m, src, dst = parsed
                if name in dg.edges:
                    raise ParseError(f"duplicate edge {name}", line=1, col=1)
                dg.edges[name] = Edge(name, m, src, dst)
                # edge endpoints count as declared nodes
                dg.nodes.extend(n for n in (src, dst) if n not in dg.nodes)
            elif section == "claims":
                if line.count(";") != 1:
                    raise ParseError("claim needs two paths separated by ';'", line=1, col=1)
                a, b = line.split(";")
                dg.claim(a.replace(".", " ").split(), b.replace(".", " ").split())
            else:
                raise ParseError("content outside of a nodes:/edges:/claims: section",
                                 line=1, col=1)
        except ParseError as exc:
            raise _line_error(exc, lineno, raw.find(line)) from exc
    return dg
