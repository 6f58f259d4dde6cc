"""Cartesian closed category combinators as an executable environment machine."""
from .core import (
    TERMINAL, Bang, Base, Compose, Curry, DomExpr, EvalMap, Exp, Fst, Id, MorExpr, Pair, Point,
    Prim, Prod, Snd, Terminal, access_path, cod, compose, desugar_functor_product, dom,
    env_shape, infer_type, singleton,
)
from .errors import (
    ApplyNonFunction, CatMachineError, DiagramError, MorphismTypeError, ParseError,
    RuntimeTypeFault, ScopeError, ShapeError, SizeLimit, UnknownAtom, UnknownCase,
    UnknownDomain, UnknownPrimitive,
)
from .formats import default_semantics, load_semantics, parse_diagram, parse_semantics, parse_value
from .lam import App, ConstAtom, ConstFun, Context, Lam, Var, compile_term, oracle_eval, parse
from .laws import Diagram, Outcome, Verdict, check_diagram, equal, normal_form, normalize
from .machine import (
    UNIT, AtomV, ClosureV, FiniteSemantics, PairV, PrimV, UnitV, apply_mor, canonical,
    citation_const, citation_fun, encapsulate, enumerate_domain, make_semantics, subst_morphism,
    update_env,
)
from .suite import CASE_IDS, build_case, run_suite
from .syntax import parse_dom, parse_mor

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
