"""Shared hypothesis strategies."""
import random

from hypothesis import strategies as st

from catmachine.core import TERMINAL, Base, Exp, Prod
from catmachine.formats import default_semantics
from catmachine.generate import MorphismGenerator, default_pool

SEM = default_semantics()

bases = st.sampled_from([Base("E"), Base("Dx"), Base("Dy")])

domains = st.recursive(
    bases | st.just(TERMINAL),
    lambda inner: st.builds(Prod, inner, inner) | st.builds(Exp, inner, inner),
    max_leaves=6,
)

pool_domains = st.sampled_from(default_pool())


@st.composite
def morphisms(draw, dom=None, cod=None, depth=4, unknown=False):
    """Well-typed morphism drawn through the seeded generator."""
    seed = draw(st.integers(0, 2 ** 32 - 1))
    gen = MorphismGenerator(SEM, default_pool(), random.Random(seed), unknown_prims=unknown)
    d = dom if dom is not None else draw(pool_domains)
    c = cod if cod is not None else draw(pool_domains)
    return gen.morphism(d, c, depth)
