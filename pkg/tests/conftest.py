import hypothesis.strategies as st
import numpy as np
from hypothesis import settings

from nclp import MultiMatrixAlgebra

settings.register_profile("nclp", deadline=None, max_examples=40)
settings.load_profile("nclp")


@st.composite
def algebras(draw, max_blocks: int = 3, max_total_dim: int = 4):
    """Random multi-matrix algebra with bounded total block dimension."""
    k = draw(st.integers(1, max_blocks))
    dims = []
    budget = max_total_dim
    for i in range(k):
        hi = budget - (k - i - 1)
        n = draw(st.integers(1, max(1, hi)))
        dims.append(n)
        budget -= n
    weights = [draw(st.floats(0.5, 2.0)) for _ in dims]
    return MultiMatrixAlgebra.from_dims(dims, weights)


@st.composite
def seeded(draw, *strategies):
    """Bundle a numpy Generator seed with draws from the given strategies."""
    seed = draw(st.integers(0, 2**32 - 1))
    vals = tuple(draw(s) for s in strategies)
    return (np.random.default_rng(seed),) + vals
