from __future__ import annotations

import random

from hypothesis import settings, strategies as st

from polycycles.checks import ATOMS, random_tree

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


@st.composite
def trees(draw, min_edges: int = 1, max_edges: int = 7, generic: bool = True):
    """Random decorated planted tree built from a drawn seed."""
    seed = draw(st.integers(0, 2**32 - 1))
    edges = draw(st.integers(min_edges, max_edges))
    return random_tree(random.Random(seed), edges, generic)


atoms = st.sampled_from(ATOMS)
