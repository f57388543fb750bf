from __future__ import annotations

import os
import sys
from itertools import combinations

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

sys.path.insert(0, os.path.dirname(__file__))

from loosepath.hypercore import Hypergraph  # noqa: E402

settings.register_profile("default", max_examples=80, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


@st.composite
def hypergraphs(draw, k: int, min_n: int | None = None, max_n: int = 8, max_edges: int = 10):
    n = draw(st.integers(min_n or k, max_n))
    pool = list(combinations(range(n), k))
    picked = draw(st.lists(st.sampled_from(pool), unique=True, max_size=min(max_edges, len(pool))))
    return Hypergraph(k, n, tuple(picked))
