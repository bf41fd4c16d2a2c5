import random

import pytest
from hypothesis import strategies as st

from rainbowtri.coloring import Coloring, num_pairs


@st.composite
def colorings(draw, min_n=1, max_n=7, masks=st.integers(0, 7)):
    n = draw(st.integers(min_n, max_n))
    ms = draw(st.lists(masks, min_size=num_pairs(n), max_size=num_pairs(n)))
    return Coloring(n, bytes(ms))


def random_coloring(rng: random.Random, n: int, density: float = 0.6) -> Coloring:
    return Coloring(
        n,
        bytes(rng.randrange(1, 8) if rng.random() < density else 0 for _ in range(num_pairs(n))),
    )


@pytest.fixture
def rng():
    return random.Random(20240517)
