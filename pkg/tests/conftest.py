import os
import sys

import pytest
from hypothesis import settings, strategies as st

from hibikit.poset import Poset, poset_from_covers

sys.path.insert(0, os.path.dirname(__file__))

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

DATA = os.path.join(os.path.dirname(__file__), "data")


def butterfly():
    return poset_from_covers("abcde", [("a", "b"), ("c", "d"), ("d", "e"), ("a", "e"), ("c", "b")])


def expseudo():
    return poset_from_covers(
        ["a1", "a2", "a3", "b1", "b2", "b3"],
        [("a1", "a2"), ("a2", "a3"), ("b1", "b2"), ("b2", "b3"), ("a1", "b3")],
    )


@pytest.fixture
def data_dir():
    return DATA


@st.composite
def posets(draw, min_n=1, max_n=5):
    """Random posets: a random DAG on 0..n-1 (edges go up in index), closed."""
    n = draw(st.integers(min_n, max_n))
    down = []
    for j in range(n):
        d = 1 << j
        for i in range(j):
            if draw(st.booleans()):
                d |= down[i]
        down.append(d)
    perm = draw(st.permutations(range(n)))
    labels = [f"p{perm[i]}" for i in range(n)]
    return Poset(labels, down)
