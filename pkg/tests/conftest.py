import random

import pytest
from hypothesis import settings, strategies as st

from stvb.word import BraidWord, Generator, Kind

settings.register_profile("default", deadline=None, max_examples=150)
settings.load_profile("default")


@st.composite
def words(draw, min_degree=1, max_degree=5, max_length=10, kinds=tuple(Kind), degree=None):
    n = degree if degree is not None else draw(st.integers(min_degree, max_degree))
    allowed = [k for k in kinds if k == Kind.GAMMA or n > 1]
    if not allowed:
        allowed = [Kind.GAMMA]
    length = draw(st.integers(0, max_length))
    letters = []
    for _ in range(length):
        kind = draw(st.sampled_from(allowed))
        top = n if kind == Kind.GAMMA else n - 1
        letters.append(Generator(kind, draw(st.integers(1, top))))
    return BraidWord(n, tuple(letters))


def strand_oracle(w):
    """Independent strand simulation: follow each strand label down the word."""
    n = w.degree
    slots = list(range(1, n + 1))  # slots[p-1] = strand occupying position p
    bars = {k: 0 for k in slots}
    for x in w.letters:
        i = x.index
        if x.kind == Kind.GAMMA:
            bars[slots[i - 1]] ^= 1
        else:
            slots[i - 1], slots[i] = slots[i], slots[i - 1]
    perm = [0] * n
    for p, strand in enumerate(slots, 1):
        perm[strand - 1] = p
    return tuple(perm), tuple(bars[slots[p]] for p in range(n))


TAU_FREE = (Kind.SIGMA_POS, Kind.SIGMA_NEG, Kind.V, Kind.GAMMA)


@pytest.fixture
def rng():
    return random.Random(20240917)
