import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import settings
from hypothesis import strategies as st

from ranksum.distributions import JointDistribution
from ranksum.preorder import TotalPreorder
from ranksum.reference_cases import counterexample_distribution

settings.register_profile("default", max_examples=100, deadline=None)
settings.load_profile("default")


@pytest.fixture
def ex3():
    return counterexample_distribution()


@pytest.fixture
def rng():
    return random.Random(12345)


def random_joint(rng, n, max_support=None, max_weight=12):
    cells = list(itertools.product((0, 1), repeat=n))
    size = rng.randint(1, min(len(cells), max_support or len(cells)))
    ys = rng.sample(cells, size)
    w = [rng.randint(1, max_weight) for _ in ys]
    tot = sum(w)
    return JointDistribution(n, tuple((y, Fraction(wi, tot)) for y, wi in zip(ys, w)))


@st.composite
def preorders(draw, min_n=1, max_n=6):
    n = draw(st.integers(min_n, max_n))
    labels = draw(st.lists(st.integers(0, n - 1), min_size=n, max_size=n))
    ranks = sorted(set(labels))
    classes = [tuple(i + 1 for i in range(n) if labels[i] == r) for r in ranks]
    return TotalPreorder.from_classes(classes)


@st.composite
def outcome_and_preorder(draw, min_n=1, max_n=6):
    p = draw(preorders(min_n, max_n))
    y = tuple(draw(st.lists(st.integers(0, 1), min_size=p.n, max_size=p.n)))
    return y, p


rationals = st.fractions(min_value=-10, max_value=10, max_denominator=12)
