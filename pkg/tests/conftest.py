import random
from fractions import Fraction

import pytest

from annkh.diagram import analyze, make_diagram
from annkh.families import annular_closure, braid_tangle, necklace


def random_braid_diagram(rng: random.Random, max_letters: int = 8):
    """Annular closure of a random braid word; crossing count equals the
    word length, so the corpus stays within the stated budget."""
    strands = rng.randint(2, 4)
    letters = rng.randint(1, max_letters)
    word = [rng.choice([1, -1]) * rng.randint(1, strands - 1)
            for _ in range(letters)]
    arc = rng.choice([0, 1])
    return annular_closure(braid_tangle(word, strands), arc_weight=arc)


def corpus(count: int, seed: int = 2024, max_letters: int = 8):
    rng = random.Random(seed)
    return [random_braid_diagram(rng, max_letters) for _ in range(count)]


def rational_weights(d):
    nc = analyze(d).n_components
    return [Fraction(c) for c in range(nc)]


def integer_weights(d):
    nc = analyze(d).n_components
    return list(range(nc))


@pytest.fixture(scope="session")
def small_corpus():
    return corpus(40, seed=7, max_letters=6)


@pytest.fixture(scope="session")
def hopf():
    """Positive clasp of two circles running around the axis."""
    return annular_closure(braid_tangle([1, 1], 2))


@pytest.fixture(scope="session")
def necklace1():
    return necklace(1)


@pytest.fixture(scope="session")
def necklace2():
    return necklace(2)


@pytest.fixture(scope="session")
def positive_kink():
    return make_diagram(crossings=[(1, 1, 2, 2)], seam={1: 1})


@pytest.fixture(scope="session")
def negative_kink():
    return make_diagram(crossings=[(1, 2, 2, 1)], seam={1: 1})
