import itertools

import pytest

from synchro.automata import Alphabet
from synchro.codesets import CodeSet

AB = Alphabet.of("ab")
ABC = Alphabet.of("abc")

# complete because it contains all of A^2
COMPLETE_WORDS = ["aa", "ab", "ba", "bb", "aab"]


def w(text, alphabet=AB):
    return alphabet.parse(text)


def all_words(m, max_len):
    for n in range(max_len + 1):
        yield from itertools.product(range(m), repeat=n)


@pytest.fixture
def ab():
    return AB


@pytest.fixture
def complete_code():
    return CodeSet.from_strings(AB, COMPLETE_WORDS)


@pytest.fixture
def x2_ab():
    """A^2 \\ {ab} over {a, b}."""
    return CodeSet.all_but(AB, w("ab"))
