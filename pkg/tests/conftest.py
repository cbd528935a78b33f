from itertools import product

import pytest

from listupdate.core import Alphabet, parse_state


ABC = Alphabet.standard(3)
XY = Alphabet(("x", "y"))


def seq(text, alphabet=ABC):
    return alphabet.parse_sequence(text)


def state(text, alphabet=ABC):
    return alphabet.parse_state(text)


def all_sequences(n, maxlen, minlen=0):
    for length in range(minlen, maxlen + 1):
        yield from product(range(n), repeat=length)


@pytest.fixture
def abc():
    return parse_state("[abc]")[1]
