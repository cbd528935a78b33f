from itertools import combinations, permutations

import pytest
from hypothesis import given, strategies as st

from listupdate.algorithms import make_frequency_count, make_lmtf, make_mtf, make_transpose, make_ts
from listupdate.core import (Alphabet, InvalidStateError,
                             ListUpdateError, access_cost, expand_macros, kendall_distance,
                             parse_state, project_sequence, project_state, serve, serve_cost)
from listupdate.algorithms import FunctionAlgorithm

from conftest import ABC, XY, seq, state


def brute_kendall(a, b):
    return sum(1 for x, y in combinations(a, 2) if b.index(x) > b.index(y))


@pytest.mark.parametrize("a, b, expected", [("[abc]", "[abc]", 0), ("[abc]", "[cba]", 3),
                                            ("[abc]", "[bca]", 2)])
def test_kendall_examples(a, b, expected):
    assert kendall_distance(state(a), state(b)) == expected
    assert brute_kendall(state(a), state(b)) == expected


def test_kendall_rejects_mismatched_alphabets():
    with pytest.raises(ListUpdateError):
        kendall_distance((0, 1, 2), (0, 1))


perm5 = st.permutations(list(range(5))).map(tuple)


@given(perm5, perm5, perm5)
def test_kendall_is_a_metric(a, b, c):
    assert (kendall_distance(a, b) == 0) == (a == b)
    assert kendall_distance(a, b) == kendall_distance(b, a) == brute_kendall(a, b)
    assert kendall_distance(a, c) <= kendall_distance(a, b) + kendall_distance(b, c)


@pytest.mark.parametrize("item, cost", [("a", 0), ("b", 1), ("c", 2)])
def test_access_cost(item, cost):
    assert access_cost(state("[abc]"), ABC.index(item)) == cost


@given(perm5, st.integers(0, 4))
def test_access_cost_counts_items_in_front(s, x):
    assert access_cost(s, x) == sum(1 for y in s if y != x and s.index(y) < s.index(x))


def test_serve_examples():
    xy = XY.parse_state("[xy]")
    assert serve(make_mtf(xy), seq("yy", XY)).cost == 1
    empty = serve(make_mtf(xy), ())
    assert empty.cost == 0 and empty.trace == [xy]
    assert serve(make_ts(xy), seq("yy", XY)).cost == 2


def test_serve_trace_length_and_cost_agree():
    s = seq("abcabcca")
    served = serve(make_transpose(state("[abc]")), s)
    assert len(served.trace) == len(s) + 1
    assert served.cost == serve_cost(make_transpose(state("[abc]")), s)


def test_serve_rejects_non_permutation():
    bad = FunctionAlgorithm("bad", (0, 1, 2), lambda s, hist, z: (z, z, z))
    with pytest.raises(InvalidStateError):
        serve(bad, (1,))


@pytest.mark.parametrize("sigma, items, expected", [("baacbc", "bc", "bcbc"), ("abbcab", "a", "aa"),
                                                    ("", "ab", "")])
def test_project_sequence(sigma, items, expected):
    assert project_sequence(seq(sigma), seq(items)) == seq(expected)


@pytest.mark.parametrize("s, pair, expected", [("[abc]", "ac", "ac"), ("[cba]", "ab", "ba"),
                                               ("[cab]", "bc", "cb")])
def test_project_state(s, pair, expected):
    assert project_state(state(s), seq(pair)) == seq(expected)


@pytest.mark.parametrize("make", [make_mtf, make_ts, make_transpose, make_frequency_count, make_lmtf])
@given(st.permutations([0, 1, 2, 3]).map(tuple), st.lists(st.integers(0, 3), max_size=12).map(tuple))
def test_serve_cost_invariant_under_renaming(make, rename, sigma):
    initial = (2, 0, 3, 1)
    renamed_initial = tuple(rename[x] for x in initial)
    renamed_sigma = tuple(rename[z] for z in sigma)
    assert serve(make(initial), sigma).cost == serve(make(renamed_initial), renamed_sigma).cost


def test_parse_state_infers_alphabet():
    alphabet, s = parse_state("[yx]")
    assert alphabet.symbols == ("x", "y") and s == (1, 0)
    alphabet, s = parse_state("[u1,u0,u10,u2]")
    assert alphabet.symbols == ("u0", "u1", "u2", "u10") and s == (1, 0, 3, 2)
    assert alphabet.render_state(s) == "[u1,u0,u10,u2]"
    with pytest.raises(InvalidStateError):
        parse_state("[aab]")


def test_large_alphabets_use_indexed_names():
    big = Alphabet.standard(30)
    assert big.symbols[27] == "u27"
    assert big.parse_sequence("u3,u27") == (3, 27)


@pytest.mark.parametrize("text, expected", [("x^3(yx)^2", "xxxyxyx"), ("(ab^2)^2c", "abbabbc"),
                                            ("baacbc", "baacbc"), ('""', "")])
def test_expand_macros(text, expected):
    assert expand_macros(text) == expected


def test_malformed_sequences():
    with pytest.raises(ListUpdateError):
        expand_macros("(ab^2")
    with pytest.raises(ListUpdateError):
        ABC.parse_sequence("abd")
