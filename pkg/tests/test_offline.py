from itertools import permutations

import pytest
from hypothesis import given, settings, strategies as st

from listupdate.algorithms import roster
from listupdate.core import BudgetError, serve_cost
from listupdate.lowerbound import INITIAL, build_phi
from listupdate.offline import opt_brute_force, opt_exact, opt_pairwise_lower, opt_two_items

from conftest import XY, all_sequences, seq, state


def test_opt_examples():
    assert opt_exact(state("[abc]"), seq("cbbc")) == 4
    assert opt_brute_force(state("[abc]"), seq("cbbc")) == 4
    assert opt_exact(INITIAL, build_phi(3)) == 10
    assert opt_exact(state("[abc]"), ()) == 0


def test_paid_exchanges_help_on_cbbc():
    # serving cbbc without rearranging costs 2+1+1+2 = 6, more than OPT
    s = state("[abc]")
    assert sum(s.index(z) for z in seq("cbbc")) == 6 > opt_exact(s, seq("cbbc"))


def test_two_item_examples():
    xy, yx = XY.parse_state("[xy]"), XY.parse_state("[yx]")
    assert opt_two_items(xy, seq("y", XY)) == 1
    assert opt_two_items(yx, seq("x^3y^3", XY) + build_phi(3)) == 12
    assert opt_two_items(yx, seq("x^5y^4", XY) + build_phi(3)) == 12
    for k in range(8):
        assert opt_two_items(xy, (0,) * k) == 0


def test_pairwise_examples():
    assert opt_pairwise_lower(state("[abc]"), seq("cbbc")) == 4
    assert opt_pairwise_lower(state("[abc]"), ()) == 0
    ab = (0, 1)
    for sigma in all_sequences(2, 8):
        assert opt_pairwise_lower(ab, sigma) == opt_two_items(ab, sigma)


def test_exact_matches_brute_force():
    for initial in permutations(range(3)):
        for sigma in all_sequences(3, 4):
            assert opt_exact(initial, sigma) == opt_brute_force(initial, sigma)


def test_two_item_dp_matches_exact_exhaustively():
    for initial in [(0, 1), (1, 0)]:
        for sigma in all_sequences(2, 12):
            assert opt_two_items(initial, sigma) == opt_exact(initial, sigma)


@pytest.mark.parametrize("n, maxlen", [(3, 6), (4, 6)])
def test_pairwise_bound_exhaustive(n, maxlen):
    # the initial state only relabels items, so one initial state covers all
    initial = tuple(range(n))
    for sigma in all_sequences(n, maxlen):
        assert opt_pairwise_lower(initial, sigma) <= opt_exact(initial, sigma)


@settings(max_examples=60, deadline=None)
@given(st.permutations([0, 1, 2, 3]).map(tuple), st.lists(st.integers(0, 3), max_size=14).map(tuple))
def test_opt_dominated_by_every_roster_algorithm(initial, sigma):
    opt = opt_exact(initial, sigma)
    for alg in roster(initial):
        assert opt <= serve_cost(alg, sigma)


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(0, 3), max_size=10).map(tuple), st.lists(st.integers(0, 3), max_size=5).map(tuple))
def test_opt_monotone_under_extension(sigma, tau):
    initial = (1, 3, 0, 2)
    assert opt_exact(initial, sigma + tau) >= opt_exact(initial, sigma)


def test_budget_guard():
    with pytest.raises(BudgetError, match="opt_pairwise_lower"):
        opt_exact(tuple(range(7)), (0, 1))
    # moving the last item k places forward costs k + 2(6 - k); best at k = 6
    assert opt_exact(tuple(range(7)), (6, 6), max_items=7) == 6
