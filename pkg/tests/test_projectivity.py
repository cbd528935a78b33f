from itertools import combinations, product

import pytest

from listupdate.algorithms import (FunctionAlgorithm, make_bit, make_frequency_count, make_lmtf,
                                   make_mtf, make_transpose, make_ts, roster)
from listupdate.core import BudgetError, UnaryProjection as U, project_sequence, project_state
from listupdate.projectivity import (adjacent_in_state, agile_request_set, agile_swaps,
                                     arc_transitivity_violations, build_containers,
                                     check_m_regular, check_projective, decomposition_gap,
                                     interleavings, is_agile, pairwise_cost, states_up_to)

from conftest import ABC, XY, all_sequences, seq, state

A, B, C = 0, 1, 2


@pytest.fixture
def initial():
    return state("[abc]")


def move_to_back(initial):
    def step(s, history, z):
        return tuple(x for x in s if x != z) + (z,)
    return FunctionAlgorithm("mtb", initial, step)


def test_projective_algorithms_pass(initial):
    for alg in (make_mtf(initial), make_ts(initial), make_frequency_count(initial)):
        result = check_projective(alg, 6)
        assert result.projective and result.counterexample is None and result.maxlen == 6


def test_lmtf_counterexample(initial):
    result = check_projective(make_lmtf(initial), 6)
    assert not result.projective
    # shortest-lexicographic violation
    assert result.counterexample == (seq("cabc"), (B, C))
    # the classical witness is also a violation of the same pair
    lmtf = make_lmtf(initial)
    sigma = seq("baacbc")
    assert project_state(lmtf.state_after(sigma), (B, C)) != \
        project_state(lmtf.state_after(project_sequence(sigma, (B, C))), (B, C))


def test_transpose_counterexample(initial):
    result = check_projective(make_transpose(initial), 8)
    assert not result.projective
    sigma, pair = result.counterexample
    assert (sigma, pair) == (seq("bc"), (A, C))


def test_check_projective_needs_three_items():
    with pytest.raises(ValueError):
        check_projective(make_mtf((0, 1)), 3)


def test_pairwise_cost_examples():
    xy = XY.parse_state("[xy]")
    assert pairwise_cost(make_mtf(xy), seq("yx", XY), (0, 1)) == 2
    assert pairwise_cost(make_lmtf(state("[abc]")), (), (0, 2)) == 0


def test_pairwise_decomposition_short(initial):
    for alg in roster(initial):
        for sigma in all_sequences(3, 5):
            assert decomposition_gap(alg, sigma) == 0


def test_projected_cost_only_sees_the_pair(initial):
    for alg in (make_mtf(initial), make_ts(initial), make_frequency_count(initial),
                make_bit((1, 0, 1), initial)):
        for sigma in all_sequences(3, 6):
            for pair in combinations(range(3), 2):
                assert pairwise_cost(alg, sigma, pair) == \
                    pairwise_cost(alg, project_sequence(sigma, pair), pair)


def test_agile_swaps_leave_pair_adjacent(initial):
    """A swap of adjacent requests that flips a pair leaves that pair adjacent."""
    for alg in roster(initial):
        if not check_projective(alg, 5).projective:
            continue
        states = states_up_to(alg, 6)
        for sigma in all_sequences(3, 6, minlen=2):
            for p in range(len(sigma) - 1):
                x, y = sigma[p], sigma[p + 1]
                if x == y:
                    continue
                swapped = sigma[:p] + (y, x) + sigma[p + 2:]
                if project_state(states[sigma], (x, y)) != project_state(states[swapped], (x, y)):
                    assert adjacent_in_state(states[sigma], x, y), (alg.name, sigma, p)


def test_agility_examples(initial):
    assert is_agile(make_mtf(initial), U(A, 1), U(B, 1))
    for alg in (make_mtf(initial), make_frequency_count(initial)):
        for j in range(4):
            assert not is_agile(alg, U(A, 0), U(B, j))
    assert not is_agile(make_frequency_count(initial), U(A, 1), U(B, 2))
    assert is_agile(make_frequency_count(initial), U(A, 2), U(B, 2))


def test_agile_request_sets(initial):
    assert agile_request_set(make_mtf(initial), U(A, 3), 3) == {3}
    assert agile_request_set(make_ts(initial), U(A, 3), 3) == {2}
    # b_x = 0 gives f(x^2) = 0, so the last request is critical
    for bits in [(0, 0, 0), (0, 1, 0), (0, 1, 1)]:
        assert agile_request_set(make_bit(bits, initial), U(A, 2), 3) == {2}
    # b_x = 1 gives f(x^2) = 1
    assert agile_request_set(make_bit((1, 1, 1), initial), U(A, 2), 3) == {1}


def test_agile_swaps_identify_critical_pair(initial):
    assert agile_swaps(make_mtf(initial), A, 2, B, 2) == {(2, 2)}
    assert agile_swaps(make_ts(initial), A, 3, B, 2) == {(2, 1)}


def test_interleaving_budget():
    assert len(list(interleavings(0, 2, 1, 2))) == 6
    with pytest.raises(BudgetError):
        list(interleavings(0, 12, 1, 12, budget=1000))


def test_mtf_containers(initial):
    report = build_containers(make_mtf(initial), 3)
    top = report.containers[0]
    assert top.kind == "W+"
    assert top.members == {U(x, i) for x in range(3) for i in range(1, 4)}
    assert all(top.F[u] == u.count for u in top.members)
    rest = report.containers[1:]
    assert [c.members for c in rest] == [{U(A, 0)}, {U(B, 0)}, {U(C, 0)}]
    assert all(c.kind == "W2" for c in rest)
    assert not report.diagnostics and not report.flagged_ties


def test_frequency_count_containers(initial):
    report = build_containers(make_frequency_count(initial), 3)
    levels = report.containers[:3]
    assert [c.members for c in levels] == [{U(x, i) for x in range(3)} for i in (3, 2, 1)]
    for c in levels:
        assert c.kind == "W+" and all(c.F[u] == u.count for u in c.members)
    assert [c.order_index for c in report.containers] == list(range(6))


def test_depth_zero_orders_by_initial_list():
    for s in ("[abc]", "[cab]", "[bca]"):
        init = state(s)
        report = build_containers(make_ts(init), 0)
        assert [next(iter(c.members)).item for c in report.containers] == list(init)
        assert all(c.kind == "W2" and len(c.members) == 1 for c in report.containers)


def test_ts_leaves_single_requests_outside_the_agile_container(initial):
    report = build_containers(make_ts(initial), 3)
    main = report.containers[0]
    assert main.kind == "W+"
    assert main.members == {U(x, i) for x in range(3) for i in (2, 3)}
    assert all(main.F[u] == u.count - 1 for u in main.members)
    for x in range(3):
        assert report.container_of(U(x, 1)).kind == "W2"


def test_reversed_algorithm_is_w_minus(initial):
    report = build_containers(move_to_back(initial), 3)
    kinds = {c.kind for c in report.containers if len(c.items) >= 3}
    assert kinds == {"W-"}


def test_containers_are_agile_and_arcs_transitive(initial):
    for alg in (make_mtf(initial), make_ts(initial), make_frequency_count(initial),
                make_bit((0, 1, 0), initial)):
        report = build_containers(alg, 3)
        assert arc_transitivity_violations(report) == []
        for c in report.containers:
            if c.kind == "W2":
                continue
            for u, v in combinations(sorted(c.members), 2):
                if u.item != v.item:
                    assert is_agile(alg, u, v)


def test_between_distinct_items_there_is_an_arc(initial):
    g = build_containers(make_bit((1, 0, 0), initial), 3).graph
    for u, v in combinations(g.nodes, 2):
        if u.item != v.item:
            assert g.has_edge(u, v) or g.has_edge(v, u)
        else:
            assert not g.has_edge(u, v)


def test_regularity_examples(initial):
    assert check_m_regular(make_mtf(initial), 1, 5).regular
    assert check_m_regular(make_ts(initial), 2, 5).regular
    assert not check_m_regular(make_ts(initial), 1, 5).regular
    for M in (1, 2, 3):
        result = check_m_regular(make_frequency_count(initial), M, M + 1)
        assert not result.regular
        assert result.counterexample == ((A,) * (M + 1), B)
