"""Offline optimum: exact DP over permutations, two-item DP, pairwise bound."""
from __future__ import annotations

from functools import lru_cache
from itertools import permutations
from typing import Sequence

import numpy as np

from .core import BudgetError, ListUpdateError, kendall_distance, project_sequence, project_state, validate_state

MAX_EXACT_ITEMS = 6
# per-request cost is at most (n-1) + n(n-1)/2; keep totals far from int64 limits
_COST_LIMIT = 2 ** 62


@lru_cache(maxsize=None)
def permutation_tables(n: int):
    """All permutations of ``range(n)`` with their pairwise Kendall distances
    and per-item access costs."""
    perms = list(permutations(range(n)))
    index = {p: k for k, p in enumerate(perms)}
    pos = np.array([[p.index(x) for x in range(n)] for p in perms], dtype=np.int64)
    # inversions between p and q = pairs (x, y) whose relative order differs
    dist = np.zeros((len(perms), len(perms)), dtype=np.int64)
    for x in range(n):
        for y in range(x + 1, n):
            before = pos[:, x] < pos[:, y]
            dist += before[:, None] != before[None, :]
    return perms, index, dist, pos


def opt_exact(initial: Sequence[int], sigma: Sequence[int], max_items: int = MAX_EXACT_ITEMS) -> int:
    n = len(initial)
    validate_state(tuple(initial), n)
    if n > max_items:
        raise BudgetError(
            f"opt_exact over {n} items needs {n}! states per request (guard n <= {max_items}); "
            f"use opt_pairwise_lower for a lower bound")
    if len(sigma) * (n - 1 + n * (n - 1) // 2) >= _COST_LIMIT:
        raise BudgetError("sequence too long for exact integer accounting")
    if not sigma:
        return 0
    perms, index, dist, pos = permutation_tables(n)
    dp = dist[index[tuple(initial)]] + pos[:, sigma[0]]
    for z in sigma[1:]:
        dp = (dp[:, None] + dist).min(axis=0) + pos[:, z]
    return int(dp.min())


def opt_two_items(initial: Sequence[int], sigma: Sequence[int]) -> int:
    """Two-state DP; ``initial`` is a two-item state such as ``(x, y)``."""
    front, back = initial
    if front == back:
        raise ListUpdateError("opt_two_items needs two distinct items")
    a, b = 0, 1  # cost of ending with `front` / `back` at the front
    for z in sigma:
        if z not in (front, back):
            raise ListUpdateError(f"request {z} is not one of the two items {tuple(initial)}")
        a, b = min(a, b + 1), min(b, a + 1)
        if z == front:
            b += 1
        else:
            a += 1
    return min(a, b) if sigma else 0


def opt_pairwise_lower(initial: Sequence[int], sigma: Sequence[int]) -> int:
    """Sum over item pairs of the two-item optimum on the projected instance."""
    n = len(initial)
    total = 0
    for x in range(n):
        for y in range(x + 1, n):
            total += opt_two_items(project_state(initial, (x, y)), project_sequence(sigma, (x, y)))
    return total


def opt_brute_force(initial: Sequence[int], sigma: Sequence[int]) -> int:
    """Enumerates every state trajectory; a slow reference for tiny instances."""
    states = list(permutations(sorted(initial)))
    best = {tuple(initial): 0}
    for z in sigma:
        best = {s: min(c + kendall_distance(p, s) for p, c in best.items()) + s.index(z)
                for s in states}
    return min(best.values())
