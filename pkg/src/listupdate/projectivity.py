"""Empirical projectivity checks and the container structure of projective algorithms.

Everything here is verified only up to explicit bounds (sequence length,
projection depth); the reports carry those bounds.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import combinations, product
from typing import Iterable, Sequence

import networkx as nx

from .core import (BudgetError, Alphabet, ListUpdateError, UnaryProjection, kendall_distance,
                   project_sequence, project_state)

MAX_INTERLEAVINGS = 10 ** 6


def sequences_shortlex(n: int, maxlen: int):
    """All sequences over ``range(n)`` by length, then lexicographically."""
    for length in range(maxlen + 1):
        yield from product(range(n), repeat=length)


def states_up_to(alg, maxlen: int) -> dict[tuple, tuple]:
    """``S(sigma)`` for every sigma with ``|sigma| <= maxlen``, sharing prefixes."""
    n = alg.n
    root = alg.runner()
    states = {(): root.state}
    level = {(): root}
    for _ in range(maxlen):
        nxt = {}
        for seq, r in level.items():
            for z in range(n):
                child = r.clone()
                states[seq + (z,)] = child.push(z)
                nxt[seq + (z,)] = child
        level = nxt
    return states


@dataclass
class ProjectivityResult:
    projective: bool
    maxlen: int
    counterexample: tuple[tuple[int, ...], tuple[int, int]] | None = None

    def to_json(self, alphabet: Alphabet) -> dict:
        out = {"projective": self.projective, "maxlen": self.maxlen}
        if self.counterexample is not None:
            sigma, (x, y) = self.counterexample
            out["counterexample"] = {"sigma": alphabet.render_sequence(sigma),
                                     "pair": alphabet.render_item(x) + alphabet.render_item(y)}
        return out


def check_projective(alg, maxlen: int) -> ProjectivityResult:
    """Tests ``S_xy(sigma) == S_xy(sigma_xy)``; returns the shortlex-first violation."""
    n = alg.n
    if n < 3:
        raise ListUpdateError("projectivity is only meaningful for at least three items")
    states = states_up_to(alg, maxlen)
    for sigma in sequences_shortlex(n, maxlen):
        s = states[sigma]
        for x, y in combinations(range(n), 2):
            if project_state(s, (x, y)) != project_state(states[project_sequence(sigma, (x, y))], (x, y)):
                return ProjectivityResult(False, maxlen, (sigma, (x, y)))
    return ProjectivityResult(True, maxlen)


def pairwise_cost(alg, sigma: Sequence[int], pair: Iterable[int], trace=None) -> int:
    """Projected cost ``A_xy(sigma)``: pair flips plus accesses where the
    requested one of ``x, y`` sits behind the other."""
    x, y = tuple(pair)
    if x == y:
        raise ListUpdateError("pairwise_cost needs two distinct items")
    if trace is None:
        trace = alg.trajectory(sigma)
    cost = 0
    for t, z in enumerate(sigma):
        before, after = project_state(trace[t], (x, y)), project_state(trace[t + 1], (x, y))
        cost += before != after
        if (z == x and after == (y, x)) or (z == y and after == (x, y)):
            cost += 1
    return cost


# -- agility -------------------------------------------------------------------

def interleavings(x: int, i: int, y: int, j: int, budget: int = MAX_INTERLEAVINGS):
    """Every sequence in perm(x^i y^j), lexicographic by the positions of x."""
    total = math.comb(i + j, i)
    if total > budget:
        raise BudgetError(f"perm({x}^{i} {y}^{j}) has {total} sequences (budget {budget})")
    for xs in combinations(range(i + j), i):
        seq = [y] * (i + j)
        for p in xs:
            seq[p] = x
        yield tuple(seq)


def pair_orders(alg, x: int, i: int, y: int, j: int) -> dict[tuple, tuple[int, int]]:
    return {seq: project_state(alg.state_after(seq), (x, y)) for seq in interleavings(x, i, y, j)}


def is_agile(alg, xi: UnaryProjection, yj: UnaryProjection) -> bool:
    (x, i), (y, j) = xi, yj
    if x == y:
        raise ListUpdateError("agility is defined for projections to distinct items")
    return len(set(pair_orders(alg, x, i, y, j).values())) == 2


def agile_swaps(alg, x: int, i: int, y: int, j: int) -> set[tuple[int, int]]:
    """Pairs ``(q, l)`` such that swapping the adjacent requests ``x_(q)`` and
    ``y_(l)`` in some sigma in perm(x^i y^j) changes ``S_xy``."""
    orders = pair_orders(alg, x, i, y, j)
    found = set()
    for seq, order in orders.items():
        q = l = 0
        for p in range(len(seq) - 1):
            if seq[p] == x:
                q += 1
            else:
                l += 1
            a, b = seq[p], seq[p + 1]
            if a == b or a != x:
                continue  # count each adjacent x,y pair once, from its "xy" form
            swapped = seq[:p] + (b, a) + seq[p + 2:]
            if orders[swapped] != order:
                found.add((q, l + 1))
    return found


def agile_request_set(alg, xi: UnaryProjection, bound_j: int,
                      partners: Iterable[UnaryProjection] | None = None) -> set[int]:
    """Indices ``q`` of requests ``x_(q)`` that take part in an agile pair."""
    x, i = xi
    if partners is None:
        partners = [UnaryProjection(y, j) for y in range(alg.n) if y != x for j in range(bound_j + 1)]
    out = set()
    for y, j in partners:
        out |= {q for q, _ in agile_swaps(alg, x, i, y, j)}
    return out


# -- containers ----------------------------------------------------------------

@dataclass
class Container:
    members: frozenset[UnaryProjection]
    kind: str  # "W+", "W-" or "W2"
    order_index: int
    F: dict[UnaryProjection, int] = field(default_factory=dict)

    @property
    def items(self) -> set[int]:
        return {u.item for u in self.members}


@dataclass
class ContainerReport:
    depth: int
    graph: nx.DiGraph
    containers: list[Container]
    projective: ProjectivityResult | None = None
    flagged_ties: list[tuple[frozenset, frozenset]] = field(default_factory=list)
    diagnostics: list[str] = field(default_factory=list)

    def container_of(self, u: UnaryProjection) -> Container:
        for c in self.containers:
            if u in c.members:
                return c
        raise KeyError(u)

    def to_json(self, alphabet: Alphabet) -> dict:
        def name(u):
            return f"{alphabet.render_item(u.item)}^{u.count}"

        def key(u):
            return (u.item, u.count)

        out = {
            "depth": self.depth,
            "containers": [
                {"members": [name(u) for u in sorted(c.members, key=key)],
                 "class": c.kind,
                 "order_index": c.order_index,
                 "F": {name(u): q for u, q in sorted(c.F.items(), key=lambda kv: key(kv[0]))}}
                for c in self.containers],
            "tie_flagged": bool(self.flagged_ties),
            "diagnostics": list(self.diagnostics),
        }
        if self.projective is not None:
            out.update(self.projective.to_json(alphabet))
        return out


def projection_graph(alg, depth: int) -> nx.DiGraph:
    """Arc ``(x^i, y^j)`` iff some sigma in perm(x^i y^j) leaves x in front of y."""
    g = nx.DiGraph()
    n = alg.n
    g.add_nodes_from(UnaryProjection(x, i) for x in range(n) for i in range(depth + 1))
    for x, y in combinations(range(n), 2):
        for i in range(depth + 1):
            for j in range(depth + 1):
                for order in set(pair_orders(alg, x, i, y, j).values()):
                    if order == (x, y):
                        g.add_edge(UnaryProjection(x, i), UnaryProjection(y, j))
                    else:
                        g.add_edge(UnaryProjection(y, j), UnaryProjection(x, i))
    return g


def _linear_order(g: nx.DiGraph, sccs: list[frozenset]):
    """Linearize reachability between SCCs; incomparable singletons of one
    item are ordered by count, any other tie is flagged."""
    cond = nx.condensation(g, scc=sccs)
    member_key = {c: min((u.item, u.count) for u in cond.nodes[c]["members"]) for c in cond}
    order = list(nx.lexicographical_topological_sort(cond, key=lambda c: member_key[c]))
    closure = nx.transitive_closure_dag(cond)
    flagged = []
    for a, b in combinations(order, 2):
        if closure.has_edge(a, b) or closure.has_edge(b, a):
            continue
        ma, mb = cond.nodes[a]["members"], cond.nodes[b]["members"]
        if len(ma) == 1 and len(mb) == 1 and next(iter(ma)).item == next(iter(mb)).item:
            continue
        flagged.append((frozenset(ma), frozenset(mb)))
    return [frozenset(cond.nodes[c]["members"]) for c in order], flagged


def _critical_position(seq: Sequence[int], item: int, q: int) -> int:
    seen = 0
    for p, z in enumerate(seq):
        if z == item:
            seen += 1
            if seen == q:
                return p
    raise ValueError("missing request")


def _pair_mode(alg, xi: UnaryProjection, yj: UnaryProjection, Fx: int, Fy: int) -> set[str]:
    """Which of 'after' (forward) / 'before' (reversed) rules match every sigma."""
    (x, i), (y, j) = xi, yj
    modes = {"W+", "W-"}
    for seq, order in pair_orders(alg, x, i, y, j).items():
        x_after = _critical_position(seq, x, Fx) > _critical_position(seq, y, Fy)
        x_front = order == (x, y)
        if x_front != x_after:
            modes.discard("W+")
        if x_front != (not x_after):
            modes.discard("W-")
    return modes


def build_containers(alg, depth: int = 4, maxlen: int | None = None) -> ContainerReport:
    diagnostics = []
    projective = None
    if maxlen is not None:
        projective = check_projective(alg, maxlen)
        if not projective.projective:
            diagnostics.append("algorithm is not projective within the checked bound; "
                               "container structure may be contradictory")
    g = projection_graph(alg, depth)
    sccs = [frozenset(c) for c in nx.strongly_connected_components(g)]
    ordered, flagged = _linear_order(g, sccs)
    if flagged:
        diagnostics.append(f"{len(flagged)} incomparable container pair(s) ordered by (item, count)")

    containers = []
    for k, members in enumerate(ordered):
        items = {u.item for u in members}
        if len(items) <= 2:
            containers.append(Container(members, "W2", k))
            continue
        F = {}
        for u in sorted(members):
            partners = [v for v in members if v.item != u.item]
            R = agile_request_set(alg, u, 0, partners=partners)
            if len(R) == 1:
                F[u] = next(iter(R))
            else:
                diagnostics.append(f"R({u.item}^{u.count}) = {sorted(R)} is not a singleton")
        kind = None
        if len(F) == len(members):
            modes = {"W+", "W-"}
            for u, v in combinations(sorted(members), 2):
                if u.item != v.item:
                    modes &= _pair_mode(alg, u, v, F[u], F[v])
            if len(modes) == 1:
                kind = modes.pop()
            else:
                diagnostics.append(f"container {k} follows neither the forward nor the reversed "
                                   f"critical-request rule consistently")
        containers.append(Container(members, kind or "mixed", k, F))
    return ContainerReport(depth, g, containers, projective, flagged, diagnostics)


def arc_transitivity_violations(report: ContainerReport) -> list[tuple]:
    g = report.graph
    bad = []
    for u, v in g.edges:
        for w in g.successors(v):
            if w.item not in (u.item, v.item) and not g.has_edge(u, w):
                bad.append((u, v, w))
    return bad


# -- regularity ----------------------------------------------------------------

@dataclass
class RegularityResult:
    regular: bool
    M: int
    maxlen: int
    counterexample: tuple[tuple[int, ...], int] | None = None


def check_m_regular(alg, M: int, maxlen: int) -> RegularityResult:
    """After ``sigma x^M`` item ``x`` must lead the list, for all ``|sigma| <= maxlen``."""
    if M < 1:
        raise ListUpdateError("M must be positive")
    n = alg.n
    root = alg.runner()
    level = {(): root}
    for length in range(maxlen + 1):
        for sigma in sorted(level):
            for x in range(n):
                r = level[sigma].clone()
                for _ in range(M):
                    r.push(x)
                if r.state[0] != x:
                    return RegularityResult(False, M, maxlen, (sigma, x))
        if length < maxlen:
            nxt = {}
            for sigma, r in level.items():
                for z in range(n):
                    child = r.clone()
                    child.push(z)
                    nxt[sigma + (z,)] = child
            level = nxt
    return RegularityResult(True, M, maxlen)


def adjacent_in_state(state: Sequence[int], x: int, y: int) -> bool:
    return abs(state.index(x) - state.index(y)) == 1


def decomposition_gap(alg, sigma: Sequence[int]) -> int:
    """Serve cost minus the sum of projected pair costs (zero when consistent)."""
    trace = alg.trajectory(sigma)
    total = sum(kendall_distance(trace[t], trace[t + 1]) + trace[t + 1].index(z)
                for t, z in enumerate(sigma))
    pairs = combinations(range(alg.n), 2)
    return total - sum(pairwise_cost(alg, sigma, p, trace) for p in pairs)
