"""Adversarial two-item construction for the 1.6 lower bound on projective algorithms.

Items are ``X = 0`` and ``Y = 1`` (rendered ``x``/``y``); the list starts in
``[yx]``.  All costs and ratios are exact.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, NamedTuple, Sequence

import numpy as np

from .algorithms import (CriticalRequestAlgorithm, CriticalRequestFunction, RandomizedAlgorithm,
                         as_randomized, expected_cost)
from .core import Alphabet, BudgetError, ListUpdateError, kendall_distance, request_costs
from .offline import opt_two_items

X, Y = 0, 1
XY = Alphabet(("x", "y"))
INITIAL = (Y, X)
MAX_LAMBDA = 10 ** 6


@dataclass(frozen=True)
class AdversaryParams:
    M_hat: int
    K: int
    T: int
    b: int = 0

    def __post_init__(self):
        if self.M_hat < 3:
            raise ListUpdateError(f"M_hat must be at least 3, got {self.M_hat}")
        if self.K < 1 or self.T < 1:
            raise ListUpdateError("K and T must be positive")
        if self.b < 0:
            raise ListUpdateError("b must be non-negative")

    @property
    def H(self) -> int:
        return 4 * self.M_hat + 4

    @property
    def size(self) -> int:
        return self.H ** 2 * self.T

    @property
    def X_bound(self) -> int:
        return self.H * (self.K + self.T) + self.M_hat

    @property
    def Y_bound(self) -> int:
        return self.K * self.H + self.M_hat


def phi_segments(M_hat: int) -> list[tuple[int, ...]]:
    m = M_hat
    return [(X,) * m, (Y,) + (X,) * m, (Y,) * m, (X,) + (Y,) * m,
            (X,) * m, (Y, X, Y) + (X,) * m, (Y,) * m, (X, Y, X) + (Y,) * m]


def build_phi(M_hat: int) -> tuple[int, ...]:
    if M_hat < 3:
        raise ListUpdateError(f"M_hat must be at least 3, got {M_hat}")
    return tuple(z for seg in phi_segments(M_hat) for z in seg)


def lambda_sequence(params: AdversaryParams, t: int, h: int) -> tuple[int, ...]:
    m = params.M_hat
    return (X,) * (m + t) + (Y,) * (m + h) + build_phi(m) * params.K


def iter_lambda(params: AdversaryParams) -> Iterator[tuple[int, int, tuple[int, ...]]]:
    """Yields ``(t, h, lambda)`` for the whole support, t-major."""
    H = params.H
    for t in range(H * params.T):
        for h in range(H):
            yield t, h, lambda_sequence(params, t, h)


def build_lambda(params: AdversaryParams, max_size: int = MAX_LAMBDA):
    """Uniform distribution over the adversary's sequences, as ``[(lambda, weight)]``."""
    if params.size > max_size:
        raise BudgetError(f"|Lambda| = {params.size} exceeds the guard {max_size}")
    w = Fraction(1, params.size)
    return [(seq, w) for _, _, seq in iter_lambda(params)]


# -- cost attribution -----------------------------------------------------------

def _attribute(alg, params: AdversaryParams, out: dict, weight):
    for _, _, lam in iter_lambda(params):
        i = j = 0
        r = alg.runner()
        prev = r.state
        for z in lam:
            cur = r.push(z)
            c = (kendall_distance(prev, cur) if cur != prev else 0) + cur.index(z)
            if c:
                out[(i, j)] = out.get((i, j), 0) + weight * c
            else:
                out.setdefault((i, j), 0)
            prev = cur
            if z == X:
                i += 1
            else:
                j += 1


def per_state_costs(alg, params: AdversaryParams) -> dict[tuple[int, int], int | Fraction]:
    """Sum over lambda of the cost of the request served from each state (i, j).

    Deterministic algorithms give integer sums; a randomized algorithm gives
    the exact expectation.
    """
    out: dict = {}
    if isinstance(alg, RandomizedAlgorithm):
        for atom, w in alg.atoms:
            _attribute(atom, params, out, w)
    else:
        _attribute(alg, params, out, 1)
    return out


# -- good states -----------------------------------------------------------------

def _prefix_counts(M_hat: int):
    phi = np.array(build_phi(M_hat))
    is_x = np.concatenate([[0], np.cumsum(phi == X)])[:-1]
    is_y = np.concatenate([[0], np.cumsum(phi == Y)])[:-1]
    return is_x, is_y  # x/y counts in each proper prefix of phi


def good_states(params: AdversaryParams) -> set[tuple[int, int]]:
    """States reached by exactly one ``x^{M+t} y^{M+h} phi^k sigma`` for every
    proper prefix ``sigma`` of phi, counted by direct enumeration."""
    M, H, K, T = params.M_hat, params.H, params.K, params.T
    px, py = _prefix_counts(M)
    t = np.arange(H * T)[:, None, None, None]
    h = np.arange(H)[None, :, None, None]
    k = np.arange(K)[None, None, :, None]
    p = np.arange(2 * H)[None, None, None, :]
    shape = (H * T, H, K, 2 * H)
    i = np.broadcast_to(M + t + k * H + px[p], shape).ravel()
    j = np.broadcast_to(M + h + k * H + py[p], shape).ravel()
    pp = np.broadcast_to(p, shape).ravel()
    jspan = int(j.max()) + 1
    keys = (i.astype(np.int64) * jspan + j) * (2 * H) + pp
    uniq, counts = np.unique(keys, return_counts=True)
    single = uniq[counts == 1] // (2 * H)  # (i, j) codes with one witness for that prefix
    states, per_state = np.unique(single, return_counts=True)
    good = states[per_state == 2 * H]
    return {(int(c // jspan), int(c % jspan)) for c in good}


def good_state_lower_bound(params: AdversaryParams) -> int:
    H = params.H
    # vacuous (clamped to 0) unless K >= 1 and T >= 2
    return max(0, (params.K * H - H + 1) * (H * params.T - 2 * H + 1))


def solve_state(params: AdversaryParams, i: int, j: int, prefix_len: int):
    """Unique ``(h, k, t)`` with ``x^{M+t} y^{M+h} phi^k sigma`` ending at
    ``(i, j)`` where ``sigma`` is phi's prefix of the given length, else None."""
    M, H = params.M_hat, params.H
    phi = build_phi(M)
    sx = sum(1 for z in phi[:prefix_len] if z == X)
    sy = prefix_len - sx
    hk = j - M - sy
    if not 0 <= hk < params.K * H:
        return None
    k, h = divmod(hk, H)
    t = i - M - k * H - sx
    if not 0 <= t < H * params.T:
        return None
    return h, k, t


# -- offset rows ------------------------------------------------------------------

class Table1Row(NamedTuple):
    f_x: int
    f_y: int
    segments: tuple[str, ...]
    total: int


def offset_algorithm(f_x: int, f_y: int, initial=INITIAL) -> CriticalRequestAlgorithm:
    """Two-item critical request algorithm with constant relative offsets."""
    return CriticalRequestAlgorithm(CriticalRequestFunction.per_item((f_x, f_y)), initial,
                                    f"f=({f_x},{f_y})")


def table1_row(f_x: int, f_y: int, M_hat: int) -> Table1Row:
    """Per-request costs of serving phi from a good state, segment by segment."""
    if not (0 <= f_x < M_hat and 0 <= f_y < M_hat):
        raise ListUpdateError(f"offsets must lie in 0..{M_hat - 1}")
    phi = build_phi(M_hat)
    lead = (X,) * M_hat + (Y,) * M_hat
    costs = request_costs(offset_algorithm(f_x, f_y), lead + phi)[len(lead):]
    segments, pos = [], 0
    for seg in phi_segments(M_hat):
        segments.append("".join(map(str, costs[pos:pos + len(seg)])))
        pos += len(seg)
    return Table1Row(f_x, f_y, tuple(segments), sum(costs))


# -- expected ratio ----------------------------------------------------------------

def lambda_opt_total(params: AdversaryParams, initial=INITIAL) -> int:
    return sum(opt_two_items(initial, lam) for _, _, lam in iter_lambda(params))


def expected_ratio(alg, params: AdversaryParams, initial=INITIAL) -> Fraction:
    """``sum E[A(lambda)] / sum (OPT(lambda) + b)`` over the adversary's support."""
    ralg = as_randomized(alg)
    if len(ralg.initial) != 2:
        raise ListUpdateError("the adversary works on the two-item list {x, y}")
    online = Fraction(0)
    for _, _, lam in iter_lambda(params):
        online += expected_cost(ralg, lam)
    offline = lambda_opt_total(params, initial) + params.b * params.size
    return online / offline


# -- irregularity probes ------------------------------------------------------------

class Probes(NamedTuple):
    x_then_y: list[tuple[int, ...]]        # x^i y^Y, 1 <= i <= X
    y_then_x: list[tuple[int, ...]]        # y^j x^X, 1 <= j <= Y
    x_y_x: list[tuple[int, ...]]           # x^i y^j x^M, 1 <= i <= X, 1 <= j <= Y


def irregularity_probes(X_max: int, Y_max: int, M_hat: int) -> Probes:
    return Probes(
        [(X,) * i + (Y,) * Y_max for i in range(1, X_max + 1)],
        [(Y,) * j + (X,) * X_max for j in range(1, Y_max + 1)],
        [(X,) * i + (Y,) * j + (X,) * M_hat for i in range(1, X_max + 1) for j in range(1, Y_max + 1)],
    )


@dataclass
class ProbeRow:
    family: str
    sigma: tuple[int, ...]
    expected_cost: Fraction
    opt: int


def evaluate_probes(alg, probes: Probes, initial=(X, Y)) -> list[ProbeRow]:
    ralg = as_randomized(alg)
    rows = []
    for family, seqs in probes._asdict().items():
        for sigma in seqs:
            rows.append(ProbeRow(family, sigma, expected_cost(ralg, sigma),
                                 opt_two_items(initial, sigma)))
    return rows


def probe_family_sums(rows: Sequence[ProbeRow]) -> dict[str, tuple[Fraction, int]]:
    """Per family: total expected online cost and total OPT."""
    out: dict[str, tuple[Fraction, int]] = {}
    for r in rows:
        a, o = out.get(r.family, (Fraction(0), 0))
        out[r.family] = (a + r.expected_cost, o + r.opt)
    return out


EVENTS = ("regular", "x_first", "y_first", "W-", "W2", "fx_large", "fy_large", "undetermined")


def regularity_event(report, x: int, i: int, y: int, j: int, M_hat: int) -> str:
    """Which way an atom with this container report fails (or meets) the
    in-state regularity condition at ``(i, j)``."""
    from .core import UnaryProjection

    cx = report.container_of(UnaryProjection(x, i))
    cy = report.container_of(UnaryProjection(y, j))
    if cx.order_index < cy.order_index:
        return "x_first"
    if cx.order_index > cy.order_index:
        return "y_first"
    if cx.kind in ("W-", "W2"):
        return cx.kind
    if cx.kind != "W+":
        return "undetermined"
    fx = i - cx.F[UnaryProjection(x, i)]
    fy = j - cx.F[UnaryProjection(y, j)]
    if fx >= M_hat:
        return "fx_large"
    if fy >= M_hat:
        return "fy_large"
    return "regular"


def event_profile(alg, M_hat: int, i_max: int, j_max: int, x: int = 0, y: int = 1) -> dict[str, Fraction]:
    """Sum over ``1 <= i <= i_max, 1 <= j <= j_max`` of each event's probability.

    Atoms must act on at least three items (the W2 case needs a third item).
    """
    from .projectivity import build_containers

    ralg = as_randomized(alg)
    depth = max(i_max, j_max)
    totals = {e: Fraction(0) for e in EVENTS}
    for atom, w in ralg.atoms:
        report = build_containers(atom, depth)
        for i in range(1, i_max + 1):
            for j in range(1, j_max + 1):
                totals[regularity_event(report, x, i, y, j, M_hat)] += w
    return totals
