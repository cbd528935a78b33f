"""Items, list states, request sequences and the paid-exchange cost engine.

Items are small integers ``0..n-1``.  A list state is a tuple of items,
front first; a request sequence is a tuple of items.  The textual forms
(``"[abc]"`` for states, ``"baacbc"`` for sequences) are handled by
:class:`Alphabet`.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, NamedTuple, Protocol, Sequence

ListState = tuple[int, ...]
RequestSequence = tuple[int, ...]


class ListUpdateError(ValueError):
    """Base class for all errors raised by this package."""


class InvalidStateError(ListUpdateError):
    pass


class BudgetError(ListUpdateError):
    """A guard on enumeration size or state-space size was exceeded."""


class UnaryProjection(NamedTuple):
    """``item^count``; ``x^0`` and ``y^0`` differ when ``x != y``."""

    item: int
    count: int


@dataclass(frozen=True)
class Alphabet:
    symbols: tuple[str, ...]

    def __post_init__(self):
        if len(self.symbols) < 2:
            raise ListUpdateError("an alphabet needs at least two items")
        if len(set(self.symbols)) != len(self.symbols):
            raise ListUpdateError(f"duplicate symbols in alphabet {self.symbols}")

    @classmethod
    def standard(cls, n: int) -> "Alphabet":
        if n <= 26:
            return cls(tuple(chr(ord("a") + k) for k in range(n)))
        return cls(tuple(f"u{k}" for k in range(n)))

    @classmethod
    def of(cls, symbols: Iterable[str]) -> "Alphabet":
        return cls(tuple(symbols))

    def __len__(self) -> int:
        return len(self.symbols)

    @property
    def letters(self) -> bool:
        return all(len(s) == 1 for s in self.symbols)

    def index(self, symbol: str) -> int:
        try:
            return self.symbols.index(symbol)
        except ValueError:
            raise ListUpdateError(
                f"unknown item {symbol!r}; alphabet is {''.join(self.symbols)}") from None

    def render_item(self, x: int) -> str:
        return self.symbols[x]

    def render_state(self, state: Sequence[int]) -> str:
        sep = "" if self.letters else ","
        return "[" + sep.join(self.symbols[x] for x in state) + "]"

    def render_sequence(self, sigma: Sequence[int]) -> str:
        sep = "" if self.letters else ","
        return sep.join(self.symbols[x] for x in sigma)

    def parse_sequence(self, text: str) -> RequestSequence:
        if self.letters:
            return tuple(self.index(ch) for ch in expand_macros(text))
        tokens = [t.strip() for t in text.split(",") if t.strip()]
        return tuple(self.index(t) for t in tokens)

    def parse_state(self, text: str) -> ListState:
        state = tuple(self.index(s) for s in _state_tokens(text))
        validate_state(state, len(self))
        return state


def _state_tokens(text: str) -> list[str]:
    body = text.strip()
    if body.startswith("[") and body.endswith("]"):
        body = body[1:-1]
    if "," in body:
        return [t.strip() for t in body.split(",") if t.strip()]
    return list(body.replace(" ", ""))


def parse_state(text: str) -> tuple[Alphabet, ListState]:
    """Parse ``"[cab]"`` and infer the alphabet from its (sorted) symbols."""
    tokens = _state_tokens(text)
    if len(set(tokens)) != len(tokens):
        raise InvalidStateError(f"{text!r} repeats an item")
    key = (lambda s: (len(s), int(s[1:]))) if all(re.fullmatch(r"u\d+", t) for t in tokens) else None
    alphabet = Alphabet(tuple(sorted(tokens, key=key)))
    return alphabet, alphabet.parse_state(text)


_GROUP = re.compile(r"\(([^()]*)\)\^(\d+)")
_SINGLE = re.compile(r"([A-Za-z])\^(\d+)")


def expand_macros(text: str) -> str:
    """Expand repetition macros, e.g. ``x^3(yx)^2`` -> ``xxxyxyx``."""
    out = text.strip().replace(" ", "")
    if out in ('""', "''", "∅"):
        return ""
    while True:
        expanded = _GROUP.sub(lambda m: _SINGLE.sub(lambda s: s[1] * int(s[2]), m[1]) * int(m[2]), out)
        expanded = _SINGLE.sub(lambda m: m[1] * int(m[2]), expanded)
        if expanded == out:
            break
        out = expanded
    if any(ch in out for ch in "()^"):
        raise ListUpdateError(f"malformed sequence {text!r}")
    return out


def validate_state(state: Sequence[int], n: int) -> None:
    if len(state) != n or set(state) != set(range(n)):
        raise InvalidStateError(f"{tuple(state)} is not a permutation of {n} items")


def kendall_distance(a: Sequence[int], b: Sequence[int]) -> int:
    """Number of item pairs ordered differently in ``a`` and ``b``."""
    if len(a) != len(b) or set(a) != set(b):
        raise ListUpdateError("kendall_distance needs two states over the same items")
    if tuple(a) == tuple(b):
        return 0
    pos = {x: k for k, x in enumerate(b)}
    mapped = [pos[x] for x in a]
    n = len(mapped)
    return sum(1 for i in range(n) for j in range(i + 1, n) if mapped[i] > mapped[j])


def access_cost(state: Sequence[int], x: int) -> int:
    """Partial cost model: the number of items in front of ``x``."""
    return state.index(x)


def project_sequence(sigma: Sequence[int], items: Iterable[int]) -> RequestSequence:
    keep = set(items)
    return tuple(z for z in sigma if z in keep)


def project_state(state: Sequence[int], pair: Iterable[int]) -> tuple[int, int]:
    x, y = tuple(pair)
    if x == y:
        raise ListUpdateError("project_state needs two distinct items")
    return (x, y) if state.index(x) < state.index(y) else (y, x)


def item_pairs(n: int):
    return combinations(range(n), 2)


class Runner(Protocol):
    """Incremental evaluation of a state function ``S(sigma)``."""

    state: ListState

    def push(self, z: int) -> ListState: ...

    def clone(self) -> "Runner": ...


class Served(NamedTuple):
    cost: int
    trace: list[ListState]


def serve(alg, sigma: Sequence[int]) -> Served:
    """Serve ``sigma``; each request costs the rearrangement plus the access."""
    runner = alg.runner()
    n = len(runner.state)
    check = not getattr(runner, "trusted", False)
    prev = runner.state
    if check:
        validate_state(prev, n)
    trace = [prev]
    cost = 0
    for z in sigma:
        cur = runner.push(z)
        if check:
            validate_state(cur, n)
        cost += kendall_distance(prev, cur) + cur.index(z)
        trace.append(cur)
        prev = cur
    return Served(cost, trace)


def serve_cost(alg, sigma: Sequence[int]) -> int:
    """Like :func:`serve` but without keeping the trace."""
    runner = alg.runner()
    n = len(runner.state)
    check = not getattr(runner, "trusted", False)
    prev = runner.state
    cost = 0
    for z in sigma:
        cur = runner.push(z)
        if check:
            validate_state(cur, n)
        if cur != prev:
            cost += kendall_distance(prev, cur)
        cost += cur.index(z)
        prev = cur
    return cost


def request_costs(alg, sigma: Sequence[int]) -> list[int]:
    """Per-request costs (rearrangement + access) of serving ``sigma``."""
    trace = serve(alg, sigma).trace
    return [kendall_distance(trace[t], trace[t + 1]) + trace[t + 1].index(z)
            for t, z in enumerate(sigma)]
