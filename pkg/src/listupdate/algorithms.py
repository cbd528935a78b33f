"""Deterministic and randomized list update algorithms.

Every deterministic algorithm is a state function ``S(sigma)`` evaluated
incrementally through a runner (``runner().push(z)``).  Critical request
algorithms are described by their relative critical index ``f``; the
classical rules without such a description (TRANSPOSE, FREQUENCY COUNT,
LMTF) are simulated directly from the request history.
"""
from __future__ import annotations

import csv
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from pathlib import Path
from typing import Callable, Iterable, Mapping, Sequence

import numpy as np

from .core import Alphabet, ListState, ListUpdateError, serve_cost, validate_state

MAX_BIT_ITEMS = 16


class DeterministicAlgorithm:
    name: str
    initial: ListState

    def runner(self):
        raise NotImplementedError

    @property
    def n(self) -> int:
        return len(self.initial)

    def state_after(self, sigma: Sequence[int]) -> ListState:
        r = self.runner()
        for z in sigma:
            r.push(z)
        return r.state

    def trajectory(self, sigma: Sequence[int]) -> list[ListState]:
        r = self.runner()
        out = [r.state]
        for z in sigma:
            out.append(r.push(z))
        return out

    def __repr__(self):
        return f"<{type(self).__name__} {self.name} from {self.initial}>"


class _HistoryRunner:
    def __init__(self, alg, state, history):
        self.alg = alg
        self.state = state
        self.history = history

    def push(self, z):
        self.state = tuple(self.alg.step(self.state, tuple(self.history), z))
        self.history.append(z)
        return self.state

    def clone(self):
        return _HistoryRunner(self.alg, self.state, list(self.history))


class FunctionAlgorithm(DeterministicAlgorithm):
    """Wraps ``step(state, history, z) -> next state``; output is validated."""

    def __init__(self, name: str, initial: Sequence[int], step: Callable):
        self.name = name
        self.initial = tuple(initial)
        self.step = step

    def runner(self):
        return _HistoryRunner(self, self.initial, [])


# -- critical request algorithms ------------------------------------------------

class CriticalRequestFunction:
    """Relative critical index ``f(x^i)``; ``F(x^i) = max(i - f(x^i), 0)``.

    ``F(x^0)`` is always 0, so an unrequested item has no critical request.
    """

    def __init__(self, f: Callable[[int, int], int], label: str = "f"):
        self._f = f
        self.label = label

    def relative(self, item: int, i: int) -> int:
        if i == 0:
            return 0
        value = self._f(item, i)
        if value < 0:
            raise ListUpdateError(f"negative relative index f={value} at item {item}, i={i}")
        return value

    def __call__(self, item: int, i: int) -> int:
        if i == 0:
            return 0
        return max(i - self.relative(item, i), 0)

    @classmethod
    def constant(cls, f: int) -> "CriticalRequestFunction":
        return cls(lambda item, i: f, label=f"f={f}")

    @classmethod
    def per_item(cls, offsets: Sequence[int]) -> "CriticalRequestFunction":
        offsets = tuple(offsets)
        return cls(lambda item, i: offsets[item], label=f"f={offsets}")

    @classmethod
    def from_table(cls, table: Mapping[tuple[int, int], int],
                   default: Mapping[int, int] | int = 0) -> "CriticalRequestFunction":
        """``table[(item, i)] = f``; ``default`` covers every ``i`` not listed."""
        table = dict(table)

        def f(item, i):
            if (item, i) in table:
                return table[(item, i)]
            return default if isinstance(default, int) else default.get(item, 0)

        return cls(f, label="table")

    @classmethod
    def from_critical_table(cls, table: Mapping[tuple[int, int], int],
                            default: Mapping[int, int] | int = 0) -> "CriticalRequestFunction":
        """Same as :meth:`from_table` but ``table`` holds absolute ``F`` values."""
        for (item, i), F in table.items():
            if not 0 <= F <= i:
                raise ListUpdateError(f"F({item}^{i})={F} must lie in 0..{i}")
        return cls.from_table({k: k[1] - F for k, F in table.items()}, default)

    @classmethod
    def from_csv(cls, path: str | Path, alphabet: Alphabet) -> "CriticalRequestFunction":
        """Rows ``item,i,f``; ``i`` may be ``*`` for the item's default."""
        table, default = {}, {}
        with open(path, newline="") as fh:
            for row in csv.reader(fh):
                row = [c.strip() for c in row]
                if not row or not row[0] or row[0].startswith("#"):
                    continue
                if row[:3] == ["item", "i", "f"]:
                    continue
                if len(row) != 3:
                    raise ListUpdateError(f"bad row {row} in {path}; expected item,i,f")
                item = alphabet.index(row[0])
                if row[1] in ("*", "default"):
                    default[item] = int(row[2])
                else:
                    table[(item, int(row[1]))] = int(row[2])
        return cls.from_table(table, default)


def critical_request_state(F: CriticalRequestFunction, initial: Sequence[int],
                           sigma: Sequence[int]) -> ListState:
    """List state after ``sigma`` under the critical request rule for ``F``."""
    times: dict[int, list[int]] = {x: [] for x in initial}
    for t, z in enumerate(sigma):
        times[z].append(t)
    critical, rest = [], []
    for x in initial:
        q = F(x, len(times[x]))
        if q > 0:
            critical.append((times[x][q - 1], x))
        else:
            rest.append(x)
    critical.sort(reverse=True)
    return tuple(x for _, x in critical) + tuple(rest)


class _CriticalRunner:
    trusted = True

    def __init__(self, alg, times, crit, t, state):
        self.alg = alg
        self.times = times
        self.crit = crit
        self.t = t
        self.state = state

    def push(self, z):
        ts = self.times[z]
        ts.append(self.t)
        self.t += 1
        q = self.alg.F(z, len(ts))
        self.crit[z] = ts[q - 1] if q > 0 else -1
        crit = self.crit
        with_crit = sorted((x for x in self.alg.initial if crit[x] >= 0), key=lambda x: -crit[x])
        if len(with_crit) < len(crit):
            with_crit.extend(x for x in self.alg.initial if crit[x] < 0)
        self.state = tuple(with_crit)
        return self.state

    def clone(self):
        return _CriticalRunner(self.alg, [list(ts) for ts in self.times], list(self.crit),
                               self.t, self.state)


class CriticalRequestAlgorithm(DeterministicAlgorithm):
    def __init__(self, F: CriticalRequestFunction, initial: Sequence[int], name: str = "crf"):
        self.F = F
        self.initial = tuple(initial)
        self.name = name
        validate_state(self.initial, len(self.initial))

    def runner(self):
        n = self.n
        return _CriticalRunner(self, [[] for _ in range(n)], [-1] * n, 0, self.initial)

    def state_after(self, sigma):
        return critical_request_state(self.F, self.initial, sigma)


def make_crf(F: CriticalRequestFunction, initial: Sequence[int], name: str = "crf"):
    return CriticalRequestAlgorithm(F, initial, name)


def make_mtf(initial: Sequence[int]) -> CriticalRequestAlgorithm:
    return CriticalRequestAlgorithm(CriticalRequestFunction.constant(0), initial, "mtf")


def make_ts(initial: Sequence[int]) -> CriticalRequestAlgorithm:
    # f = 1 for i > 0: the second-to-last request is critical
    return CriticalRequestAlgorithm(CriticalRequestFunction.constant(1), initial, "ts")


def bit_function(bits: Sequence[int]) -> CriticalRequestFunction:
    bits = tuple(bits)
    if any(b not in (0, 1) for b in bits):
        raise ListUpdateError(f"bits must be 0/1, got {bits}")
    return CriticalRequestFunction(lambda item, i: (bits[item] + i) % 2,
                                   label="bits=" + "".join(map(str, bits)))


def make_bit(bits: Sequence[int], initial: Sequence[int]) -> CriticalRequestAlgorithm:
    if len(bits) != len(initial):
        raise ListUpdateError(f"need one bit per item: {len(bits)} bits for {len(initial)} items")
    return CriticalRequestAlgorithm(bit_function(bits), initial,
                                    "bit[" + "".join(map(str, bits)) + "]")


# -- algorithms simulated from history -----------------------------------------

class _TransposeRunner:
    trusted = True

    def __init__(self, state):
        self.state = state

    def push(self, z):
        s = list(self.state)
        k = s.index(z)
        if k > 0:
            s[k - 1], s[k] = s[k], s[k - 1]
            self.state = tuple(s)
        return self.state

    def clone(self):
        return _TransposeRunner(self.state)


class Transpose(DeterministicAlgorithm):
    def __init__(self, initial):
        self.initial = tuple(initial)
        self.name = "transpose"

    def runner(self):
        return _TransposeRunner(self.initial)


class _FrequencyRunner:
    trusted = True

    def __init__(self, alg, counts, last, t, state):
        self.alg = alg
        self.counts = counts
        self.last = last
        self.t = t
        self.state = state

    def push(self, z):
        self.counts[z] += 1
        self.last[z] = self.t
        self.t += 1
        rank = {x: k for k, x in enumerate(self.alg.initial)}
        c, last = self.counts, self.last
        # decreasing count, then most recent last request, then initial order
        self.state = tuple(sorted(self.alg.initial, key=lambda x: (-c[x], -last[x], rank[x])))
        return self.state

    def clone(self):
        return _FrequencyRunner(self.alg, list(self.counts), list(self.last), self.t, self.state)


class FrequencyCount(DeterministicAlgorithm):
    def __init__(self, initial):
        self.initial = tuple(initial)
        self.name = "fc"

    def runner(self):
        n = self.n
        return _FrequencyRunner(self, [0] * n, [-1] * n, 0, self.initial)


class _LMTFRunner:
    trusted = True

    def __init__(self, last, t, state):
        self.last = last
        self.t = t
        self.state = state

    def push(self, z):
        prev = self.last[z]
        if prev >= 0:
            s = list(self.state)
            k = s.index(z)
            stale = [p for p in range(k) if self.last[s[p]] < prev]
            if stale:
                s.insert(stale[0], s.pop(k))
                self.state = tuple(s)
        self.last[z] = self.t
        self.t += 1
        return self.state

    def clone(self):
        return _LMTFRunner(list(self.last), self.t, self.state)


class LMTF(DeterministicAlgorithm):
    """Moves ``x`` in front of every item not requested since the previous
    request to ``x``; a first request leaves ``x`` where it is."""

    def __init__(self, initial):
        self.initial = tuple(initial)
        self.name = "lmtf"

    def runner(self):
        return _LMTFRunner([-1] * self.n, 0, self.initial)


def make_transpose(initial) -> Transpose:
    return Transpose(initial)


def make_frequency_count(initial) -> FrequencyCount:
    return FrequencyCount(initial)


def make_lmtf(initial) -> LMTF:
    return LMTF(initial)


def roster(initial: Sequence[int]) -> list[DeterministicAlgorithm]:
    """The classical deterministic algorithms plus every BIT atom (small n)."""
    algs = [make_mtf(initial), make_ts(initial), make_transpose(initial),
            make_frequency_count(initial), make_lmtf(initial)]
    if len(initial) <= 4:
        algs += [make_bit(bits, initial) for bits in product((0, 1), repeat=len(initial))]
    return algs


# -- randomized algorithms -----------------------------------------------------

@dataclass(frozen=True)
class RandomizedAlgorithm:
    name: str
    atoms: tuple[tuple[DeterministicAlgorithm, Fraction], ...] = field(repr=False)

    def __post_init__(self):
        if not self.atoms:
            raise ListUpdateError("a randomized algorithm needs at least one atom")
        for _, w in self.atoms:
            if not isinstance(w, Fraction) or w <= 0:
                raise ListUpdateError(f"atom weights must be positive Fractions, got {w!r}")
        total = sum(w for _, w in self.atoms)
        if total != 1:
            raise ListUpdateError(f"atom weights sum to {total}, not 1")

    @classmethod
    def point(cls, alg: DeterministicAlgorithm) -> "RandomizedAlgorithm":
        return cls(alg.name, ((alg, Fraction(1)),))

    @property
    def initial(self) -> ListState:
        return self.atoms[0][0].initial


def as_randomized(alg) -> RandomizedAlgorithm:
    return alg if isinstance(alg, RandomizedAlgorithm) else RandomizedAlgorithm.point(alg)


def _check_bit_size(n: int, max_items: int):
    if n > max_items:
        raise ListUpdateError(
            f"BIT over {n} items needs 2^{n} atoms; the guard allows n <= {max_items} "
            f"(use sample_bit_cost for larger lists)")


def make_bit_distribution(initial, max_items: int = MAX_BIT_ITEMS) -> RandomizedAlgorithm:
    n = len(initial)
    _check_bit_size(n, max_items)
    w = Fraction(1, 2 ** n)
    return RandomizedAlgorithm("bit", tuple((make_bit(bits, initial), w)
                                            for bits in product((0, 1), repeat=n)))


def make_comb(initial, max_items: int = MAX_BIT_ITEMS) -> RandomizedAlgorithm:
    bit = make_bit_distribution(initial, max_items)
    atoms = tuple((a, Fraction(4, 5) * w) for a, w in bit.atoms)
    return RandomizedAlgorithm("comb", atoms + ((make_ts(initial), Fraction(1, 5)),))


def expected_cost(alg, sigma: Sequence[int]) -> Fraction:
    return sum((w * serve_cost(a, sigma) for a, w in as_randomized(alg).atoms), Fraction(0))


def sample_bit_cost(initial, sigma: Sequence[int], samples: int, seed: int) -> float:
    """Monte Carlo estimate of BIT's expected cost, for lists too long to enumerate."""
    rng = np.random.Generator(np.random.PCG64(seed & (2 ** 64 - 1)))
    draws = rng.integers(0, 2, size=(samples, len(initial)))
    return float(np.mean([serve_cost(make_bit(row.tolist(), initial), sigma) for row in draws]))
