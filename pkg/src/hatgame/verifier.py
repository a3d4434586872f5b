"""Exhaustive demon simulation and the brute-force losing oracle.

Arrangements are indexed by a mixed-radix counter with vertex 0 most
significant, which fixes "first counterexample" semantics.  Large state
spaces run through numpy (integer dtypes only, so still exact) over
partitioned index ranges; the reduction keeps the lexicographically
smallest counterexample, so the result is independent of chunking and
thread count.  Guess sets are tabulated once per vertex over its
neighbors' joint colors; bears see only their neighbors, so the tables
are tiny compared to the arrangement space.
"""

from __future__ import annotations

import itertools
import math
import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

import numpy as np

from .errors import StateSpaceTooLarge, StrategySpaceTooLarge
from .indpoly import z_eval
from .strategy import GameSpec, Strategy, guesses

DEFAULT_MAX_STATES = 10**8
DEFAULT_MAX_PROFILES = 10**7

_PURE_LOOP_LIMIT = 1 << 16
_CHUNK = 1 << 20
_TABLE_LIMIT = 1 << 23


@dataclass(frozen=True)
class Winning:
    pass


@dataclass(frozen=True)
class Counterexample:
    arrangement: tuple[int, ...]


@dataclass(frozen=True)
class Inconclusive:
    samples_checked: int


VerificationResult = Union[Winning, Counterexample, Inconclusive]


class _GuessTables:
    """Per-vertex guess-set lookup keyed by the neighbors' colors."""

    def __init__(self, spec: GameSpec, strategy: Strategy):
        self.spec = spec
        self.strategy = strategy
        self.neighbors = [
            tuple(sorted(spec.graph.adj[v])) for v in range(spec.graph.n)
        ]
        self._cache: list[dict[tuple[int, ...], frozenset[int]]] = [
            {} for _ in range(spec.graph.n)
        ]

    def lookup(self, v: int, key: tuple[int, ...]) -> frozenset[int]:
        table = self._cache[v]
        got = table.get(key)
        if got is None:
            visible = dict(zip(self.neighbors[v], key))
            got = guesses(self.strategy, self.spec, v, visible)
            table[key] = got
        return got

    def key_for(self, v: int, arrangement) -> tuple[int, ...]:
        return tuple(arrangement[u] for u in self.neighbors[v])

    def correct(self, v: int, arrangement) -> bool:
        return arrangement[v] in self.lookup(v, self.key_for(v, arrangement))

    def any_correct(self, arrangement) -> bool:
        return any(
            self.correct(v, arrangement) for v in range(self.spec.graph.n)
        )

    def table_entries(self, v: int) -> int:
        out = 1
        for u in self.neighbors[v]:
            out *= self.spec.hatness[u]
        return out


def _first_counterexample_pure(
    spec: GameSpec, tables: _GuessTables
) -> tuple[int, ...] | None:
    ranges = [range(h) for h in spec.hatness]
    for arrangement in itertools.product(*ranges):
        if not tables.any_correct(arrangement):
            return arrangement
    return None


def _strides(hatness: tuple[int, ...]) -> list[int]:
    """Mixed-radix place values, vertex 0 most significant."""
    strides = [1] * len(hatness)
    for v in range(len(hatness) - 2, -1, -1):
        strides[v] = strides[v + 1] * hatness[v + 1]
    return strides


def _dense_tables(spec: GameSpec, tables: _GuessTables):
    """Boolean arrays table[v][joint neighbor code, color] built eagerly."""
    dense = []
    for v in range(spec.graph.n):
        nbrs = tables.neighbors[v]
        radices = [spec.hatness[u] for u in nbrs]
        size = math.prod(radices, start=1)
        arr = np.zeros((size, spec.hatness[v]), dtype=bool)
        for code, key in enumerate(itertools.product(*[range(r) for r in radices])):
            for color in tables.lookup(v, key):
                if 0 <= color < spec.hatness[v]:
                    arr[code, color] = True
        dense.append((nbrs, _strides(tuple(radices)) if nbrs else [], arr))
    return dense


def _scan_chunk(spec, dense, strides, start, stop):
    """Index of the first all-wrong arrangement in [start, stop), or None."""
    idx = np.arange(start, stop, dtype=np.int64)
    colors = [
        (idx // strides[v]) % spec.hatness[v] for v in range(spec.graph.n)
    ]
    some_correct = np.zeros(stop - start, dtype=bool)
    for v, (nbrs, nstrides, arr) in enumerate(dense):
        code = np.zeros(stop - start, dtype=np.int64)
        for pos, u in enumerate(nbrs):
            code += colors[u] * nstrides[pos]
        some_correct |= arr[code, colors[v]]
    if some_correct.all():
        return None
    return start + int(np.argmin(some_correct))


def exhaustive_verify(
    spec: GameSpec,
    strategy: Strategy,
    max_states: int = DEFAULT_MAX_STATES,
    threads: int = 1,
) -> VerificationResult:
    """Check every arrangement; Winning or the lexicographically first
    counterexample."""
    total = spec.arrangement_count()
    if total > max_states:
        raise StateSpaceTooLarge(
            f"{total} arrangements exceed the bound {max_states}"
        )
    tables = _GuessTables(spec, strategy)
    table_total = sum(
        tables.table_entries(v) for v in range(spec.graph.n)
    )
    if total <= _PURE_LOOP_LIMIT or table_total > _TABLE_LIMIT:
        bad = _first_counterexample_pure(spec, tables)
        if bad is None:
            return Winning()
        return Counterexample(bad)

    dense = _dense_tables(spec, tables)
    strides = _strides(spec.hatness)
    ranges = [
        (start, min(start + _CHUNK, total))
        for start in range(0, total, _CHUNK)
    ]
    first_bad: int | None = None
    if threads <= 1:
        for start, stop in ranges:
            hit = _scan_chunk(spec, dense, strides, start, stop)
            if hit is not None:
                first_bad = hit
                break
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            for batch_start in range(0, len(ranges), threads):
                batch = ranges[batch_start : batch_start + threads]
                hits = list(
                    pool.map(
                        lambda se: _scan_chunk(spec, dense, strides, *se),
                        batch,
                    )
                )
                found = [h for h in hits if h is not None]
                if found:
                    first_bad = min(found)
                    break
    if first_bad is None:
        return Winning()
    return Counterexample(
        tuple(
            (first_bad // strides[v]) % spec.hatness[v]
            for v in range(spec.graph.n)
        )
    )


def is_perfect(
    spec: GameSpec, strategy: Strategy, max_states: int = DEFAULT_MAX_STATES
) -> bool:
    """True iff in every arrangement the correct bears form an independent
    set; intended for games already verified winning."""
    total = spec.arrangement_count()
    if total > max_states:
        raise StateSpaceTooLarge(
            f"{total} arrangements exceed the bound {max_states}"
        )
    tables = _GuessTables(spec, strategy)
    edges = list(spec.graph.edges())
    for arrangement in itertools.product(*[range(h) for h in spec.hatness]):
        correct = [
            v
            for v in range(spec.graph.n)
            if tables.correct(v, arrangement)
        ]
        correct_set = set(correct)
        for u, v in edges:
            if u in correct_set and v in correct_set:
                return False
    return True


def perfect_count_check(
    spec: GameSpec, strategy: Strategy, max_states: int = DEFAULT_MAX_STATES
) -> bool:
    """Exact counting identities of a perfect strategy.

    For every independent set I, the number of arrangements in which all
    of I guess correctly must equal m * prod(g_v/h_v), and the
    inclusion-exclusion total over independent sets must equal m (which is
    the counting form of Z_G(r) = 0); both are also cross-checked against
    the polynomial evaluation.
    """
    total = spec.arrangement_count()
    if total > max_states:
        raise StateSpaceTooLarge(
            f"{total} arrangements exceed the bound {max_states}"
        )
    tables = _GuessTables(spec, strategy)
    n = spec.graph.n
    correct_masks: list[int] = []
    for arrangement in itertools.product(*[range(h) for h in spec.hatness]):
        mask = 0
        for v in range(n):
            if tables.correct(v, arrangement):
                mask |= 1 << v
        correct_masks.append(mask)

    independent = [
        mask
        for mask in range(1 << n)
        if not any(
            mask & (1 << u) and mask & (1 << v) for u, v in spec.graph.edges()
        )
    ]
    inc_exc = 0
    for mask in independent:
        count = sum(1 for cm in correct_masks if cm & mask == mask)
        ratio = Fraction(1)
        for v in range(n):
            if mask & (1 << v):
                ratio *= Fraction(spec.guesses[v], spec.hatness[v])
        if count != total * ratio:
            return False
        if mask:
            sign = -1 if bin(mask).count("1") % 2 == 0 else 1
            inc_exc += sign * count
    if inc_exc != total:
        return False
    ratios = [
        Fraction(spec.guesses[v], spec.hatness[v]) for v in range(n)
    ]
    return z_eval(spec.graph, ratios) == 0


def random_falsify(
    spec: GameSpec,
    strategy: Strategy,
    samples: int,
    seed: int,
) -> VerificationResult:
    """Sample arrangements from a seeded generator; never claims Winning."""
    rng = random.Random(seed)
    tables = _GuessTables(spec, strategy)
    for _ in range(samples):
        arrangement = tuple(rng.randrange(h) for h in spec.hatness)
        if not tables.any_correct(arrangement):
            return Counterexample(arrangement)
    return Inconclusive(samples)


def brute_force_losing(
    spec: GameSpec, max_profiles: int = DEFAULT_MAX_PROFILES
) -> bool:
    """True iff no strategy profile at all wins the game.

    Enumerates every per-vertex guess function (visible colors to a
    g_v-subset) and plays the demon against each profile; only feasible
    for very small games.
    """
    n = spec.graph.n
    neighbor_lists = [tuple(sorted(spec.graph.adj[v])) for v in range(n)]
    per_vertex_options: list[list[tuple[frozenset[int], ...]]] = []
    profile_count = 1
    for v in range(n):
        views = math.prod((spec.hatness[u] for u in neighbor_lists[v]), start=1)
        choices = [
            frozenset(c)
            for c in itertools.combinations(
                range(spec.hatness[v]), spec.guesses[v]
            )
        ]
        profile_count *= len(choices) ** views
        if profile_count > max_profiles:
            raise StrategySpaceTooLarge(
                f"profile count exceeds the bound {max_profiles}"
            )
        per_vertex_options.append(
            list(itertools.product(choices, repeat=views))
        )
    arrangements = list(itertools.product(*[range(h) for h in spec.hatness]))
    view_strides = [
        _strides(tuple(spec.hatness[u] for u in neighbor_lists[v]))
        for v in range(n)
    ]

    def view_code(v: int, arrangement) -> int:
        code = 0
        for pos, u in enumerate(neighbor_lists[v]):
            code += arrangement[u] * view_strides[v][pos]
        return code

    for profile in itertools.product(*per_vertex_options):
        wins = True
        for arrangement in arrangements:
            if not any(
                arrangement[v] in profile[v][view_code(v, arrangement)]
                for v in range(n)
            ):
                wins = False
                break
        if wins:
            return False
    return True
