"""Succinct recursive strategies: evaluation, game vectors, serialization.

A strategy is a tree of five node kinds.  Leaves implement the two explicit
constructions (modular interval covering on a clique, the interval/spread
construction on a 3-vertex path); inner nodes implement the three
composition steps (clique join, uniform scaling, guess padding).  The tree
never stores explicit guess tables; ``guesses`` evaluates it on demand.

Vertex ids are global ids of the final graph.  Inside a join's right
branch, the contracted pivot vertex is the sentinel ``PIVOT`` (serialized
as ``*``); it is consumed by the join and never escapes to the top level.

Color pair encoding (frozen, serialization depends on it): a combined
color is ``high * modulus + low`` where ``low`` is the second/inner
component, i.e. ``c = c1 * h2 + c2`` in joins and ``c = i * h + c`` in
scale nodes.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from types import MappingProxyType
from typing import Mapping, Union

from .errors import (
    InconsistentComposition,
    MalformedStrategy,
    MissingNeighborColor,
    ParseError,
)
from .graphs import Graph
from .numerics import lcm_list, nearest_integer

PIVOT = -1


@dataclass(frozen=True)
class GameSpec:
    """A graph plus per-vertex hatness and guess-count vectors."""

    graph: Graph
    hatness: tuple[int, ...]
    guesses: tuple[int, ...]

    def __post_init__(self):
        n = self.graph.n
        if len(self.hatness) != n or len(self.guesses) != n:
            raise ValueError("need one hatness and guess count per vertex")
        for v in range(n):
            if self.hatness[v] < 1:
                raise ValueError(f"hatness of {v} must be >= 1")
            if not (0 <= self.guesses[v] <= self.hatness[v]):
                raise ValueError(f"guess count of {v} out of range")

    def arrangement_count(self) -> int:
        out = 1
        for h in self.hatness:
            out *= h
        return out


@dataclass(frozen=True)
class CliqueLeaf:
    """Interval-covering strategy on a clique; vertex order is semantic."""

    vertices: tuple[int, ...]
    hatness: tuple[int, ...]
    guesses: tuple[int, ...]

    def __post_init__(self):
        k = len(self.vertices)
        if len(self.hatness) != k or len(self.guesses) != k:
            raise MalformedStrategy("clique leaf vector length mismatch")
        if len(set(self.vertices)) != k:
            raise MalformedStrategy("duplicate vertex in clique leaf")
        if any(h < 1 for h in self.hatness):
            raise MalformedStrategy("clique leaf hatness must be >= 1")
        if any(g < 0 or g > h for g, h in zip(self.guesses, self.hatness)):
            raise MalformedStrategy("clique leaf guess count out of range")


@dataclass(frozen=True)
class P3Leaf:
    """Explicit 3-vertex path strategy; vertices = (end, center, end)."""

    vertices: tuple[int, int, int]
    hatness: int
    guesses: int

    def __post_init__(self):
        if len(set(self.vertices)) != 3:
            raise MalformedStrategy("path leaf needs three distinct vertices")
        if not (1 <= self.guesses <= self.hatness):
            raise MalformedStrategy("path leaf needs 1 <= g <= h")


@dataclass(frozen=True)
class ScaleNode:
    """Play the inner strategy on the low color component, k times over."""

    factor: int
    inner: "Strategy"

    def __post_init__(self):
        if self.factor < 1:
            raise MalformedStrategy("scale factor must be >= 1")


@dataclass(frozen=True)
class PadNode:
    """Extend inner guess sets with the smallest unguessed colors."""

    targets: tuple[tuple[int, int], ...]  # (vertex, target count), sorted
    inner: "Strategy"

    def __post_init__(self):
        inner_game = game_of(self.inner)
        order = tuple(v for v, _ in self.targets)
        if order != tuple(sorted(inner_game)):
            raise MalformedStrategy(
                "pad targets must list every covered vertex in id order"
            )
        for v, want in self.targets:
            h, g = inner_game[v]
            if not (g <= want <= h):
                raise MalformedStrategy(
                    f"pad target for {v} must lie in [{g}, {h}]"
                )


@dataclass(frozen=True)
class JoinNode:
    """Clique join: left game on V1, right game on V2 with its pivot
    contracted onto the separator."""

    left: "Strategy"
    right: "Strategy"
    separator: tuple[int, ...]
    pivot_hatness: int
    pivot_guesses: int

    def __post_init__(self):
        if self.pivot_hatness < 1:
            raise MalformedStrategy("pivot hatness must be >= 1")
        if not (0 <= self.pivot_guesses <= self.pivot_hatness):
            raise MalformedStrategy("pivot guess count out of range")
        # An empty separator is legal: it joins across components (the
        # imaginary pivot color is then the constant 0).
        if PIVOT in self.separator:
            raise MalformedStrategy("pivot cannot sit in the separator")
        game_of(self)  # force the composition checks


Strategy = Union[CliqueLeaf, P3Leaf, ScaleNode, PadNode, JoinNode]


@lru_cache(maxsize=None)
def _clique_params(leaf: CliqueLeaf) -> tuple[int, tuple[int, ...], tuple[int, ...]]:
    """Derived modulus ell, steps d_i = ell/h_i and offsets b_i."""
    ell = lcm_list(list(leaf.hatness))
    d = tuple(ell // h for h in leaf.hatness)
    b = []
    acc = 0
    for di, gi in zip(d, leaf.guesses):
        b.append(acc)
        acc += di * gi
    return ell, d, tuple(b)


@lru_cache(maxsize=None)
def game_of(strategy: Strategy) -> Mapping[int, tuple[int, int]]:
    """Per-vertex (hatness, guesses) the strategy is valid for.

    Vertices the strategy never mentions are absent; callers treat them as
    abstaining bears with h = 1, g = 0.  Raises InconsistentComposition
    when two branches claim the same vertex.  The returned mapping is a
    read-only view (results are cached and shared).
    """
    return MappingProxyType(_game_of(strategy))


def _game_of(strategy: Strategy) -> dict[int, tuple[int, int]]:
    if isinstance(strategy, CliqueLeaf):
        return {
            v: (h, g)
            for v, h, g in zip(
                strategy.vertices, strategy.hatness, strategy.guesses
            )
        }
    if isinstance(strategy, P3Leaf):
        return {v: (strategy.hatness, strategy.guesses) for v in strategy.vertices}
    if isinstance(strategy, ScaleNode):
        return {
            v: (strategy.factor * h, strategy.factor * g)
            for v, (h, g) in game_of(strategy.inner).items()
        }
    if isinstance(strategy, PadNode):
        out = dict(game_of(strategy.inner))
        for v, want in strategy.targets:
            h, _ = out[v]
            out[v] = (h, want)
        return out
    if isinstance(strategy, JoinNode):
        left = game_of(strategy.left)
        right = game_of(strategy.right)
        h2, g2 = strategy.pivot_hatness, strategy.pivot_guesses
        if PIVOT in right and right[PIVOT] != (h2, g2):
            raise InconsistentComposition(
                "right branch disagrees with the stored pivot game"
            )
        if PIVOT in left:
            raise InconsistentComposition("unresolved pivot in left branch")
        sep = set(strategy.separator)
        right_real = {v for v in right if v != PIVOT}
        overlap = (set(left) | sep) & right_real
        if overlap:
            raise InconsistentComposition(
                f"vertices {sorted(overlap)} claimed by both join branches"
            )
        out: dict[int, tuple[int, int]] = {}
        for v, hg in left.items():
            if v not in sep:
                out[v] = hg
        for v in right_real:
            out[v] = right[v]
        for v in strategy.separator:
            h1, g1 = left.get(v, (1, 0))
            out[v] = (h1 * h2, g1 * g2)
        return out
    raise TypeError(f"not a strategy: {strategy!r}")


def covered_vertices(strategy: Strategy) -> frozenset[int]:
    return frozenset(game_of(strategy))


def game_spec_for(strategy: Strategy, graph: Graph) -> GameSpec:
    """GameSpec over the whole graph; uncovered vertices abstain (h=1, g=0)."""
    game = game_of(strategy)
    if PIVOT in game:
        raise MalformedStrategy("top-level strategy contains a bare pivot")
    bad = [v for v in game if not 0 <= v < graph.n]
    if bad:
        raise MalformedStrategy(f"strategy vertices {bad} not in the graph")
    h = tuple(game.get(v, (1, 0))[0] for v in range(graph.n))
    g = tuple(game.get(v, (1, 0))[1] for v in range(graph.n))
    return GameSpec(graph, h, g)


# ---------------------------------------------------------------------------
# Evaluation


def _eval(strategy: Strategy, v: int, colors: Mapping[int, int]):
    """Guess set of the bear on ``v``; None when the strategy ignores v."""
    if isinstance(strategy, CliqueLeaf):
        if v not in strategy.vertices:
            return None
        ell, d, b = _clique_params(strategy)
        i = strategy.vertices.index(v)
        s_i = sum(
            colors[u] * d[j]
            for j, u in enumerate(strategy.vertices)
            if j != i
        )
        lo, width = b[i], d[i] * strategy.guesses[i]
        return {
            a
            for a in range(strategy.hatness[i])
            if lo <= (s_i + a * d[i]) % ell < lo + width
        }

    if isinstance(strategy, P3Leaf):
        end_a, center, end_b = strategy.vertices
        h, g = strategy.hatness, strategy.guesses
        offsets = [nearest_integer(Fraction(t * h, g)) for t in range(g)]
        if v == end_a:
            cv = colors[center]
            return {(cv - t) % h for t in range(g)}
        if v == end_b:
            cv = colors[center]
            return {(cv - o) % h for o in offsets}
        if v == center:
            ca, cb = colors[end_a], colors[end_b]
            blocked_a = {(ca + t) % h for t in range(g)}
            blocked_b = {(cb + o) % h for o in offsets}
            # Bounds from the construction's counting argument; they hold
            # exactly when g^2 - 3gh + h^2 < 0.
            assert len(blocked_a & blocked_b) <= 3 * g - h
            out = set(range(h)) - (blocked_a | blocked_b)
            assert len(out) <= g
            return out
        return None

    if isinstance(strategy, ScaleNode):
        inner_game = game_of(strategy.inner)
        if v not in inner_game:
            return None
        decoded = {
            u: c % inner_game[u][0]
            for u, c in colors.items()
            if u in inner_game
        }
        inner_set = _eval(strategy.inner, v, decoded)
        if inner_set is None:
            return None
        h_in = inner_game[v][0]
        return {
            i * h_in + c for i in range(strategy.factor) for c in inner_set
        }

    if isinstance(strategy, PadNode):
        targets = dict(strategy.targets)
        if v not in targets:
            return _eval(strategy.inner, v, colors)
        out = set(_eval(strategy.inner, v, colors))
        want = targets[v]
        candidate = 0
        while len(out) < want:
            if candidate not in out:
                out.add(candidate)
            candidate += 1
        return out

    if isinstance(strategy, JoinNode):
        return _eval_join(strategy, v, colors)

    raise TypeError(f"not a strategy: {strategy!r}")


def _eval_join(node: JoinNode, v: int, colors: Mapping[int, int]):
    h2 = node.pivot_hatness
    sep = set(node.separator)
    left_side = set(game_of(node.left)) | sep
    right_side = set(game_of(node.right)) - {PIVOT}

    def left_view() -> dict[int, int]:
        return {
            u: (c // h2 if u in sep else c)
            for u, c in colors.items()
            if u not in right_side
        }

    def right_view(include_pivot: bool) -> dict[int, int]:
        out = {u: c for u, c in colors.items() if u in right_side}
        if include_pivot and all(u in colors for u in sep):
            out[PIVOT] = sum(colors[u] % h2 for u in sep) % h2
        return out

    if v in sep:
        mine = _eval(node.left, v, left_view())
        picks_left = set() if mine is None else mine
        pivot_set = _eval(node.right, PIVOT, right_view(include_pivot=False))
        picks_right = set() if pivot_set is None else pivot_set
        shift = sum(colors[u] % h2 for u in sep if u != v) % h2
        low = {(c - shift) % h2 for c in picks_right}
        return {a * h2 + b for a in picks_left for b in low}
    if v in left_side:
        return _eval(node.left, v, left_view())
    if v in right_side:
        return _eval(node.right, v, right_view(include_pivot=True))
    return None


def guesses(
    strategy: Strategy, spec: GameSpec, v: int, visible: Mapping[int, int]
) -> frozenset[int]:
    """Evaluate the bear on ``v`` given the colors of its neighbors.

    ``visible`` must supply a color for every neighbor of v in the spec's
    graph; consulting an absent vertex raises MissingNeighborColor.  The
    result has at most spec.guesses[v] elements.  A vertex no leaf covers
    is legal only as an abstainer (g = 0).
    """
    if not 0 <= v < spec.graph.n:
        raise ValueError(f"vertex {v} not in the graph")
    try:
        result = _eval(strategy, v, visible)
    except KeyError as missing:
        raise MissingNeighborColor(
            f"bear on {v} needs the color of vertex {missing.args[0]}"
        ) from None
    if result is None:
        if spec.guesses[v] == 0:
            return frozenset()
        raise MalformedStrategy(f"vertex {v} is not covered by any leaf")
    if len(result) > spec.guesses[v]:
        raise MalformedStrategy(
            f"bear on {v} produced {len(result)} guesses, allowed "
            f"{spec.guesses[v]}"
        )
    return frozenset(result)


# ---------------------------------------------------------------------------
# Serialization: line oriented, LF, deterministic.


def _vertex_token(v: int) -> str:
    return "*" if v == PIVOT else str(v)


def _emit(strategy: Strategy, lines: list[str]) -> None:
    if isinstance(strategy, CliqueLeaf):
        lines.append(f"CLIQUE {len(strategy.vertices)}")
        lines.append("V " + " ".join(_vertex_token(v) for v in strategy.vertices))
        lines.append("H " + " ".join(str(h) for h in strategy.hatness))
        lines.append("G " + " ".join(str(g) for g in strategy.guesses))
        lines.append("END")
    elif isinstance(strategy, P3Leaf):
        lines.append("P3")
        lines.append("V " + " ".join(_vertex_token(v) for v in strategy.vertices))
        lines.append(f"H {strategy.hatness}")
        lines.append(f"G {strategy.guesses}")
        lines.append("END")
    elif isinstance(strategy, ScaleNode):
        lines.append(f"SCALE {strategy.factor}")
        _emit(strategy.inner, lines)
        lines.append("END")
    elif isinstance(strategy, PadNode):
        lines.append("PAD")
        lines.append("G " + " ".join(str(t) for _, t in strategy.targets))
        _emit(strategy.inner, lines)
        lines.append("END")
    elif isinstance(strategy, JoinNode):
        lines.append("JOIN")
        sep_tokens = " ".join(_vertex_token(v) for v in strategy.separator)
        lines.append(f"SEP {sep_tokens}" if sep_tokens else "SEP")
        lines.append(f"PIVOT {strategy.pivot_hatness} {strategy.pivot_guesses}")
        lines.append("LEFT")
        _emit(strategy.left, lines)
        lines.append("RIGHT")
        _emit(strategy.right, lines)
        lines.append("END")
    else:
        raise TypeError(f"not a strategy: {strategy!r}")


def serialize(strategy: Strategy) -> str:
    lines: list[str] = []
    _emit(strategy, lines)
    return "\n".join(lines) + "\n"


class _Cursor:
    def __init__(self, text: str):
        self.lines = text.splitlines()
        self.index = 0

    @property
    def lineno(self) -> int:
        return self.index + 1

    def next(self) -> list[str]:
        if self.index >= len(self.lines):
            raise ParseError(self.lineno, "unexpected end of input")
        parts = self.lines[self.index].split()
        self.index += 1
        if not parts:
            raise ParseError(self.lineno - 1, "blank line inside a block")
        return parts


def _parse_vertex(token: str, lineno: int) -> int:
    if token == "*":
        return PIVOT
    try:
        v = int(token)
    except ValueError:
        raise ParseError(lineno, f"bad vertex token {token!r}") from None
    if v < 0:
        raise ParseError(lineno, f"negative vertex id {v}")
    return v


def _parse_ints(parts: list[str], lineno: int) -> list[int]:
    try:
        return [int(p) for p in parts]
    except ValueError:
        raise ParseError(lineno, "expected integers") from None


def _expect(cursor: _Cursor, keyword: str) -> list[str]:
    at = cursor.lineno
    parts = cursor.next()
    if parts[0] != keyword:
        raise ParseError(at, f"expected {keyword}, found {parts[0]}")
    return parts


def _parse_block(cursor: _Cursor) -> Strategy:
    at = cursor.lineno
    head = cursor.next()
    kind = head[0]
    if kind == "CLIQUE":
        if len(head) != 2:
            raise ParseError(at, "CLIQUE header needs a size")
        size = _parse_ints(head[1:], at)[0]
        vat = cursor.lineno
        vparts = _expect(cursor, "V")
        vertices = [_parse_vertex(t, vat) for t in vparts[1:]]
        hat = _parse_ints(_expect(cursor, "H")[1:], cursor.lineno)
        gue = _parse_ints(_expect(cursor, "G")[1:], cursor.lineno)
        _expect(cursor, "END")
        if not (len(vertices) == len(hat) == len(gue) == size):
            raise ParseError(at, "CLIQUE field lengths disagree with size")
        try:
            return CliqueLeaf(tuple(vertices), tuple(hat), tuple(gue))
        except MalformedStrategy as err:
            raise ParseError(at, str(err)) from None
    if kind == "P3":
        vat = cursor.lineno
        vparts = _expect(cursor, "V")
        vertices = [_parse_vertex(t, vat) for t in vparts[1:]]
        if len(vertices) != 3:
            raise ParseError(vat, "P3 needs exactly three vertices")
        hat = _parse_ints(_expect(cursor, "H")[1:], cursor.lineno)
        gue = _parse_ints(_expect(cursor, "G")[1:], cursor.lineno)
        _expect(cursor, "END")
        if len(hat) != 1 or len(gue) != 1:
            raise ParseError(at, "P3 takes a single hatness and guess count")
        try:
            return P3Leaf((vertices[0], vertices[1], vertices[2]), hat[0], gue[0])
        except MalformedStrategy as err:
            raise ParseError(at, str(err)) from None
    if kind == "SCALE":
        if len(head) != 2:
            raise ParseError(at, "SCALE header needs a factor")
        factor = _parse_ints(head[1:], at)[0]
        inner = _parse_block(cursor)
        _expect(cursor, "END")
        return ScaleNode(factor, inner)
    if kind == "PAD":
        counts = _parse_ints(_expect(cursor, "G")[1:], cursor.lineno)
        inner = _parse_block(cursor)
        _expect(cursor, "END")
        order = sorted(game_of(inner))
        if len(counts) != len(order):
            raise ParseError(
                at, "PAD count list disagrees with the inner vertex set"
            )
        try:
            return PadNode(tuple(zip(order, counts)), inner)
        except MalformedStrategy as err:
            raise ParseError(at, str(err)) from None
    if kind == "JOIN":
        sat = cursor.lineno
        sparts = _expect(cursor, "SEP")
        separator = tuple(_parse_vertex(t, sat) for t in sparts[1:])
        pparts = _expect(cursor, "PIVOT")
        pvals = _parse_ints(pparts[1:], cursor.lineno)
        if len(pvals) != 2:
            raise ParseError(cursor.lineno, "PIVOT needs hatness and guesses")
        _expect(cursor, "LEFT")
        left = _parse_block(cursor)
        _expect(cursor, "RIGHT")
        right = _parse_block(cursor)
        _expect(cursor, "END")
        try:
            return JoinNode(left, right, separator, pvals[0], pvals[1])
        except (MalformedStrategy, InconsistentComposition) as err:
            raise ParseError(at, str(err)) from None
    raise ParseError(at, f"unknown block {kind!r}")


def deserialize(text: str) -> Strategy:
    cursor = _Cursor(text)
    strategy = _parse_block(cursor)
    while cursor.index < len(cursor.lines):
        if cursor.lines[cursor.index].strip():
            raise ParseError(cursor.lineno, "trailing content after strategy")
        cursor.index += 1
    return strategy
