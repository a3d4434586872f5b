"""Strategy constructors and the chordal region decision.

The central pair of operations walks a clique tree leaf by leaf: pick the
lowest-index leaf clique C, split it into exclusive vertices R and
separator S, win immediately if the clique's ratios already sum to 1,
otherwise rescale the separator ratios by 1/alpha with
alpha = 1 - sum(r_v for v in R) and recurse on the graph without R.
``decide_region`` only answers winning/in-region; ``chordal_synthesize``
additionally materializes the winning strategy bottom-up out of clique
leaves glued by join nodes.  All comparisons are exact.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Union

from .errors import (
    EpsilonOutOfRange,
    InequalityNotSatisfied,
    MalformedStrategy,
    PivotNotInRightGraph,
    RatioNotDominated,
    RatioSumBelowOne,
    SeparatorNotClique,
)
from .graphs import CliqueTree, Graph, clique_tree, make_path
from .strategy import (
    PIVOT,
    CliqueLeaf,
    GameSpec,
    JoinNode,
    P3Leaf,
    PadNode,
    ScaleNode,
    Strategy,
    game_of,
    game_spec_for,
)


@dataclass(frozen=True)
class Winning:
    """Synthesized winning game: full h/g vectors plus the strategy."""

    hatness: tuple[int, ...]
    guesses: tuple[int, ...]
    strategy: Strategy


@dataclass(frozen=True)
class InRegion:
    """The ratio vector lies in the positivity region; the game is losing."""


SynthesisResult = Union[Winning, InRegion]


def clique_strategy(
    hatness: Sequence[int],
    guesses: Sequence[int],
    vertices: Sequence[int] | None = None,
) -> CliqueLeaf:
    """Interval-covering strategy for a clique game with sum(g/h) >= 1."""
    hatness = tuple(hatness)
    guesses = tuple(guesses)
    if vertices is None:
        vertices = tuple(range(len(hatness)))
    total = sum(Fraction(g, h) for g, h in zip(guesses, hatness))
    if total < 1:
        raise RatioSumBelowOne(
            f"sum of guess ratios is {total}, must be >= 1"
        )
    return CliqueLeaf(tuple(vertices), hatness, guesses)


def _relabel(strategy: Strategy, mapping: dict[int, int], inside_right: bool) -> Strategy:
    """Rewrite vertex ids; raises if the new pivot would be captured by a
    nested join's right branch (a single sentinel cannot express that)."""

    def ren(v: int) -> int:
        if v == PIVOT:
            return PIVOT
        new = mapping[v]
        if new == PIVOT and inside_right:
            raise MalformedStrategy(
                "pivot occurs inside a nested join's right branch"
            )
        return new

    if isinstance(strategy, CliqueLeaf):
        return CliqueLeaf(
            tuple(ren(v) for v in strategy.vertices),
            strategy.hatness,
            strategy.guesses,
        )
    if isinstance(strategy, P3Leaf):
        a, b, c = (ren(v) for v in strategy.vertices)
        return P3Leaf((a, b, c), strategy.hatness, strategy.guesses)
    if isinstance(strategy, ScaleNode):
        return ScaleNode(
            strategy.factor, _relabel(strategy.inner, mapping, inside_right)
        )
    if isinstance(strategy, PadNode):
        inner = _relabel(strategy.inner, mapping, inside_right)
        targets = tuple(
            sorted((ren(v), t) for v, t in strategy.targets)
        )
        return PadNode(targets, inner)
    if isinstance(strategy, JoinNode):
        return JoinNode(
            _relabel(strategy.left, mapping, inside_right),
            _relabel(strategy.right, mapping, True),
            tuple(sorted(ren(v) for v in strategy.separator)),
            strategy.pivot_hatness,
            strategy.pivot_guesses,
        )
    raise TypeError(f"not a strategy: {strategy!r}")


def clique_join(
    g1: Graph,
    left: Strategy,
    g2: Graph,
    right: Strategy,
    separator: Sequence[int],
    pivot: int,
) -> tuple[Graph, JoinNode]:
    """Glue two games: identify the pivot of g2 with the clique S of g1.

    The joined graph keeps g1's vertex ids; g2's non-pivot vertices are
    appended in id order.  Separator vertices carry the product game
    (h1*h2, g1*g2) afterwards.
    """
    sep = tuple(sorted(set(separator)))
    if any(not 0 <= v < g1.n for v in sep):
        raise SeparatorNotClique("separator vertex outside the left graph")
    if not g1.is_clique(sep):
        raise SeparatorNotClique(f"{list(sep)} is not a clique")
    if not 0 <= pivot < g2.n:
        raise PivotNotInRightGraph(f"vertex {pivot} not in the right graph")
    mapping = {pivot: PIVOT}
    next_id = g1.n
    for v in range(g2.n):
        if v != pivot:
            mapping[v] = next_id
            next_id += 1
    h2, gv2 = game_of(right).get(pivot, (1, 0))
    relabeled = _relabel(right, mapping, inside_right=False)
    edges = list(g1.edges())
    for u, v in g2.edges():
        if pivot in (u, v):
            continue
        a, b = mapping[u], mapping[v]
        edges.append((min(a, b), max(a, b)))
    for s in sep:
        for u in g2.adj[pivot]:
            a, b = s, mapping[u]
            edges.append((min(a, b), max(a, b)))
    joined = Graph.from_edges(g1.n + g2.n - 1, set(edges))
    return joined, JoinNode(left, relabeled, sep, h2, gv2)


def _minimal_vectors(
    ratios: Sequence[Fraction],
) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Per-vertex lowest-terms (hatness, guesses) with g/h = r."""
    hs = tuple(r.denominator for r in ratios)
    gs = tuple(r.numerator for r in ratios)
    return hs, gs


def _validate_ratios(g: Graph, r: Sequence[Fraction]) -> list[Fraction]:
    rs = [Fraction(x) for x in r]
    if len(rs) != g.n:
        raise ValueError("need one ratio per vertex")
    if any(x < 0 or x > 1 for x in rs):
        raise ValueError("ratios must lie in [0, 1]")
    return rs


def _leaf_split(
    tree: CliqueTree, alive: set[int], idx: int
) -> tuple[frozenset[int], frozenset[int]]:
    """Exclusive vertices R and separator S of an alive leaf node."""
    clique = tree.nodes[idx]
    nbrs = [j for j in tree.neighbors_of(idx) if j in alive]
    if not nbrs:
        return clique, frozenset()
    parent = tree.nodes[nbrs[0]]
    return clique - parent, clique & parent


def _alive_leaf(tree: CliqueTree, alive: set[int]) -> int:
    """Lowest-index alive node with at most one alive tree neighbor."""
    for idx in sorted(alive):
        degree = sum(1 for j in tree.neighbors_of(idx) if j in alive)
        if degree <= 1:
            return idx
    raise AssertionError("a tree always has a leaf")


def decide_region(g: Graph, r: Sequence[Fraction]) -> bool:
    """True iff the game with ratio vector ``r`` is winning (r not in the
    region); the greedy leaf-by-leaf rescaling run, all comparisons exact."""
    ratios = dict(enumerate(_validate_ratios(g, r)))
    if g.n == 0:
        return False  # no bears, no winning arrangement coverage
    tree = clique_tree(g)
    alive = set(range(len(tree.nodes)))
    while len(alive) > 1:
        idx = _alive_leaf(tree, alive)
        clique = tree.nodes[idx]
        if sum(ratios[v] for v in clique) >= 1:
            return True
        excl, sep = _leaf_split(tree, alive, idx)
        alpha = 1 - sum(ratios[v] for v in excl)
        for v in sep:
            ratios[v] = ratios[v] / alpha
        for v in excl:
            del ratios[v]
        alive.remove(idx)
    last = tree.nodes[next(iter(alive))]
    return sum(ratios[v] for v in last) >= 1


def chordal_synthesize(g: Graph, r: Sequence[Fraction]) -> SynthesisResult:
    """Winning vectors plus strategy, or InRegion, for a chordal graph.

    Follows the same recursion as decide_region; a winning clique becomes a
    clique leaf with per-vertex lowest-terms vectors, and each reduction
    step contributes a join against the clique on R plus a pivot whose
    ratio alpha makes the clique sum exactly 1.  Vertices outside the
    strategy's leaves abstain (h=1, g=0).
    """
    ratios = dict(enumerate(_validate_ratios(g, r)))
    if g.n == 0:
        return InRegion()
    tree = clique_tree(g)

    def build(alive: set[int], ratios: dict[int, Fraction]) -> Strategy | None:
        if len(alive) == 1:
            clique = sorted(tree.nodes[next(iter(alive))])
            if sum(ratios[v] for v in clique) < 1:
                return None
            hs, gs = _minimal_vectors([ratios[v] for v in clique])
            return clique_strategy(hs, gs, clique)
        idx = _alive_leaf(tree, alive)
        clique = sorted(tree.nodes[idx])
        if sum(ratios[v] for v in clique) >= 1:
            hs, gs = _minimal_vectors([ratios[v] for v in clique])
            return clique_strategy(hs, gs, clique)
        excl, sep = _leaf_split(tree, alive, idx)
        alpha = 1 - sum(ratios[v] for v in excl)
        reduced = dict(ratios)
        for v in sep:
            reduced[v] = reduced[v] / alpha
        for v in excl:
            del reduced[v]
        left = build(alive - {idx}, reduced)
        if left is None:
            return None
        # Clique on R plus the contracted pivot; ratios sum to 1 exactly.
        r_vertices = sorted(excl)
        leaf_ratios = [ratios[v] for v in r_vertices] + [alpha]
        hs, gs = _minimal_vectors(leaf_ratios)
        right = clique_strategy(hs, gs, tuple(r_vertices) + (PIVOT,))
        return JoinNode(left, right, tuple(sorted(sep)), hs[-1], gs[-1])

    strategy = build(set(range(len(tree.nodes))), ratios)
    if strategy is None:
        return InRegion()
    spec = game_spec_for(strategy, g)
    return Winning(spec.hatness, spec.guesses, strategy)


def p3_strategy(h: int, g: int) -> P3Leaf:
    """Explicit strategy on the canonical 3-vertex path (center = 1)."""
    if not 1 <= g <= h:
        raise InequalityNotSatisfied("need 1 <= g <= h")
    if g * g - 3 * g * h + h * h >= 0:
        raise InequalityNotSatisfied(
            f"g^2 - 3gh + h^2 = {g * g - 3 * g * h + h * h} is not negative"
        )
    return P3Leaf((0, 1, 2), h, g)


def fibonacci_game(i: int) -> tuple[int, int]:
    """The i-th coprime pair (h, g) = (F(2i), F(2i-2)) with F(0)=F(1)=1.

    Satisfies g^2 - 3gh + h^2 = -1, so the pair feeds p3_strategy.
    """
    if i < 1:
        raise ValueError("index must be >= 1")
    fib = [1, 1]
    while len(fib) <= 2 * i:
        fib.append(fib[-1] + fib[-2])
    return fib[2 * i], fib[2 * i - 2]


def path_game(
    epsilon: Fraction, steps: int | None = None
) -> tuple[Graph, tuple[int, ...], tuple[int, ...], Strategy]:
    """Iterated edge-joining construction driving path ratios toward 1/4.

    Starts from a single edge at ratio 1/2 each and, at step i, glues a
    fresh two-vertex clique game with ratios 1/2 + i*eps (on the identified
    vertex) and 1/2 - i*eps (on the new endpoint) onto both ends.  After
    k = ceil(1/(4*eps)) steps every vertex ratio is at most 1/4 + eps.
    """
    eps = Fraction(epsilon)
    if not 0 < eps < Fraction(1, 4):
        raise EpsilonOutOfRange(f"epsilon {eps} outside (0, 1/4)")
    k = steps if steps is not None else math.ceil(Fraction(1, 4 * eps))
    if k < 0:
        raise ValueError("steps must be >= 0")
    if Fraction(1, 2) + k * eps > 1:
        raise EpsilonOutOfRange(
            f"{k} steps push a clique ratio above 1 at epsilon {eps}"
        )
    n = 2 + 2 * k
    mid_left, mid_right = k, k + 1
    strategy: Strategy = clique_strategy(
        (2, 2), (1, 1), (mid_left, mid_right)
    )
    for i in range(1, k + 1):
        grow = Fraction(1, 2) + i * eps  # identified vertex
        tail = Fraction(1, 2) - i * eps  # new endpoint
        hs, gs = _minimal_vectors([tail, grow])
        for old_end, new_end in (
            (mid_left - i + 1, mid_left - i),
            (mid_right + i - 1, mid_right + i),
        ):
            leaf = clique_strategy(hs, gs, (new_end, PIVOT))
            strategy = JoinNode(
                strategy, leaf, (old_end,), hs[-1], gs[-1]
            )
    graph = make_path(n)
    spec = game_spec_for(strategy, graph)
    return graph, spec.hatness, spec.guesses, strategy


def derive_ratio_game(
    base: Strategy, target: Fraction
) -> tuple[int, int, Strategy]:
    """Turn a uniform winning game into one with hatness/guesses = target.

    Requires target <= h/g of the base game.  Scales by lcm(h, p)/h and
    pads guesses up to l*q/p, so the derived ratio is exact.
    """
    game = game_of(base)
    if not game:
        raise MalformedStrategy("base strategy covers no vertices")
    pairs = set(game.values())
    if len(pairs) != 1:
        raise MalformedStrategy("base strategy must be uniform")
    (h, g), = pairs
    if g < 1:
        raise MalformedStrategy("base game must actually guess")
    target = Fraction(target)
    p, q = target.numerator, target.denominator
    if target > Fraction(h, g):
        raise RatioNotDominated(f"target {target} exceeds base ratio {h}/{g}")
    ell = math.lcm(h, p)
    factor = ell // h
    new_h = ell
    new_g = ell * q // p
    strategy: Strategy = base if factor == 1 else ScaleNode(factor, base)
    scaled_g = factor * g
    if new_g > scaled_g:
        targets = tuple((v, new_g) for v in sorted(game))
        strategy = PadNode(targets, strategy)
    return new_h, new_g, strategy
