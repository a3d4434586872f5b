"""Undirected simple graphs, chordality recognition and clique trees.

Vertices are 0..n-1.  All tie-breaking is lowest-index-first so that every
derived object (orderings, clique trees, synthesized strategies) is
reproducible byte-for-byte.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterable, Iterator

from .errors import EmptyVertexSet, InvalidSize, NotChordal, ParseError


@dataclass(frozen=True)
class Graph:
    """Immutable undirected simple graph."""

    n: int
    adj: tuple[frozenset[int], ...]

    @staticmethod
    def from_edges(n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        if n < 0:
            raise InvalidSize("vertex count must be non-negative")
        nbrs: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise ValueError(f"self-loop at {u}")
            nbrs[u].add(v)
            nbrs[v].add(u)
        return Graph(n, tuple(frozenset(s) for s in nbrs))

    def neighbors(self, v: int) -> frozenset[int]:
        return self.adj[v]

    def closed_neighborhood(self, v: int) -> frozenset[int]:
        return self.adj[v] | {v}

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adj[u]

    def edges(self) -> Iterator[tuple[int, int]]:
        """Edges as (u, v) with u < v, lexicographically sorted."""
        for u in range(self.n):
            for v in sorted(self.adj[u]):
                if u < v:
                    yield u, v

    def edge_count(self) -> int:
        return sum(len(s) for s in self.adj) // 2

    def is_clique(self, vertices: Iterable[int]) -> bool:
        vs = list(vertices)
        return all(
            self.has_edge(a, b) for i, a in enumerate(vs) for b in vs[i + 1 :]
        )


def make_path(n: int) -> Graph:
    if n < 1:
        raise InvalidSize("path needs n >= 1")
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def make_cycle(n: int) -> Graph:
    if n < 3:
        raise InvalidSize("cycle needs n >= 3")
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def make_clique(n: int) -> Graph:
    if n < 1:
        raise InvalidSize("clique needs n >= 1")
    return Graph.from_edges(
        n, [(i, j) for i in range(n) for j in range(i + 1, n)]
    )


def make_star(leaves: int) -> Graph:
    """Star with ``leaves`` leaves; vertex 0 is the center."""
    if leaves < 1:
        raise InvalidSize("star needs at least one leaf")
    return Graph.from_edges(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


# ---------------------------------------------------------------------------
# Text format: `# comment` lines, then `n m`, then m lines `u v` with u < v.


def format_graph(g: Graph) -> str:
    lines = [f"{g.n} {g.edge_count()}"]
    lines.extend(f"{u} {v}" for u, v in g.edges())
    return "\n".join(lines) + "\n"


def parse_graph(text: str) -> Graph:
    header: tuple[int, int] | None = None
    edges: list[tuple[int, int]] = []
    seen: set[tuple[int, int]] = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        if raw.startswith("#"):
            continue
        parts = raw.split()
        if not parts and header is None:
            raise ParseError(lineno, "blank line before header")
        if header is None:
            if len(parts) != 2:
                raise ParseError(lineno, "expected header `n m`")
            try:
                n, m = int(parts[0]), int(parts[1])
            except ValueError:
                raise ParseError(lineno, "non-integer header") from None
            if n < 0 or m < 0:
                raise ParseError(lineno, "negative header values")
            header = (n, m)
            continue
        if len(parts) != 2:
            raise ParseError(lineno, "expected edge line `u v`")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise ParseError(lineno, "non-integer edge endpoints") from None
        n = header[0]
        if not (0 <= u < v < n):
            raise ParseError(lineno, f"edge must satisfy 0 <= u < v < {n}")
        if (u, v) in seen:
            raise ParseError(lineno, f"duplicate edge {u} {v}")
        seen.add((u, v))
        edges.append((u, v))
    if header is None:
        raise ParseError(1, "missing header")
    if len(edges) != header[1]:
        raise ParseError(
            1, f"header announces {header[1]} edges, found {len(edges)}"
        )
    return Graph.from_edges(header[0], edges)


# ---------------------------------------------------------------------------
# Chordality via maximum cardinality search.


def _mcs_order(g: Graph) -> list[int]:
    """MCS ordering, returned in elimination order (first = eliminated first).

    Vertices are numbered n-1 down to 0 picking the unnumbered vertex with
    most numbered neighbors, lowest index on ties.
    """
    weight = [0] * g.n
    numbered = [False] * g.n
    order = [0] * g.n
    for pos in range(g.n - 1, -1, -1):
        best = min(
            (v for v in range(g.n) if not numbered[v]),
            key=lambda v: (-weight[v], v),
        )
        numbered[best] = True
        order[pos] = best
        for u in g.adj[best]:
            if not numbered[u]:
                weight[u] += 1
    return order


def is_chordal(g: Graph) -> tuple[bool, list[int] | None]:
    """Chordality test; returns (True, perfect elimination ordering) or
    (False, None).

    Runs MCS and verifies the resulting ordering: for each vertex, its
    later neighbors must form a clique, which it suffices to check against
    the earliest later neighbor.
    """
    if g.n == 0:
        return True, []
    order = _mcs_order(g)
    pos = {v: i for i, v in enumerate(order)}
    for i, v in enumerate(order):
        later = [u for u in g.adj[v] if pos[u] > i]
        if not later:
            continue
        m = min(later, key=lambda u: pos[u])
        for u in later:
            if u != m and u not in g.adj[m]:
                return False, None
    return True, order


@dataclass(frozen=True)
class CliqueTree:
    """Maximal cliques of a chordal graph arranged in a junction tree."""

    nodes: tuple[frozenset[int], ...]
    tree_edges: tuple[tuple[int, int], ...]

    def neighbors_of(self, i: int) -> list[int]:
        out = []
        for a, b in self.tree_edges:
            if a == i:
                out.append(b)
            elif b == i:
                out.append(a)
        return out


def clique_tree(g: Graph) -> CliqueTree:
    """Clique tree of a chordal graph.

    Maximal cliques come from the perfect elimination ordering (each vertex
    with its later neighbors, non-maximal candidates filtered out); tree
    edges are a maximum-weight spanning tree of the clique-intersection
    graph (Kruskal, lowest index pair on ties), which is exactly the
    junction-tree characterization.  Disconnected inputs get one subtree
    per component linked through weight-0 edges, i.e. empty separators.
    """
    ok, order = is_chordal(g)
    if not ok:
        raise NotChordal("clique_tree requires a chordal graph")
    assert order is not None
    pos = {v: i for i, v in enumerate(order)}
    candidates: list[frozenset[int]] = []
    for i, v in enumerate(order):
        clique = frozenset({v} | {u for u in g.adj[v] if pos[u] > i})
        candidates.append(clique)
    maximal: list[frozenset[int]] = []
    for c in candidates:
        if any(c < d for d in candidates):
            continue
        if c not in maximal:
            maximal.append(c)
    # Deterministic node order: by sorted vertex list.
    maximal.sort(key=lambda c: sorted(c))
    k = len(maximal)
    if k <= 1:
        return CliqueTree(tuple(maximal), ())
    weighted = sorted(
        ((i, j) for i in range(k) for j in range(i + 1, k)),
        key=lambda e: (-len(maximal[e[0]] & maximal[e[1]]), e),
    )
    parent = list(range(k))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    edges: list[tuple[int, int]] = []
    for i, j in weighted:
        ri, rj = find(i), find(j)
        if ri != rj:
            parent[ri] = rj
            edges.append((i, j))
            if len(edges) == k - 1:
                break
    return CliqueTree(tuple(maximal), tuple(edges))


def induced_subgraph(
    g: Graph, keep: Iterable[int]
) -> tuple[Graph, dict[int, int]]:
    """Induced subgraph on ``keep`` with dense re-indexing.

    Returns the subgraph and the old->new index map.
    """
    kept = sorted(set(keep))
    if not kept:
        raise EmptyVertexSet("induced subgraph needs at least one vertex")
    if kept[0] < 0 or kept[-1] >= g.n:
        raise ValueError("vertex out of range")
    old_to_new = {v: i for i, v in enumerate(kept)}
    edges = [
        (old_to_new[u], old_to_new[v])
        for u, v in g.edges()
        if u in old_to_new and v in old_to_new
    ]
    return Graph.from_edges(len(kept), edges), old_to_new


def random_chordal(n: int, rng: random.Random) -> Graph:
    """Random chordal graph by reverse perfect elimination construction.

    Each new vertex attaches to a random subset of a random existing
    clique, so earlier-added vertices always see a clique among later ones.
    Pass a seeded ``random.Random`` for reproducibility.
    """
    if n < 1:
        raise InvalidSize("random_chordal needs n >= 1")
    edges: list[tuple[int, int]] = []
    cliques: list[list[int]] = [[0]]
    for v in range(1, n):
        base = rng.choice(cliques)
        size = rng.randint(0, len(base))
        attach = rng.sample(base, size)
        for u in attach:
            edges.append((min(u, v), max(u, v)))
        cliques.append(sorted(attach + [v]))
    return Graph.from_edges(n, edges)
