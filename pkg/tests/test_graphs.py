import random
from itertools import combinations

import pytest

from hatgame.errors import EmptyVertexSet, InvalidSize, NotChordal, ParseError
from hatgame.graphs import (
    Graph,
    clique_tree,
    format_graph,
    induced_subgraph,
    is_chordal,
    make_clique,
    make_cycle,
    make_path,
    make_star,
    parse_graph,
    random_chordal,
)
from helpers import chordal_by_definition, random_graph


def test_constructors():
    assert list(make_path(3).edges()) == [(0, 1), (1, 2)]
    assert make_clique(3).edge_count() == 3
    star = make_star(4)
    assert star.edge_count() == 4
    assert all(0 in (u, v) for u, v in star.edges())
    assert make_cycle(4).edge_count() == 4
    for bad in (make_path, make_clique):
        with pytest.raises(InvalidSize):
            bad(0)
    with pytest.raises(InvalidSize):
        make_cycle(2)
    with pytest.raises(InvalidSize):
        make_star(0)


def test_graph_text_round_trip():
    for g in (make_path(5), make_cycle(6), make_clique(4), make_star(3)):
        text = format_graph(g)
        assert parse_graph(text) == g
        assert format_graph(parse_graph(text)) == text


def test_graph_text_comments_and_errors():
    assert parse_graph("# hello\n2 1\n0 1\n") == make_path(2)
    with pytest.raises(ParseError):
        parse_graph("2 1\n1 0\n")  # u < v required
    with pytest.raises(ParseError):
        parse_graph("2 2\n0 1\n0 1\n")  # duplicate
    with pytest.raises(ParseError):
        parse_graph("2 2\n0 1\n")  # count mismatch
    with pytest.raises(ParseError):
        parse_graph("")
    with pytest.raises(ParseError):
        parse_graph("2 1\n0 5\n")


def test_is_chordal_basics():
    assert is_chordal(make_cycle(4)) == (False, None)
    assert is_chordal(make_path(5))[0]
    assert is_chordal(make_clique(6))[0]
    assert not is_chordal(make_cycle(5))[0]


def test_is_chordal_matches_definition_exhaustive_small():
    # every graph on up to 5 vertices
    for n in range(1, 6):
        pairs = list(combinations(range(n), 2))
        for mask in range(1 << len(pairs)):
            edges = [e for i, e in enumerate(pairs) if mask >> i & 1]
            g = Graph.from_edges(n, edges)
            assert is_chordal(g)[0] == chordal_by_definition(g)


def test_is_chordal_matches_definition_random():
    rng = random.Random(424242)
    for _ in range(80):
        g = random_graph(rng, rng.randint(6, 8), rng.random())
        assert is_chordal(g)[0] == chordal_by_definition(g)


def test_peo_is_valid():
    rng = random.Random(5)
    for _ in range(20):
        g = random_chordal(rng.randint(1, 12), rng)
        ok, order = is_chordal(g)
        assert ok
        pos = {v: i for i, v in enumerate(order)}
        for i, v in enumerate(order):
            later = [u for u in g.adj[v] if pos[u] > i]
            for a, b in combinations(later, 2):
                assert g.has_edge(a, b)


def test_clique_tree_examples():
    t = clique_tree(make_path(3))
    assert sorted(sorted(c) for c in t.nodes) == [[0, 1], [1, 2]]
    assert len(t.tree_edges) == 1

    t = clique_tree(make_clique(4))
    assert t.nodes == (frozenset({0, 1, 2, 3}),)
    assert t.tree_edges == ()

    # two triangles sharing an edge
    g = Graph.from_edges(5, [(0, 1), (0, 2), (1, 2), (1, 3), (2, 3), (3, 4)])
    t = clique_tree(g)
    assert frozenset({0, 1, 2}) in t.nodes
    assert frozenset({1, 2, 3}) in t.nodes
    i = t.nodes.index(frozenset({0, 1, 2}))
    j = t.nodes.index(frozenset({1, 2, 3}))
    assert (min(i, j), max(i, j)) in {
        (min(a, b), max(a, b)) for a, b in t.tree_edges
    }


def test_clique_tree_rejects_non_chordal():
    with pytest.raises(NotChordal):
        clique_tree(make_cycle(4))


def _brute_maximal_cliques(g: Graph) -> set[frozenset[int]]:
    cliques = set()
    for size in range(1, g.n + 1):
        for combo in combinations(range(g.n), size):
            if g.is_clique(combo):
                cliques.add(frozenset(combo))
    return {
        c for c in cliques if not any(c < d for d in cliques)
    }


def test_clique_tree_invariants_random():
    rng = random.Random(31337)
    for _ in range(25):
        g = random_chordal(rng.randint(1, 12), rng)
        t = clique_tree(g)
        # nodes are exactly the maximal cliques
        assert set(t.nodes) == _brute_maximal_cliques(g)
        # every edge inside some node
        for u, v in g.edges():
            assert any({u, v} <= c for c in t.nodes)
        # running intersection: nodes holding v induce a subtree
        adj = {i: set() for i in range(len(t.nodes))}
        for a, b in t.tree_edges:
            adj[a].add(b)
            adj[b].add(a)
        for v in range(g.n):
            holding = {i for i, c in enumerate(t.nodes) if v in c}
            if not holding:
                continue
            start = next(iter(holding))
            seen = {start}
            stack = [start]
            while stack:
                i = stack.pop()
                for j in adj[i]:
                    if j in holding and j not in seen:
                        seen.add(j)
                        stack.append(j)
            assert seen == holding
        # leaf containment: C cap (union of others) inside the neighbor
        if len(t.nodes) > 1:
            for i, c in enumerate(t.nodes):
                if len(adj[i]) == 1:
                    (p,) = adj[i]
                    others = set().union(
                        *(t.nodes[j] for j in range(len(t.nodes)) if j != i)
                    )
                    assert c & others <= t.nodes[p]


def test_clique_tree_deterministic():
    g = random_chordal(10, random.Random(77))
    assert clique_tree(g) == clique_tree(g)


def test_induced_subgraph():
    g, mapping = induced_subgraph(make_path(5), [1, 2, 3])
    assert g == make_path(3)
    assert mapping == {1: 0, 2: 1, 3: 2}
    g, _ = induced_subgraph(make_clique(4), [0, 3])
    assert g == make_clique(2)
    g, _ = induced_subgraph(make_star(3), [1, 2, 3])
    assert g.edge_count() == 0
    with pytest.raises(EmptyVertexSet):
        induced_subgraph(make_path(3), [])


def test_random_chordal_is_chordal():
    rng = random.Random(1)
    for _ in range(30):
        g = random_chordal(rng.randint(1, 14), rng)
        assert is_chordal(g)[0]
