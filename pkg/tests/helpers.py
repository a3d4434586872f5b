"""Independent oracles used to freeze expected values in the tests.

Everything here deliberately avoids the library's own code paths: naive
power-sum evaluation, subset enumeration, definitional chordality, and
integer-square-root bracketing of algebraic numbers.
"""

from fractions import Fraction
from itertools import combinations
from math import isqrt

from hatgame.graphs import Graph


def naive_poly_eval(coeffs, x: Fraction) -> Fraction:
    """Power-sum evaluation, the oracle for Horner."""
    return sum(Fraction(c) * x**i for i, c in enumerate(coeffs))


def sqrt_bounds(n: int, bits: int) -> tuple[Fraction, Fraction]:
    """Exact rationals lo <= sqrt(n) < hi with hi - lo = 2**-bits."""
    scale = 1 << (2 * bits)
    s = isqrt(n * scale)
    return Fraction(s, 1 << bits), Fraction(s + 1, 1 << bits)


def all_independent_sets(g: Graph) -> list[frozenset[int]]:
    """Subset enumeration oracle; fine for n <= 15."""
    out = []
    for size in range(g.n + 1):
        for combo in combinations(range(g.n), size):
            if all(
                not g.has_edge(u, v) for u, v in combinations(combo, 2)
            ):
                out.append(frozenset(combo))
    return out


def chordal_by_definition(g: Graph) -> bool:
    """True iff no induced cycle of length >= 4 exists; fine for n <= 8."""
    for size in range(4, g.n + 1):
        for combo in combinations(range(g.n), size):
            inside = set(combo)
            degrees = [
                sum(1 for u in g.adj[v] if u in inside) for v in combo
            ]
            if any(d != 2 for d in degrees):
                continue
            # All degrees 2: the induced graph is a disjoint union of
            # cycles; it is a single induced cycle iff it is connected.
            seen = {combo[0]}
            stack = [combo[0]]
            while stack:
                v = stack.pop()
                for u in g.adj[v]:
                    if u in inside and u not in seen:
                        seen.add(u)
                        stack.append(u)
            if len(seen) == size:
                return False
    return True


def random_graph(rng, n: int, p: float) -> Graph:
    edges = [
        (u, v)
        for u in range(n)
        for v in range(u + 1, n)
        if rng.random() < p
    ]
    return Graph.from_edges(n, edges)


def bisect_root(f, lo: Fraction, hi: Fraction, bits: int) -> tuple[Fraction, Fraction]:
    """Plain sign bisection oracle; needs f(lo) > 0 >= f(hi)."""
    assert f(lo) > 0 >= f(hi)
    while hi - lo > Fraction(1, 2**bits):
        mid = (lo + hi) / 2
        if f(mid) > 0:
            lo = mid
        else:
            hi = mid
    return lo, hi
