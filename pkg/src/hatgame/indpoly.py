"""Signed independence polynomials and the brute-force region oracle.

These are validation oracles with hard size guards; the production path
for region decisions is the chordal recursion in ``synthesis``.  Every
independent-set aggregate is computed by the vertex expansion

    Z(S) = Z(S - {v}) - x_v * Z(S - N+[v])

memoized on vertex bitmasks, pivoting on the lowest set bit.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import GraphTooLarge
from .graphs import Graph
from .numerics import sturm_positive_on_unit_interval, trim

MAX_ENUM_VERTICES = 30
MAX_REGION_VERTICES = 20


def _check_size(g: Graph, limit: int) -> None:
    if g.n > limit:
        raise GraphTooLarge(f"n={g.n} exceeds the enumeration guard {limit}")


def _closed_masks(g: Graph) -> list[int]:
    return [
        (1 << v) | sum(1 << u for u in g.adj[v]) for v in range(g.n)
    ]


def univariate_polynomial(g: Graph) -> tuple[int, ...]:
    """U_G as int coefficients, constant first.

    Coefficient of x^k is (-1)^k times the number of independent sets of
    size k; the constant term is always 1.
    """
    _check_size(g, MAX_ENUM_VERTICES)
    closed = _closed_masks(g)
    memo: dict[int, tuple[int, ...]] = {0: (1,)}

    def rec(mask: int) -> tuple[int, ...]:
        cached = memo.get(mask)
        if cached is not None:
            return cached
        v = (mask & -mask).bit_length() - 1
        without = rec(mask & ~(1 << v))
        folded = rec(mask & ~closed[v])
        out = list(without) + [0] * (len(folded) + 1 - len(without))
        for i, c in enumerate(folded):
            out[i + 1] -= c
        result = trim(out)
        memo[mask] = result
        return result

    return rec((1 << g.n) - 1)


def _z_mask(
    g: Graph, x: Sequence[Fraction], mask: int, memo: dict[int, Fraction]
) -> Fraction:
    closed = _closed_masks(g)

    def rec(m: int) -> Fraction:
        if m == 0:
            return Fraction(1)
        got = memo.get(m)
        if got is not None:
            return got
        v = (m & -m).bit_length() - 1
        val = rec(m & ~(1 << v)) - x[v] * rec(m & ~closed[v])
        memo[m] = val
        return val

    return rec(mask)


def z_eval(g: Graph, x: Sequence[Fraction]) -> Fraction:
    """Exact value of the signed independence polynomial at ``x``."""
    _check_size(g, MAX_ENUM_VERTICES)
    if len(x) != g.n:
        raise ValueError("need one value per vertex")
    return _z_mask(g, [Fraction(v) for v in x], (1 << g.n) - 1, {})


def z_eval_unguarded(g: Graph, x: Sequence[Fraction]) -> Fraction:
    """z_eval without the size guard; internal use by the mu module only."""
    return _z_mask(g, [Fraction(v) for v in x], (1 << g.n) - 1, {})


def expansion_check(g: Graph, x: Sequence[Fraction], v: int) -> bool:
    """Verify Z(G) = Z(G - {v}) - x_v * Z(G - N+[v]) at ``x`` exactly."""
    _check_size(g, MAX_ENUM_VERTICES)
    xs = [Fraction(c) for c in x]
    memo: dict[int, Fraction] = {}
    full = (1 << g.n) - 1
    closed = (1 << v) | sum(1 << u for u in g.adj[v])
    whole = _z_mask(g, xs, full, memo)
    without = _z_mask(g, xs, full & ~(1 << v), memo)
    folded = _z_mask(g, xs, full & ~closed, memo)
    return whole == without - xs[v] * folded


@dataclass(frozen=True)
class RegionQuery:
    """A graph with a per-vertex ratio vector in [0, 1]."""

    graph: Graph
    ratios: tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.ratios) != self.graph.n:
            raise ValueError("need one ratio per vertex")
        if any(r < 0 or r > 1 for r in self.ratios):
            raise ValueError("ratios must lie in [0, 1]")


def ray_polynomial(g: Graph, r: Sequence[Fraction]) -> tuple[Fraction, ...]:
    """Coefficients of Z_G(lambda * r) as a polynomial in lambda.

    Coefficient of lambda^k is (-1)^k times the sum over independent sets
    of size k of the product of their ratios; computed exactly.
    """
    closed = _closed_masks(g)
    rs = [Fraction(c) for c in r]
    memo: dict[int, tuple[Fraction, ...]] = {0: (Fraction(1),)}

    def rec(mask: int) -> tuple[Fraction, ...]:
        cached = memo.get(mask)
        if cached is not None:
            return cached
        v = (mask & -mask).bit_length() - 1
        without = rec(mask & ~(1 << v))
        folded = rec(mask & ~closed[v])
        out = list(without) + [Fraction(0)] * (
            len(folded) + 1 - len(without)
        )
        for i, c in enumerate(folded):
            out[i + 1] -= rs[v] * c
        result = trim(out)
        memo[mask] = result
        return result

    return rec((1 << g.n) - 1)


def region_oracle(q: RegionQuery) -> bool:
    """Exact membership of the ratio vector in the positivity region.

    True iff Z stays strictly positive on the whole box [0, r], decided by
    checking Z(lambda * r) > 0 on the ray lambda in [0, 1] with Sturm
    counting.  Ray positivity is equivalent to membership: the region is
    exactly the set reachable from 0 along positive paths, and the segment
    {lambda * r} is such a path, while membership forces positivity on it
    because lambda * r <= r.
    """
    _check_size(q.graph, MAX_REGION_VERTICES)
    p = ray_polynomial(q.graph, q.ratios)
    return sturm_positive_on_unit_interval(p)
