"""Bisection for the optimal colors-per-guess value of chordal graphs.

The decision oracle is the exact chordal region decision; bisection on the
uniform ratio axis brackets the reciprocal of the optimum.  A rational
optimum must be 1/q for an integer q (the polynomial has constant term 1
and integer coefficients, so the rational root theorem pins the numerator),
and after max(2k, 3n) halvings the bracket is narrow enough to contain at
most one such candidate; the candidate is additionally confirmed by an
exact polynomial-root check before being reported as Exact.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .errors import NotChordal
from .graphs import Graph, is_chordal
from .indpoly import univariate_polynomial, z_eval_unguarded
from .numerics import smallest_positive_root
from .synthesis import decide_region


@dataclass(frozen=True)
class Exact:
    value: int


@dataclass(frozen=True)
class Approx:
    t: Fraction
    bracket: tuple[Fraction, Fraction]


MuResult = Union[Exact, Approx]


def approximate_mu(g: Graph, k: int) -> MuResult:
    """Value of the optimum within 2**-k; exact when it is rational.

    Runs s = max(2k, 3n) halvings of [0, 1] against the region decision,
    then scans the bracket for a reciprocal integer 1/q, q <= 2**n, and
    reports Exact(q) only if U_G(1/q) = 0 exactly.  Otherwise returns the
    midpoint reciprocal t = 2/(lo + hi) with the bracket.
    """
    ok, _ = is_chordal(g)
    if not ok:
        raise NotChordal("approximate_mu requires a chordal graph")
    if g.n < 1:
        raise ValueError("graph must have at least one vertex")
    if k < 1:
        raise ValueError("precision must be at least one bit")
    steps = max(2 * k, 3 * g.n)
    lo, hi = Fraction(0), Fraction(1)
    for _ in range(steps):
        mid = (lo + hi) / 2
        if decide_region(g, [mid] * g.n):
            hi = mid
        else:
            lo = mid
    q_min = max(1, math.ceil(1 / hi))
    if lo > 0:
        q_max = math.floor(1 / lo)
    else:
        q_max = 2**g.n
    q_max = min(q_max, 2**g.n)
    for q in range(q_min, q_max + 1):
        inv = Fraction(1, q)
        if lo <= inv <= hi and z_eval_unguarded(g, [inv] * g.n) == 0:
            return Exact(q)
    return Approx(2 / (lo + hi), (lo, hi))


def mu_upper_bound_root(
    g: Graph, precision_bits: int
) -> tuple[Fraction, Fraction]:
    """Bracket on the reciprocal of the smallest positive root of U_G.

    For chordal graphs this brackets the optimum exactly; for arbitrary
    graphs it is an upper bound (ratios inside the positivity region are
    losing regardless of structure).
    """
    poly = univariate_polynomial(g)
    bits = precision_bits
    lo, hi = smallest_positive_root(poly, bits)
    while lo == 0:
        bits *= 2
        lo, hi = smallest_positive_root(poly, bits)
    return 1 / hi, 1 / lo


def star_root(delta: int, precision_bits: int) -> tuple[Fraction, Fraction]:
    """Bracket on the root of (1-x)**delta - x in (0, 1)."""
    if delta < 1:
        raise ValueError("delta must be >= 1")
    coeffs = [
        (-1) ** i * math.comb(delta, i) for i in range(delta + 1)
    ]
    coeffs[1] -= 1
    bits = precision_bits
    lo, hi = smallest_positive_root(tuple(coeffs), bits)
    while lo == 0:
        bits *= 2
        lo, hi = smallest_positive_root(tuple(coeffs), bits)
    return lo, hi
