"""Exact rational arithmetic, integer polynomials and Sturm root isolation.

Every quantity that feeds a decision (winning/losing, region membership,
root brackets) is a ``fractions.Fraction`` or a plain int; no floats.
Polynomials are tuples of coefficients, constant term first, with trailing
zeros trimmed; the zero polynomial is the empty tuple.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Sequence

from .errors import NoPositiveRootInUnitInterval

Rational = Fraction

Poly = tuple  # coefficients, constant term first


def trim(coeffs: Sequence) -> Poly:
    """Drop trailing zero coefficients."""
    cs = list(coeffs)
    while cs and cs[-1] == 0:
        cs.pop()
    return tuple(cs)


def degree(p: Sequence) -> int:
    """Degree of ``p``; -1 for the zero polynomial."""
    return len(trim(p)) - 1


def eval_poly(p: Sequence, x: Fraction) -> Fraction:
    """Evaluate ``p`` at ``x`` exactly by Horner's rule."""
    acc = Fraction(0)
    for c in reversed(trim(p)):
        acc = acc * x + c
    return acc


def poly_derivative(p: Sequence) -> Poly:
    return trim([i * c for i, c in enumerate(trim(p))][1:])


def poly_remainder(a: Sequence, b: Sequence) -> Poly:
    """Remainder of ``a`` divided by ``b`` over the rationals."""
    a = [Fraction(c) for c in trim(a)]
    b = [Fraction(c) for c in trim(b)]
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    lead = b[-1]
    while len(a) >= len(b):
        factor = a[-1] / lead
        shift = len(a) - len(b)
        for i, c in enumerate(b):
            a[shift + i] -= factor * c
        a.pop()
        while a and a[-1] == 0:
            a.pop()
    return tuple(a)


def sturm_chain(p: Sequence) -> list[Poly]:
    """Canonical signed-remainder sequence p, p', -rem(...), ..."""
    chain = [trim(p)]
    d = poly_derivative(p)
    if d:
        chain.append(d)
        while True:
            rem = poly_remainder(chain[-2], chain[-1])
            if not rem:
                break
            chain.append(tuple(-c for c in rem))
    return chain


def sign_variations(chain: list[Poly], x: Fraction) -> int:
    """Sign changes of the chain at ``x``, zeros dropped."""
    signs = []
    for q in chain:
        v = eval_poly(q, x)
        if v != 0:
            signs.append(1 if v > 0 else -1)
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def count_roots(chain: list[Poly], a: Fraction, b: Fraction) -> int:
    """Distinct real roots in (a, b]; requires p(a) != 0 and a < b."""
    return sign_variations(chain, a) - sign_variations(chain, b)


def smallest_positive_root(
    p: Sequence, precision_bits: int
) -> tuple[Fraction, Fraction]:
    """Bracket the leftmost root of ``p`` in (0, 1].

    Returns [lo, hi] with hi - lo <= 2**-precision_bits, p(lo) > 0,
    p(hi) <= 0 and no root of p in (0, lo).  Requires p(0) > 0; raises
    NoPositiveRootInUnitInterval if the Sturm count on (0, 1] is zero.
    """
    p = trim(p)
    if eval_poly(p, Fraction(0)) <= 0:
        raise ValueError("smallest_positive_root requires p(0) > 0")
    chain = sturm_chain(p)
    lo, hi = Fraction(0), Fraction(1)
    if count_roots(chain, lo, hi) == 0:
        raise NoPositiveRootInUnitInterval(
            f"no root of {list(p)} in (0, 1]"
        )
    width = Fraction(1, 2**precision_bits)
    # Invariant: no root in (0, lo], at least one in (lo, hi].
    while hi - lo > width or eval_poly(p, hi) > 0:
        mid = (lo + hi) / 2
        if count_roots(chain, lo, mid) >= 1:
            hi = mid
        else:
            lo = mid
        # The leftmost root must show a sign change once isolated;
        # guard against even multiplicity, which cannot be bracketed.
        if hi - lo < width / 2**64:
            raise ArithmeticError("leftmost root has no sign change")
    return lo, hi


def sturm_positive_on_unit_interval(p: Sequence) -> bool:
    """Decide exactly whether p(x) > 0 for all x in [0, 1].

    Requires p(0) > 0.  A continuous function positive at 0 stays positive
    on [0, 1] iff it has no root in (0, 1], which Sturm counting settles.
    """
    p = trim(p)
    if eval_poly(p, Fraction(0)) <= 0:
        raise ValueError("sturm_positive_on_unit_interval requires p(0) > 0")
    if degree(p) < 1:
        return True
    chain = sturm_chain(p)
    return count_roots(chain, Fraction(0), Fraction(1)) == 0


def nearest_integer(x: Fraction) -> int:
    """Nearest integer to ``x``; exact halves round up."""
    return math.floor(x + Fraction(1, 2))


def lcm_list(values: Sequence[int]) -> int:
    """Least common multiple of a non-empty list of positive integers."""
    if not values:
        raise ValueError("lcm_list requires a non-empty list")
    if any(v <= 0 for v in values):
        raise ValueError("lcm_list requires positive integers")
    return math.lcm(*values)
