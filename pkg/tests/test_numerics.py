import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from hatgame.errors import NoPositiveRootInUnitInterval
from hatgame.numerics import (
    eval_poly,
    lcm_list,
    nearest_integer,
    smallest_positive_root,
    sturm_chain,
    count_roots,
    sturm_positive_on_unit_interval,
    trim,
)
from helpers import naive_poly_eval, sqrt_bounds

GOLDEN_DOWN = (1, -3, 1)  # root (3 - sqrt 5)/2
QUAD = (1, -4, 2)  # root 1 - sqrt(2)/2


def test_eval_poly_examples():
    assert eval_poly(GOLDEN_DOWN, Fraction(2, 5)) == Fraction(-1, 25)
    assert eval_poly(GOLDEN_DOWN, Fraction(0)) == 1
    assert eval_poly(QUAD, Fraction(1, 4)) == Fraction(1, 8)


@given(
    st.lists(st.integers(-50, 50), max_size=9),
    st.fractions(min_value=-4, max_value=4),
)
def test_eval_poly_matches_naive(coeffs, x):
    assert eval_poly(coeffs, x) == naive_poly_eval(coeffs, x)


def test_root_linear():
    lo, hi = smallest_positive_root((1, -2), 20)
    assert lo < Fraction(1, 2) <= hi
    assert hi - lo <= Fraction(1, 2**20)


def test_root_golden():
    lo, hi = smallest_positive_root(GOLDEN_DOWN, 30)
    s_lo, s_hi = sqrt_bounds(5, 40)
    root_lo, root_hi = (3 - s_hi) / 2, (3 - s_lo) / 2
    assert lo < root_hi and root_lo <= hi
    assert hi - lo <= Fraction(1, 2**30)
    assert eval_poly(GOLDEN_DOWN, lo) > 0
    assert eval_poly(GOLDEN_DOWN, hi) <= 0


def test_root_quadratic():
    lo, hi = smallest_positive_root(QUAD, 30)
    s_lo, s_hi = sqrt_bounds(2, 40)
    root_lo, root_hi = 1 - s_hi / 2, 1 - s_lo / 2
    assert lo < root_hi and root_lo <= hi


def test_root_requires_sign_change_in_unit_interval():
    with pytest.raises(NoPositiveRootInUnitInterval):
        smallest_positive_root((1, 1), 10)
    with pytest.raises(NoPositiveRootInUnitInterval):
        smallest_positive_root((1,), 10)
    with pytest.raises(ValueError):
        smallest_positive_root((-1, 2), 10)


def test_root_even_multiplicity():
    # (1-2x)^2 (3-4x): the double root sits at the dyadic point 1/2, so
    # bisection lands on it exactly and the bracket closes with p(hi) = 0.
    lo, hi = smallest_positive_root((3, -16, 28, -16), 10)
    assert hi == Fraction(1, 2)
    assert lo < hi and eval_poly((3, -16, 28, -16), lo) > 0

    # (2x^2 - 4x + 1)^2: leftmost root 1 - sqrt(2)/2 has even multiplicity
    # and is irrational, so no rational endpoint can close the bracket;
    # the isolator must refuse rather than spin.
    with pytest.raises(ArithmeticError):
        smallest_positive_root((1, -8, 20, -16, 4), 10)


def test_root_bracket_properties_random():
    # Polynomials with planted rational roots: p = prod(1 - x/r_i).
    rng = random.Random(20240811)
    for _ in range(40):
        roots = [
            Fraction(rng.randint(1, 40), rng.randint(20, 60))
            for _ in range(rng.randint(1, 4))
        ]
        coeffs = [Fraction(1)]
        for r in roots:
            next_c = [Fraction(0)] * (len(coeffs) + 1)
            for i, c in enumerate(coeffs):
                next_c[i] += c
                next_c[i + 1] -= c / r
            coeffs = next_c
        smallest = min(roots)
        if smallest > 1:
            continue
        lo, hi = smallest_positive_root(coeffs, 25)
        assert lo < smallest <= hi
        assert hi - lo <= Fraction(1, 2**25)
        assert eval_poly(coeffs, lo) > 0
        assert eval_poly(coeffs, hi) <= 0


def test_count_roots_with_planted_roots():
    rng = random.Random(7)
    for _ in range(40):
        roots = [
            Fraction(rng.randint(-30, 30), rng.randint(1, 15))
            for _ in range(rng.randint(1, 4))
        ]
        coeffs = [Fraction(1)]
        for r in roots:
            next_c = [Fraction(0)] * (len(coeffs) + 1)
            for i, c in enumerate(coeffs):
                next_c[i] += c * (-r)
                next_c[i + 1] += c
            coeffs = next_c
        a = Fraction(rng.randint(-40, 10), 7)
        b = a + Fraction(rng.randint(1, 60), 7)
        if eval_poly(coeffs, a) == 0:
            continue
        expected = len({r for r in roots if a < r <= b})
        chain = sturm_chain(coeffs)
        assert count_roots(chain, a, b) == expected


def test_sturm_positive_examples():
    # golden-root polynomial compressed onto [0, 1/3]
    shifted = (Fraction(1), Fraction(-1), Fraction(1, 9))
    assert sturm_positive_on_unit_interval(shifted)
    assert not sturm_positive_on_unit_interval((1, -2))
    assert sturm_positive_on_unit_interval((1,))


def test_sturm_positive_agrees_with_dense_sampling():
    rng = random.Random(99)
    samples = [Fraction(i, 1024) for i in range(1025)]
    for _ in range(60):
        coeffs = [rng.randint(-9, 9) for _ in range(rng.randint(1, 9))]
        coeffs[0] = rng.randint(1, 9)
        verdict = sturm_positive_on_unit_interval(coeffs)
        values = [eval_poly(coeffs, s) for s in samples]
        if verdict:
            assert all(v > 0 for v in values)
        if any(v <= 0 for v in values):
            assert not verdict


def test_nearest_integer_examples():
    assert nearest_integer(Fraction(7, 2)) == 4
    assert nearest_integer(Fraction(13, 5)) == 3
    assert nearest_integer(Fraction(5, 3)) == 2
    assert nearest_integer(Fraction(-7, 2)) == -3  # ties round up


@given(st.fractions(min_value=-1000, max_value=1000))
def test_nearest_integer_within_half(x):
    assert abs(x - nearest_integer(x)) <= Fraction(1, 2)


def test_lcm_list():
    assert lcm_list([2, 3]) == 6
    assert lcm_list([3, 3, 3]) == 3
    assert lcm_list([4, 6, 10]) == 60
    with pytest.raises(ValueError):
        lcm_list([])
    with pytest.raises(ValueError):
        lcm_list([0, 2])


def test_trim():
    assert trim([1, 2, 0, 0]) == (1, 2)
    assert trim([0, 0]) == ()
