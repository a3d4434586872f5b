import math
import random
from fractions import Fraction

import pytest

from hatgame.errors import (
    EpsilonOutOfRange,
    InequalityNotSatisfied,
    NotChordal,
    PivotNotInRightGraph,
    RatioNotDominated,
    RatioSumBelowOne,
    SeparatorNotClique,
)
from hatgame.graphs import (
    Graph,
    make_clique,
    make_cycle,
    make_path,
    random_chordal,
)
from hatgame.indpoly import RegionQuery, region_oracle
from hatgame.strategy import CliqueLeaf, game_spec_for
from hatgame.synthesis import (
    InRegion,
    Winning,
    chordal_synthesize,
    clique_join,
    clique_strategy,
    decide_region,
    derive_ratio_game,
    fibonacci_game,
    p3_strategy,
    path_game,
)
from hatgame.verifier import Winning as Verified
from hatgame.verifier import exhaustive_verify


def _verify(graph, strategy) -> bool:
    spec = game_spec_for(strategy, graph)
    return isinstance(exhaustive_verify(spec, strategy), Verified)


def test_clique_strategy_rejects_small_sum():
    with pytest.raises(RatioSumBelowOne):
        clique_strategy((3, 3), (1, 1))


def test_clique_join_builds_path():
    left = clique_strategy((2, 2), (1, 1))
    right = clique_strategy((2, 2), (1, 1))
    graph, joined = clique_join(
        make_clique(2), left, make_clique(2), right, [1], 0
    )
    assert graph == make_path(3)
    spec = game_spec_for(joined, graph)
    assert (spec.hatness, spec.guesses) == ((2, 4, 2), (1, 1, 1))
    assert _verify(graph, joined)


def test_clique_join_chain():
    left = clique_strategy((2, 2), (1, 1))
    graph, joined = clique_join(
        make_clique(2), left, make_clique(2),
        clique_strategy((2, 2), (1, 1)), [1], 0,
    )
    graph2, joined2 = clique_join(
        graph, joined, make_clique(2), clique_strategy((2, 2), (1, 1)), [2], 0
    )
    assert graph2 == make_path(4)
    spec = game_spec_for(joined2, graph2)
    assert spec.hatness == (2, 4, 4, 2)
    assert spec.guesses == (1, 1, 1, 1)
    assert _verify(graph2, joined2)


def test_clique_join_errors():
    left = clique_strategy((2,) * 3, (1, 1, 1))
    p3 = make_path(3)
    with pytest.raises(SeparatorNotClique):
        clique_join(p3, left, make_clique(2),
                    clique_strategy((2, 2), (1, 1)), [0, 2], 0)
    with pytest.raises(PivotNotInRightGraph):
        clique_join(p3, left, make_clique(2),
                    clique_strategy((2, 2), (1, 1)), [0], 5)


def test_decide_region_examples():
    p3 = make_path(3)
    assert not decide_region(p3, [Fraction(1, 3)] * 3)
    assert decide_region(p3, [Fraction(2, 5)] * 3)
    for n in range(1, 7):
        assert decide_region(make_clique(n), [Fraction(1, n)] * n)
    with pytest.raises(NotChordal):
        decide_region(make_cycle(4), [Fraction(1, 4)] * 4)


def test_synthesize_p3_worked_example():
    result = chordal_synthesize(make_path(3), [Fraction(2, 5)] * 3)
    assert isinstance(result, Winning)
    assert result.hatness == (5, 15, 5)
    assert result.guesses == (2, 6, 2)
    assert _verify(make_path(3), result.strategy)


def test_synthesize_k4_base_case():
    result = chordal_synthesize(make_clique(4), [Fraction(1, 4)] * 4)
    assert isinstance(result, Winning)
    assert isinstance(result.strategy, CliqueLeaf)
    assert result.hatness == (4, 4, 4, 4)
    assert result.guesses == (1, 1, 1, 1)


def test_synthesize_in_region():
    assert isinstance(
        chordal_synthesize(make_path(3), [Fraction(1, 3)] * 3), InRegion
    )


def test_synthesize_disconnected():
    g = Graph.from_edges(4, [(0, 1), (2, 3)])
    r = [Fraction(1, 4), Fraction(1, 4), Fraction(1, 2), Fraction(1, 2)]
    assert decide_region(g, r)
    result = chordal_synthesize(g, r)
    assert isinstance(result, Winning)
    assert _verify(g, result.strategy)
    lost = [Fraction(1, 4)] * 4
    assert not decide_region(g, lost)
    assert isinstance(chordal_synthesize(g, lost), InRegion)


def _random_ratio(rng) -> Fraction:
    return min(
        Fraction(rng.randint(0, 6), rng.choice([4, 5, 6, 7, 8])), Fraction(1)
    )


def test_decide_agrees_with_region_oracle():
    rng = random.Random(90210)
    disagreements = 0
    trials = 0
    while trials < 120:
        g = random_chordal(rng.randint(1, 10), rng)
        if rng.random() < 0.5:
            r = [_random_ratio(rng)] * g.n
        else:
            r = [_random_ratio(rng) for _ in range(g.n)]
        fast = decide_region(g, r)
        slow = not region_oracle(RegionQuery(g, tuple(r)))
        if fast != slow:
            disagreements += 1
        trials += 1
    assert disagreements == 0


def test_synthesis_matches_decision_and_verifies():
    rng = random.Random(5150)
    checked = 0
    for _ in range(60):
        g = random_chordal(rng.randint(1, 6), rng)
        r = [_random_ratio(rng) for _ in range(g.n)]
        result = chordal_synthesize(g, r)
        assert isinstance(result, Winning) == decide_region(g, r)
        if isinstance(result, Winning):
            for v in range(g.n):
                assert (
                    Fraction(result.guesses[v], result.hatness[v]) <= r[v]
                )
            if math.prod(result.hatness) <= 10**7:
                assert _verify(g, result.strategy)
                checked += 1
    assert checked >= 10


def test_p3_strategy_examples():
    assert _verify(make_path(3), p3_strategy(2, 1))
    assert _verify(make_path(3), p3_strategy(5, 2))
    with pytest.raises(InequalityNotSatisfied):
        p3_strategy(3, 1)
    with pytest.raises(InequalityNotSatisfied):
        p3_strategy(2, 3)


def test_fibonacci_game():
    assert fibonacci_game(1) == (2, 1)
    assert fibonacci_game(2) == (5, 2)
    assert fibonacci_game(3) == (13, 5)
    for i in range(1, 21):
        h, g = fibonacci_game(i)
        assert g * g - 3 * g * h + h * h == -1
        assert math.gcd(h, g) == 1


def test_path_game_one_step():
    graph, h, g, strategy = path_game(Fraction(1, 8), 1)
    assert graph == make_path(4)
    assert h == (8, 16, 16, 8)
    assert g == (3, 5, 5, 3)
    assert _verify(graph, strategy)


def test_path_game_two_steps_ratios():
    graph, h, g, _ = path_game(Fraction(1, 8))  # auto k = 2
    assert graph.n == 6
    ratios = [Fraction(gv, hv) for gv, hv in zip(g, h)]
    assert ratios[0] == ratios[-1] == Fraction(1, 4)
    assert Fraction(9, 32) in ratios
    eps = Fraction(1, 8)
    assert all(r <= Fraction(1, 4) + eps for r in ratios)


def test_path_game_endpoints_match():
    for steps in range(4):
        _, h, g, _ = path_game(Fraction(1, 10), steps)
        assert (h[0], g[0]) == (h[-1], g[-1])


def test_path_game_epsilon_validation():
    with pytest.raises(EpsilonOutOfRange):
        path_game(Fraction(1, 2))
    with pytest.raises(EpsilonOutOfRange):
        path_game(Fraction(0))
    with pytest.raises(EpsilonOutOfRange):
        path_game(Fraction(1, 5), 100)  # ratio would exceed 1


def test_derive_ratio_game():
    base = clique_strategy((2, 2), (1, 1))
    h, g, derived = derive_ratio_game(base, Fraction(3, 2))
    assert (h, g) == (6, 4)
    assert _verify(make_clique(2), derived)
    h, g, derived = derive_ratio_game(base, Fraction(2))
    assert (h, g) == (2, 1)
    assert derived is base
    with pytest.raises(RatioNotDominated):
        derive_ratio_game(base, Fraction(3))
