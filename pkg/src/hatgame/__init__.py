"""Exact solver, synthesizer and verifier for multi-guess hat games."""

from .errors import HatGameError
from .graphs import (
    CliqueTree,
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
from .indpoly import (
    RegionQuery,
    expansion_check,
    region_oracle,
    univariate_polynomial,
    z_eval,
)
from .mu import Approx, Exact, approximate_mu, mu_upper_bound_root, star_root
from .numerics import (
    Rational,
    eval_poly,
    lcm_list,
    nearest_integer,
    smallest_positive_root,
    sturm_positive_on_unit_interval,
)
from .strategy import (
    PIVOT,
    CliqueLeaf,
    GameSpec,
    JoinNode,
    P3Leaf,
    PadNode,
    ScaleNode,
    Strategy,
    deserialize,
    game_of,
    game_spec_for,
    guesses,
    serialize,
)
from .synthesis import (
    InRegion,
    SynthesisResult,
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
from .verifier import (
    Counterexample,
    Inconclusive,
    VerificationResult,
    brute_force_losing,
    exhaustive_verify,
    is_perfect,
    perfect_count_check,
    random_falsify,
)

__all__ = [name for name in dir() if not name.startswith("_")]
