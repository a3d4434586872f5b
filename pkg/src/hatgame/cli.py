"""Command line interface.

Exit codes: 0 winning/success, 1 losing/in-region/counterexample,
2 malformed input or flags, 3 inconclusive or resource limits.
Graph arguments read from a file path or stdin when given as ``-``.
All ratios are parsed as exact rationals; output rationals print as p/q.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction

from . import mu as mu_mod
from . import verifier
from .errors import (
    GraphTooLarge,
    HatGameError,
    StateSpaceTooLarge,
    StrategySpaceTooLarge,
)
from .graphs import (
    Graph,
    format_graph,
    make_clique,
    make_cycle,
    make_path,
    make_star,
    parse_graph,
)
from .indpoly import univariate_polynomial
from .numerics import nearest_integer
from .strategy import deserialize, game_spec_for, serialize
from .synthesis import (
    InRegion,
    chordal_synthesize,
    decide_region,
    fibonacci_game,
    p3_strategy,
    path_game,
)

_LIMIT_ERRORS = (GraphTooLarge, StateSpaceTooLarge, StrategySpaceTooLarge)


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, "r") as handle:
        return handle.read()


def _load_graph(path: str) -> Graph:
    return parse_graph(_read_text(path))


def _parse_fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise HatGameError(f"cannot parse rational {text!r}") from None


def _ratio_vector(g: Graph, args) -> list[Fraction]:
    if args.ratios is not None:
        ratios: dict[int, Fraction] = {}
        for lineno, raw in enumerate(
            _read_text(args.ratios).splitlines(), start=1
        ):
            if raw.startswith("#") or not raw.split():
                continue
            parts = raw.split()
            if len(parts) != 2:
                raise HatGameError(
                    f"ratios line {lineno}: expected `v p/q`"
                )
            v = int(parts[0])
            if not 0 <= v < g.n:
                raise HatGameError(
                    f"ratios line {lineno}: vertex {v} not in the graph"
                )
            ratios[v] = _parse_fraction(parts[1])
        missing = [v for v in range(g.n) if v not in ratios]
        if missing:
            raise HatGameError(f"ratios file misses vertices {missing}")
        return [ratios[v] for v in range(g.n)]
    if args.ratio is None:
        raise HatGameError("need --ratio or --ratios")
    return [_parse_fraction(args.ratio)] * g.n


def _decimal_string(x: Fraction, digits: int) -> str:
    scaled = nearest_integer(x * 10**digits)
    sign = "-" if scaled < 0 else ""
    scaled = abs(scaled)
    whole, frac = divmod(scaled, 10**digits)
    if digits == 0:
        return f"{sign}{whole}"
    return f"{sign}{whole}.{frac:0{digits}d}"


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hatgame",
        description="Exact hat-game solver and verifier for chordal graphs",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="emit a named graph")
    gen.add_argument("family", choices=["path", "cycle", "clique", "star"])
    gen.add_argument("n", type=int)

    poly = sub.add_parser("poly", help="univariate polynomial coefficients")
    poly.add_argument("graph", nargs="?", default="-")

    decide = sub.add_parser("decide", help="winning or in-region")
    decide.add_argument("graph", nargs="?", default="-")
    decide.add_argument("--ratio")
    decide.add_argument("--ratios")

    synth = sub.add_parser("synth", help="synthesize a winning strategy")
    synth.add_argument("graph", nargs="?", default="-")
    synth.add_argument("--ratio")
    synth.add_argument("--ratios")
    synth.add_argument("-o", "--output")

    verify = sub.add_parser("verify", help="run the demon on a strategy")
    verify.add_argument("graph")
    verify.add_argument("strategy")
    verify.add_argument("--max-states", type=int,
                        default=verifier.DEFAULT_MAX_STATES)
    verify.add_argument("--samples", type=int)
    verify.add_argument("--seed", type=int, default=0)
    verify.add_argument("--threads", type=int, default=1)

    mu = sub.add_parser("mu", help="optimal colors-per-guess value")
    mu.add_argument("graph", nargs="?", default="-")
    mu.add_argument("-k", type=int, required=True, help="precision bits")
    mu.add_argument("--decimal", type=int)

    p3 = sub.add_parser("p3", help="coprime 3-vertex path game family")
    p3.add_argument("-i", type=int, required=True, help="family index >= 1")
    p3.add_argument("-o", "--output")
    p3.add_argument("--max-states", type=int,
                    default=verifier.DEFAULT_MAX_STATES)
    p3.add_argument("--threads", type=int, default=1)

    pathgame = sub.add_parser("pathgame", help="iterated path construction")
    pathgame.add_argument("--epsilon", required=True)
    pathgame.add_argument("--steps", type=int)
    pathgame.add_argument("-o", "--output")
    pathgame.add_argument("--max-states", type=int,
                          default=verifier.DEFAULT_MAX_STATES)
    pathgame.add_argument("--threads", type=int, default=1)

    report = sub.add_parser("report", help="root convergence CSV and figure")
    report.add_argument("--out-dir", default=".")
    report.add_argument("--max-n", type=int, default=18)
    report.add_argument("--bits", type=int, default=30)

    return parser


def _cmd_gen(args) -> int:
    builders = {
        "path": make_path,
        "cycle": make_cycle,
        "clique": make_clique,
        "star": make_star,
    }
    sys.stdout.write(format_graph(builders[args.family](args.n)))
    return 0


def _cmd_poly(args) -> int:
    g = _load_graph(args.graph)
    coeffs = univariate_polynomial(g)
    print(" ".join(str(c) for c in coeffs))
    return 0


def _cmd_decide(args) -> int:
    g = _load_graph(args.graph)
    ratios = _ratio_vector(g, args)
    if decide_region(g, ratios):
        print("winning")
        return 0
    print("in-region")
    return 1


def _cmd_synth(args) -> int:
    g = _load_graph(args.graph)
    ratios = _ratio_vector(g, args)
    result = chordal_synthesize(g, ratios)
    if isinstance(result, InRegion):
        print("in-region")
        return 1
    print("winning")
    for v in range(g.n):
        print(f"{v} {result.hatness[v]} {result.guesses[v]}")
    if args.output:
        with open(args.output, "w") as handle:
            handle.write(serialize(result.strategy))
    return 0


def _print_verification(result) -> int:
    if isinstance(result, verifier.Winning):
        print("winning")
        return 0
    if isinstance(result, verifier.Counterexample):
        print(" ".join(str(c) for c in result.arrangement))
        return 1
    print(f"inconclusive {result.samples_checked}")
    return 3


def _cmd_verify(args) -> int:
    g = _load_graph(args.graph)
    strategy = deserialize(_read_text(args.strategy))
    spec = game_spec_for(strategy, g)
    if args.samples is not None:
        result = verifier.random_falsify(spec, strategy, args.samples, args.seed)
    else:
        result = verifier.exhaustive_verify(
            spec, strategy, max_states=args.max_states, threads=args.threads
        )
    return _print_verification(result)


def _cmd_mu(args) -> int:
    g = _load_graph(args.graph)
    result = mu_mod.approximate_mu(g, args.k)
    if isinstance(result, mu_mod.Exact):
        print(f"exact {result.value}")
        return 0
    lo, hi = result.bracket
    line = f"approx {result.t} {lo} {hi}"
    if args.decimal is not None:
        line += f" {_decimal_string(result.t, args.decimal)}"
    print(line)
    return 0


def _cmd_p3(args) -> int:
    h, g = fibonacci_game(args.i)
    strategy = p3_strategy(h, g)
    graph = make_path(3)
    spec = game_spec_for(strategy, graph)
    print(f"h={h} g={g}")
    if args.output:
        with open(args.output, "w") as handle:
            handle.write(serialize(strategy))
    result = verifier.exhaustive_verify(
        spec, strategy, max_states=args.max_states, threads=args.threads
    )
    if isinstance(result, verifier.Winning):
        print(f"winning {spec.arrangement_count()}")
        return 0
    return _print_verification(result)


def _cmd_pathgame(args) -> int:
    eps = _parse_fraction(args.epsilon)
    graph, hatness, guesses, strategy = path_game(eps, args.steps)
    spec = game_spec_for(strategy, graph)
    print(f"n {graph.n}")
    for v in range(graph.n):
        print(f"{v} {hatness[v]} {guesses[v]}")
    if args.output:
        with open(args.output, "w") as handle:
            handle.write(serialize(strategy))
    result = verifier.exhaustive_verify(
        spec, strategy, max_states=args.max_states, threads=args.threads
    )
    if isinstance(result, verifier.Winning):
        print(f"winning {spec.arrangement_count()}")
        return 0
    return _print_verification(result)


def _cmd_report(args) -> int:
    from .report import write_report

    csv_path, png_path = write_report(args.out_dir, args.max_n, args.bits)
    print(csv_path)
    print(png_path)
    return 0


_COMMANDS = {
    "gen": _cmd_gen,
    "poly": _cmd_poly,
    "decide": _cmd_decide,
    "synth": _cmd_synth,
    "verify": _cmd_verify,
    "mu": _cmd_mu,
    "p3": _cmd_p3,
    "pathgame": _cmd_pathgame,
    "report": _cmd_report,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except _LIMIT_ERRORS as err:
        print(f"error: {err}", file=sys.stderr)
        return 3
    except HatGameError as err:
        print(f"error: {err}", file=sys.stderr)
        return 2
    except (OSError, ValueError) as err:
        print(f"error: {err}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
