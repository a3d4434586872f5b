"""Exception hierarchy shared by all hatgame modules."""


class HatGameError(Exception):
    """Base class for all errors raised by this package."""


class InvalidSize(HatGameError):
    """Graph constructor called with an impossible size."""


class NotChordal(HatGameError):
    """Operation requires a chordal graph."""


class EmptyVertexSet(HatGameError):
    """Induced subgraph over an empty vertex set."""


class GraphTooLarge(HatGameError):
    """Brute-force enumeration guard tripped."""


class NoPositiveRootInUnitInterval(HatGameError):
    """Sturm count on (0, 1] is zero; no root to isolate."""


class ParseError(HatGameError):
    """Malformed graph or strategy text; carries a 1-based line number."""

    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


class MissingNeighborColor(HatGameError):
    """Strategy evaluation consulted a vertex whose color was not supplied."""


class MalformedStrategy(HatGameError):
    """Strategy tree is structurally unusable for the requested evaluation."""


class InconsistentComposition(HatGameError):
    """Two strategy branches assign conflicting hatness to the same vertex."""


class RatioSumBelowOne(HatGameError):
    """Clique strategy requires sum(g_i/h_i) >= 1."""


class SeparatorNotClique(HatGameError):
    """Clique join separator does not induce a clique in the left graph."""


class PivotNotInRightGraph(HatGameError):
    """Clique join pivot is not a vertex of the right graph."""


class InequalityNotSatisfied(HatGameError):
    """The 3-vertex path strategy requires g^2 - 3gh + h^2 < 0."""


class EpsilonOutOfRange(HatGameError):
    """Path construction requires 0 < epsilon < 1/4."""


class RatioNotDominated(HatGameError):
    """Requested target ratio exceeds the base game's colors-per-guess ratio."""


class StateSpaceTooLarge(HatGameError):
    """Arrangement count exceeds the verification bound."""


class StrategySpaceTooLarge(HatGameError):
    """Strategy-profile count exceeds the brute-force bound."""
