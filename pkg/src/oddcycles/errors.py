"""Exception types raised across the package."""


class GraphError(ValueError):
    """Base class for invalid graph input or invalid algorithm parameters."""


class EndpointOutOfRange(GraphError):
    pass


class SelfLoop(GraphError):
    pass


class DuplicateEdge(GraphError):
    pass


class TooLarge(GraphError):
    """An exhaustive oracle was asked to run on an instance above its size cap."""


class BadParam(GraphError):
    pass


class InvalidDelta(GraphError):
    pass


class KTooSmall(GraphError):
    pass


class EpsTooSmall(GraphError):
    pass


class FormatError(GraphError):
    def __init__(self, line, message):
        super().__init__(f"line {line}: {message}")
        self.line = line


class GirthViolation(GraphError):
    """The graph has an odd cycle short enough to break an algorithm's precondition.

    ``cycle`` is a closed vertex walk ``[v0, ..., v0]`` of odd length.
    """

    def __init__(self, message, cycle):
        super().__init__(message)
        self.cycle = list(cycle)

    @property
    def length(self):
        return len(self.cycle) - 1


class IndependenceViolation(GirthViolation):
    """A harvested BFS layer contains an edge.

    Besides the odd ``cycle`` this carries the offending ``edge``.
    """

    def __init__(self, message, edge, cycle):
        super().__init__(message, cycle)
        self.edge = edge


class AttemptCapExceeded(UserWarning):
    """Resampling gave up before meeting the size target; the best result is returned."""
