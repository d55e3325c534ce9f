"""Exception hierarchy shared by every lensgrid module."""


class GridError(Exception):
    """Base class for all lensgrid errors."""


class InvalidDiagram(GridError):
    """A grid diagram violates one of its structural invariants."""


class BadLensParams(InvalidDiagram):
    pass


class RowViolation(InvalidDiagram):
    pass


class ColumnViolation(InvalidDiagram):
    pass


class IllegalCoincidence(InvalidDiagram):
    pass


class EmptyIndex(GridError):
    pass


class BadIndex(GridError):
    pass


class BadSite(GridError):
    pass


class BadColumn(GridError):
    pass


class IllegalCommutation(GridError):
    pass


class NotASkeinCrossing(GridError):
    pass


class NotAKnot(GridError):
    pass


class ZeroPolynomial(GridError):
    pass


class ParseError(GridError):
    pass


class EmptyLink(GridError):
    pass


class EngineError(GridError):
    """The skein engine could not finish a computation."""


class NoReductionNeeded(EngineError):
    pass


class PlanSearchFailed(EngineError):
    pass


class CycleDetected(EngineError):
    pass


class InternalError(EngineError):
    pass
