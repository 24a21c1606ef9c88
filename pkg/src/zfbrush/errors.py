class ZFBrushError(Exception):
    """Base class for every error raised by this package."""


class GraphError(ZFBrushError, ValueError):
    pass


class LoopEdge(GraphError):
    pass


class DuplicateEdge(GraphError):
    pass


class VertexOutOfRange(GraphError):
    pass


class ParseError(ZFBrushError, ValueError):
    pass


class InvalidFamilyParam(ZFBrushError, ValueError):
    pass


class NoKnownValue(ZFBrushError, LookupError):
    pass


class BudgetExceeded(ZFBrushError):
    pass


class IncompleteRun(ZFBrushError):
    pass


class InvalidForce(ZFBrushError, ValueError):
    pass


class MalformedScript(ZFBrushError, ValueError):
    pass


class NotZeroForcingSet(ZFBrushError, ValueError):
    pass


class Disconnected(ZFBrushError, ValueError):
    pass


class PreconditionSingleEdge(ZFBrushError, ValueError):
    pass


class InvalidLineScript(ZFBrushError, ValueError):
    pass
