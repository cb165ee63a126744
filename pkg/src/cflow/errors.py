"""Exception hierarchy shared by every cflow module."""


class CFlowError(Exception):
    """Base class for all errors raised by cflow."""


class InvalidParameter(CFlowError, ValueError):
    pass


class ParseError(CFlowError, ValueError):
    """A .graph, .flow.json or .pts.json file is malformed."""


class NoFlowExists(CFlowError):
    """The graph has a bridge or is disconnected, so no nowhere-zero flow exists."""


class NotAFlow(CFlowError, ValueError):
    pass


class NowhereZeroViolation(CFlowError, ValueError):
    pass


class OutOfRange(CFlowError, ValueError):
    pass


class InfeasibleConfiguration(CFlowError, ValueError):
    pass


class Unclassifiable(CFlowError, ValueError):
    pass


class SolverFailure(CFlowError, RuntimeError):
    def __init__(self, message, diagnostics=None):
        super().__init__(message)
        self.diagnostics = diagnostics or {}
