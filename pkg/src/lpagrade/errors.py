"""Exception types. Every domain error derives from LpaError so the CLI can
map it to exit code 1."""


class LpaError(Exception):
    pass


class GraphSyntaxError(LpaError):
    def __init__(self, message, line=None, column=None):
        where = f" (line {line}, column {column})" if line is not None else ""
        super().__init__(f"{message}{where}")
        self.line = line
        self.column = column


class DanglingEndpoint(LpaError):
    pass


class DuplicateId(LpaError):
    pass


class OmegaEdgesUnsupported(LpaError):
    pass


class GraphMismatch(LpaError):
    pass


class UnknownId(LpaError):
    pass


class NotComposable(LpaError):
    pass


class SourceMismatch(LpaError):
    pass


class IrregularVertexOnExpansion(LpaError):
    def __init__(self, vertex, message=None):
        super().__init__(message or f"vertex {vertex!r} is not regular; CK2 cannot expand p_{vertex}")
        self.vertex = vertex


class NotDegreeZero(LpaError):
    pass


class InvalidLasso(LpaError):
    pass


class NoInfinitePath(LpaError):
    pass


class NotComposableTails(LpaError):
    pass


class UnsupportedGraph(LpaError):
    """Raised where a construction needs a row-finite graph without sources."""


class InvalidInput(LpaError):
    pass
