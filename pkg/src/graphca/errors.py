"""Exception hierarchy shared by every graphca module."""


class GraphCAError(ValueError):
    """Base class for all library errors."""


class InvalidGraph(GraphCAError):
    pass


class InvalidConnectionSet(GraphCAError):
    pass


class SizeLimitExceeded(GraphCAError):
    pass


class InvalidFactor(GraphCAError):
    pass


class NotConnected(GraphCAError):
    pass


class InternalFactorizationError(GraphCAError):
    """The factorization certificate did not reproduce the input graph."""


class NotPrimePower(GraphCAError):
    pass


class NotAGroup(GraphCAError):
    pass


class NotBound(GraphCAError):
    pass


class InvalidInputCA(GraphCAError):
    pass


class InvalidColoring(GraphCAError):
    pass


class InvalidAutomorphism(GraphCAError):
    pass


class NotBipartite(GraphCAError):
    pass


class PreconditionFailed(GraphCAError):
    pass


class InvalidAlphabet(GraphCAError):
    pass


class FormatError(GraphCAError):
    """A file could not be parsed; carries the path and line number."""

    def __init__(self, message, path=None, line=None):
        self.path = path
        self.line = line
        where = ""
        if path is not None:
            where = f"{path}:{line}: " if line is not None else f"{path}: "
        super().__init__(where + message)
