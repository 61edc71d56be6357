"""Exception hierarchy shared by every module."""


class BranchpackError(Exception):
    """Base class for all errors raised by branchpack."""


class UnknownElementError(BranchpackError, KeyError):
    def __init__(self, elems):
        self.elems = tuple(elems)
        super().__init__(f"unknown matroid element(s): {list(self.elems)!r}")

    def __str__(self):
        return self.args[0]


class InvalidMatroidError(BranchpackError, ValueError):
    pass


class NotIndependentError(BranchpackError, ValueError):
    pass


class NotInSpanError(BranchpackError, ValueError):
    """Raised when an element is required to lie in a span but does not."""


class UnknownVertexError(BranchpackError, KeyError):
    def __init__(self, vertices):
        self.vertices = tuple(vertices)
        super().__init__(f"unknown vertex/vertices: {list(self.vertices)!r}")

    def __str__(self):
        return self.args[0]


class UnknownEdgeError(BranchpackError, KeyError):
    def __init__(self, edge):
        self.edge = edge
        super().__init__(f"unknown edge: {edge!r}")

    def __str__(self):
        return self.args[0]


class InvalidDigraphError(BranchpackError, ValueError):
    pass


class PathError(BranchpackError, ValueError):
    pass


class InvalidRootingError(BranchpackError, ValueError):
    pass


class UndefinedExtensionError(BranchpackError, ValueError):
    """An (i, e)-extension whose defining conditions fail.

    ``code`` is ``"not_outgoing"`` when the edge does not leave the root set
    of the element, ``"dependent"`` when adding the element at the head would
    create a dependent set.
    """

    def __init__(self, code, elem, edge, detail=""):
        self.code = code
        self.elem = elem
        self.edge = edge
        msg = f"({elem!r}, {edge!r})-extension undefined: {code}"
        if detail:
            msg += f" ({detail})"
        super().__init__(msg)


class InconsistentLinkageError(BranchpackError, ValueError):
    pass


class EngineInvariantError(BranchpackError, AssertionError):
    """An internal invariant of the linkage engine failed. Always a bug."""


class PreconditionError(BranchpackError):
    """The instance is not independent or violates the linkage condition."""

    def __init__(self, kind, vertex, certificate=None):
        self.kind = kind
        self.vertex = vertex
        self.certificate = certificate
        super().__init__(f"precondition '{kind}' fails at vertex {vertex!r}")


class SolverDefectError(BranchpackError, RuntimeError):
    pass


class GuardExceededError(BranchpackError, ValueError):
    pass


class SchemaError(BranchpackError, ValueError):
    """Input document violates a schema; ``pointer`` is a JSON pointer."""

    def __init__(self, pointer, message):
        self.pointer = pointer
        self.message = message
        super().__init__(f"{pointer or '/'}: {message}")
