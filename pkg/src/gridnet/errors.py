"""Exception hierarchy shared by every gridnet module."""


class GridError(Exception):
    """Base class for all gridnet errors."""


class GraphConstructionError(GridError):
    """An edge references a node id that was never declared."""

    def __init__(self, node_id, message=None):
        self.node_id = node_id
        super().__init__(message or f"edge references unknown node id {node_id!r}")


class SelfLoopError(GridError):
    def __init__(self, node_id):
        self.node_id = node_id
        super().__init__(f"self-loop on node {node_id!r} is not allowed")


class ValidationError(GridError):
    """A record carries a value outside its admissible range."""


class EmptyGraphError(GridError):
    pass


class DisconnectedGraphError(GridError):
    def __init__(self, n_components=None):
        self.n_components = n_components
        msg = "graph is disconnected"
        if n_components is not None:
            msg += f" ({n_components} components)"
        super().__init__(msg + "; split it with connected_components() first")


class UnknownNodeError(GridError, KeyError):
    def __init__(self, node):
        self.node = node
        super().__init__(f"unknown node {node!r}")

    def __str__(self):
        return self.args[0]


class InfeasibleError(GridError):
    """Requested (order, size) combination cannot be realised."""


class ConvergenceError(GridError):
    def __init__(self, message, residual):
        self.residual = residual
        super().__init__(f"{message} (last residual {residual:.3e})")


class FitError(GridError):
    pass


class MissingCurrentError(GridError):
    def __init__(self, edges):
        self.edges = list(edges)
        shown = ", ".join(f"{a}-{b}" for a, b in self.edges[:10])
        more = "" if len(self.edges) <= 10 else f" (+{len(self.edges) - 10} more)"
        super().__init__(f"edges without max_current: {shown}{more}")


class ParseError(GridError):
    """Base for grid-file errors; always carries a location."""

    def __init__(self, message, line=None, field=None, source=None):
        self.line = line
        self.field = field
        self.source = source
        loc = []
        if source:
            loc.append(str(source))
        if line is not None:
            loc.append(f"line {line}")
        if field is not None:
            loc.append(f"field {field!r}")
        prefix = ":".join(loc)
        super().__init__(f"{prefix}: {message}" if prefix else message)


class MalformedHeaderError(ParseError):
    pass


class MissingFieldError(ParseError):
    pass


class NonNumericFieldError(ParseError):
    pass


class DuplicateNodeError(ParseError):
    pass


class UnknownNodeReferenceError(ParseError):
    pass


class InvalidValueError(ParseError):
    pass
