"""Exception hierarchy shared by every gdcst module."""


class GDCSTError(Exception):
    """Base class for all errors raised by this package."""


class IndexOutOfRange(GDCSTError, IndexError):
    pass


class LoopEdge(GDCSTError, ValueError):
    """A self-loop in G, or a self-arc in the dependency digraph."""


class DuplicateEdge(GDCSTError, ValueError):
    pass


class DuplicateArc(GDCSTError, ValueError):
    pass


class InfeasibleBounds(GDCSTError, ValueError):
    def __init__(self, edge: int, message: str = ""):
        self.edge = edge
        super().__init__(message or f"infeasible bounds on edge {edge}")


class WeightOverflow(GDCSTError, OverflowError):
    pass


class GroundSetMismatch(GDCSTError, ValueError):
    pass


class Infeasible(GDCSTError):
    """No common independent set of the requested size exists."""


class NonConstantBounds(GDCSTError, ValueError):
    pass


class InfeasibleDegreeCap(GDCSTError, ValueError):
    pass


class InvalidWitness(GDCSTError, ValueError):
    pass


class NotSpanningTree(GDCSTError, ValueError):
    pass


class Not322(GDCSTError, ValueError):
    pass


class MalformedHeader(GDCSTError, ValueError):
    pass


class LiteralOutOfRange(GDCSTError, ValueError):
    pass


class UnterminatedClause(GDCSTError, ValueError):
    pass


class UnreachableTarget(GDCSTError, RuntimeError):
    pass


class CapExceeded(GDCSTError, ValueError):
    pass


class ParseError(GDCSTError, ValueError):
    def __init__(self, line: int, message: str):
        self.line = line
        super().__init__(f"line {line}: {message}")
