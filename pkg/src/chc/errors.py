"""Exception taxonomy shared by the whole package.

Everything raised on purpose derives from ChcError so callers (and the CLI)
can catch one base class. Input-shaped problems and internal assertion
failures get distinct types; search budget exhaustion is a verdict in most
APIs but surfaces as BudgetExceeded where a partial answer would otherwise
be indistinguishable from a complete one.
"""


class ChcError(Exception):
    """Base class for all package errors."""


class FormatError(ChcError):
    """Input text is not a triangle list (bad token count, empty file)."""


class DegenerateTriangle(ChcError):
    """A face with a repeated vertex, or the same face listed twice."""


class NotClosed(ChcError):
    """Some edge is not shared by exactly two triangles."""


class NotManifold(ChcError):
    """Some vertex link is not a single cycle."""


class Disconnected(ChcError):
    """The complex has more than one connected component."""


class UnknownFamily(ChcError):
    """Fixture generator asked for a family it does not know."""


class BadParams(ChcError):
    """Fixture parameters missing, surplus, or out of range."""


class UnknownVertex(ChcError):
    """A vertex label that does not occur in the complex."""


class NotATree(ChcError):
    """Candidate subgraph is cyclic, disconnected, or not in the dual map."""


class ImproperTree(ChcError):
    """A tree that fails the boundary-path conditions where a proper one is required."""


class NotACycle(ChcError):
    """Vertex sequence is not a simple cycle along edges of the complex."""


class NotHamiltonian(ChcError):
    """Cycle does not visit every vertex exactly once."""


class NotEquivelar(ChcError):
    """Operation requires all vertex degrees equal."""


class TooLarge(ChcError):
    """Input exceeds the configured exhaustive-search limit."""


class BudgetExceeded(ChcError):
    """Search ran out of node expansions before finishing.

    Carries whatever was found up to that point so callers can report it.
    """

    def __init__(self, message, partial=None, expansions=0):
        super().__init__(message)
        self.partial = list(partial) if partial is not None else []
        self.expansions = expansions


class InternalInconsistency(ChcError):
    """A structural invariant the math guarantees failed at runtime. A bug."""


class DisagreementDetected(ChcError):
    """Main search and the brute-force oracle returned different verdicts."""
