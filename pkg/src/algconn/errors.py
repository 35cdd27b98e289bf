"""Exception hierarchy shared across the package.

Everything user-facing derives from AlgconnError so the CLI can map domain
failures to a single exit code. Schema problems in JSON payloads raise
SchemaError instead, which maps to the usage exit code.
"""


class AlgconnError(Exception):
    """Base class for domain-level failures."""


class LaurentSyntaxError(AlgconnError):
    """Raised by the Laurent parser; carries the offending position."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class NotSquare(AlgconnError):
    """Matrix operation that requires a square matrix received a non-square one."""


class NotAUnit(AlgconnError):
    """Determinant is not a nonzero monomial, so the matrix is not invertible
    over the Laurent ring."""


class ContextMismatch(AlgconnError):
    """Two bundles living over curves of different genus were combined."""


class UnknownStability(AlgconnError):
    """An operation requiring declared stability met an atom flagged unknown."""


class InvalidAnchor(AlgconnError):
    """An algebroid descriptor violates an anchor invariant."""


class PreconditionFailed(AlgconnError):
    """An operation was called outside its stated domain."""


class InvalidSection(AlgconnError):
    """A purported global section fails the two-chart holomorphy constraint."""


class NonConstantTrace(AlgconnError):
    """trace(v∘w) came out non-constant; valid global sections cannot do this."""


class ShapeMismatch(AlgconnError):
    """Cochain or matrix shapes are inconsistent with the ambient bundle."""


class SchemaError(Exception):
    """A JSON payload does not match the expected schema (CLI usage error)."""
