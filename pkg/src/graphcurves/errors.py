"""Exception types shared across the package.

Two error families matter to callers: structurally invalid input
(:class:`ValidationError`, CLI exit code 2) and numerical tolerance
failures (:class:`NumericalError`, CLI exit code 3).
"""


class GraphCurveError(Exception):
    """Base class for every error raised by this package."""


class ValidationError(GraphCurveError, ValueError):
    """Input is structurally invalid."""


class NumericalError(GraphCurveError, ArithmeticError):
    """A numerical tolerance was exceeded."""


class NotTrivalent(ValidationError):
    """Some vertex does not carry exactly three darts."""


class Disconnected(ValidationError):
    """The underlying graph is not connected."""


class MalformedPairing(ValidationError):
    """The dart pairing is not a fixed-point-free involution on 0..3n-1."""


class UnknownName(ValidationError):
    """Requested catalog entry does not exist."""


class GenerationFailed(ValidationError):
    """Random generation exhausted its attempt budget."""


class ScalarDomainMismatch(ValidationError):
    """A scalar does not belong to the requested domain."""


class MatchingViolated(NumericalError):
    """Residue or bi-residue data fails to match across a node."""


class NotOnVariety(NumericalError):
    """The point violates the defining relations beyond tolerance."""


class IrregularDeterminant(NumericalError):
    """The determinant section is not regular (a genericity test failed)."""


class DegenerateNode(NumericalError):
    """A node eigenvalue vanishes, so eigenlines are not separated."""


class InconsistentSpectralData(NumericalError):
    """Node eigendata violates a vertex sum or edge matching condition."""
