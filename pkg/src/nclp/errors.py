"""Exception types shared across the toolkit."""


class NclpError(Exception):
    """Base class for all toolkit errors."""


class ShapeMismatchError(NclpError, ValueError):
    """Operands live on different algebras or have wrong block shapes."""


class NotProjectionError(NclpError, ValueError):
    """Element is too far from a self-adjoint idempotent."""


class ExponentError(NclpError, ValueError):
    """Exponent outside the domain of the requested operation."""


class NotJordanError(NclpError):
    """Linear map fails the Jordan *-isomorphism checks."""


class NotBijectiveError(NclpError):
    """Linear map is numerically singular."""


class BlockMismatchError(NclpError):
    """Source and target block structures are incompatible."""


class PolarPartNotUnitaryError(NclpError):
    """Polar part not unitary: the map does not act like a surjective isometry."""


class PositiveImageError(NclpError):
    """Image of positive not positive: the map has no structured form."""


class NotCornerError(NclpError):
    """Image of a corner is not a corner."""


class NotIsometryError(NclpError):
    """A structural probe shows the map is not an isometry of structured form."""


class CertificationError(NclpError):
    """Decomposition certificate residual exceeded tolerance."""

    def __init__(self, message: str, residual: float | None = None):
        super().__init__(message)
        self.residual = residual


class UsageError(NclpError, ValueError):
    """Bad configuration value or command-line usage."""
