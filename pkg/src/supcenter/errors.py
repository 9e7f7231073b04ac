"""Exception types shared across the package."""


class SupCenterError(Exception):
    """Base class for all package errors."""


class DimensionMismatchError(SupCenterError, ValueError):
    """Operands live in spaces of different dimension."""


class EmptyFamilyError(SupCenterError, ValueError):
    """A target family must contain at least one member."""


class InfeasiblePolytopeError(SupCenterError):
    """The constraint system has no feasible point."""


class UnboundedPolytopeError(SupCenterError):
    """The constraint system has a ray; vertex enumeration is undefined."""


class LPNumericalError(SupCenterError):
    """The solver exceeded its iteration budget or lost feasibility."""


class EnumerationError(SupCenterError):
    """Vertex enumeration failed for a reason other than infeasibility."""


class PreconditionError(SupCenterError, ValueError):
    """A documented precondition was violated; message names the inequality."""


class ConstructionError(SupCenterError):
    """A constructed center or repaired point failed its certificate."""

    def __init__(self, message: str, point_index: int | None = None):
        super().__init__(message)
        self.point_index = point_index


class ModelBuildError(SupCenterError):
    """A renormed-ball model certificate failed.

    ``certificate`` names the failed check so callers can distinguish an
    expected failure (e.g. zero slab shrink) from a genuine bug.
    """

    def __init__(self, message: str, certificate: str):
        super().__init__(message)
        self.certificate = certificate


class InstanceError(SupCenterError, ValueError):
    """An instance file is malformed; carries a field path when known."""

    def __init__(self, message: str, field: str | None = None):
        super().__init__(message if field is None else f"{field}: {message}")
        self.field = field
