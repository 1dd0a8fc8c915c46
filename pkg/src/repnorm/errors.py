"""Exception types shared across the library."""


class RepnormError(Exception):
    """Base class for library errors."""


class PoleError(RepnormError):
    """A Gamma-type factor was evaluated at an unresolved pole."""


class ConvergenceError(RepnormError):
    """An iterative evaluation failed to reach the requested tolerance."""


class PreconditionError(RepnormError):
    """An operation was called outside its admissible parameter range."""


class DomainError(RepnormError):
    """A parameter lies outside the mathematical domain of the formula."""


class NormalizationError(RepnormError):
    """A normalizing form failed positivity on the requested indices."""


class ScanError(RepnormError):
    """A grid scan could not certify its result (argmax on the boundary)."""


class FitError(RepnormError):
    """A least-squares fit is underdetermined or degenerate."""


class GenericityWarning(UserWarning):
    """A parameter sits at (or numerically near) a non-generic point."""
