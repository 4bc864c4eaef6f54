"""Exception types shared across the package."""


class SelectionError(ValueError):
    """Invalid subtensor selection (empty, unsorted, or out-of-range indices)."""


class FormatError(ValueError):
    """Malformed tensor file (either .tns variant)."""


class CapacityError(RuntimeError):
    """Brute-force enumeration refused: input exceeds the configured size cap."""


class NumericError(RuntimeError):
    """Numerical linear algebra failure (e.g. SVD did not converge)."""
