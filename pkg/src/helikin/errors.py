"""Exception taxonomy shared across the package.

The CLI maps these onto process exit codes: validation problems exit 2,
numerical/domain failures exit 3, I/O failures exit 4.
"""


class HelikinError(Exception):
    """Base class for all package errors."""


class ValidationError(HelikinError, ValueError):
    """A spec, file, or argument failed its invariants."""


class DomainError(HelikinError, ValueError):
    """Inputs are outside the mathematical domain of an operation."""


class OverActuationError(DomainError):
    """Tendon stroke too large: the cylinder height would be imaginary."""


class NonPhysicalError(DomainError):
    """Computed cylinder radius is not positive (tendon slack too large)."""


class GridMismatchError(HelikinError, ValueError):
    """Two sequences that must be index- or grid-aligned are not."""
