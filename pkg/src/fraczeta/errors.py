"""Exception hierarchy shared by all fraczeta modules.

The four leaf categories (input, capacity, domain, parse) map one-to-one
onto the CLI exit codes documented in :mod:`fraczeta.cli`.
"""


class FraczetaError(Exception):
    """Base class for all errors raised by this package."""


class InputError(FraczetaError):
    """A caller-supplied value violates an operation's contract."""


class CapacityError(FraczetaError):
    """An explicit enumeration would exceed the configured cap."""


class DomainError(FraczetaError):
    """A numeric argument lies outside the mathematical domain."""


class ParseError(FraczetaError):
    """A data file could not be parsed; message carries the line number."""


class AddressError(InputError):
    """A digit address indexes outside a level's retained set."""

    def __init__(self, level: int, index: int, size: int):
        self.level = level
        self.index = index
        self.size = size
        super().__init__(
            f"address index {index} out of range at level {level} "
            f"(retained set has {size} digits)"
        )


class UnsupportedStructureError(InputError):
    """The operation needs a structure the given object does not have."""


class PoleError(DomainError):
    """Evaluation was requested exactly at a pole."""


class SubcriticalRetentionWarning(UserWarning):
    """Retention probability too small for almost-sure survival.

    Carries the (non-positive) predicted dimension in ``value``.
    """

    def __init__(self, value: float):
        self.value = value
        super().__init__(
            f"subcritical retention: predicted dimension {value} <= 0, "
            "extinction is almost sure"
        )
