"""Exception types shared across the package."""


class DomainError(ValueError):
    """A physically or mathematically invalid input.

    Raised when an argument lies outside the domain of a formula (for
    example a transmission of zero where the information diverges) or when
    a value object would violate its own invariants at construction.
    """


class ConfigError(ValueError):
    """A malformed run configuration (unknown key, bad syntax, missing file)."""
