"""Exception types raised by the library (the CLI maps them to exit codes)."""


class InfomarketError(Exception):
    pass


class DomainError(InfomarketError, ValueError):
    """A parameter lies outside the family's or formula's domain."""


class PreconditionError(InfomarketError, ValueError):
    """An operation was called on a configuration it does not apply to."""


class UnsupportedCombinationError(InfomarketError, ValueError):
    """No theorem covers the requested (setting, gap, family) combination."""


class BudgetError(InfomarketError, ValueError):
    """An exact enumeration was asked for an instance beyond its size budget."""


class ResourceLimitError(InfomarketError, RuntimeError):
    """A request would exceed a configured memory cap."""


class ConvergenceError(InfomarketError, RuntimeError):
    """A numerical routine could not reach the requested tolerance."""
