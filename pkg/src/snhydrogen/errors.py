"""Exception types raised by the solver."""


class ConfigurationError(ValueError):
    """Invalid grid, solver or run configuration."""


class ContractError(ValueError):
    """An operation was called with inputs violating its preconditions."""


class NumericalFailure(RuntimeError):
    """The eigensolver or state selection could not produce a trustworthy result."""
