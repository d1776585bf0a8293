"""Exception types shared across the package."""


class SwarmnetError(Exception):
    """Base class for all package-specific errors."""


class ConfigurationError(SwarmnetError):
    """Invalid or infeasible configuration (bad field value, impossible topology)."""


class InputError(SwarmnetError):
    """Invalid runtime input (dimension mismatch, bad index, malformed file)."""


class NonFiniteFitnessError(SwarmnetError):
    """An objective evaluation produced NaN or infinity; the run is aborted."""
