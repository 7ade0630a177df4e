"""Exception types shared across the package."""


class ParameterError(ValueError):
    """A physical parameter is outside the model's domain of validity."""


class SolverError(RuntimeError):
    """A numerical solve failed (singular system, non-convergence, bad residual)."""


class ConfigError(ValueError):
    """A run configuration is malformed or inconsistent."""
