"""Exception types shared across the package."""


class ShapeError(ValueError):
    """Input has a shape or length the operation cannot accept."""


class ConfigError(ValueError):
    """A parameter or configuration value is out of its valid domain."""


class DivergenceError(RuntimeError):
    """An iterative algorithm (LMS, training loop) diverged."""


class StateError(RuntimeError):
    """Operation invoked out of order, e.g. backward before forward."""
