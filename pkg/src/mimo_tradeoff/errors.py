"""Exception types raised across the package."""

import numpy as np


class DomainError(ValueError):
    """An argument lies outside the domain where the model is defined."""


class ConfigError(DomainError):
    """A scenario parameter violates one of the model constraints."""


class SingularChannelError(np.linalg.LinAlgError):
    """The channel Gram matrix is too ill-conditioned for zero-forcing."""

    def __init__(self, condition):
        self.condition = float(condition)
        super().__init__(
            f"channel is rank deficient: cond(H H^H) = {self.condition:.3e} "
            f"exceeds the 1e12 limit"
        )


class ScenarioError(ValueError):
    """A scenario file could not be parsed or validated."""

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
