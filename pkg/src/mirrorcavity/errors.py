"""Exception and warning types shared across the package."""


class ModelError(Exception):
    """Base class for all domain errors raised by this package."""


class ParameterError(ModelError, ValueError):
    """Invalid physical parameter or out-of-range argument."""


class ConfigError(ModelError, ValueError):
    """Malformed configuration file."""


class OracleError(ModelError, RuntimeError):
    """Exact-diagonalization failure (basis too large, eigensolver breakdown)."""


class ExtrapolationError(ModelError, RuntimeError):
    """Cutoff-extrapolation ladder did not stabilize."""


class CutoffCrossingError(ParameterError):
    """Finite-difference stencil straddles a mode-count change (strict mode)."""


class CutoffCrossingWarning(UserWarning):
    """Finite-difference stencil straddles a mode-count change."""


class PerturbativityWarning(UserWarning):
    """First-order amplitudes are not small; perturbative results are suspect."""
