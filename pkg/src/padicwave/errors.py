"""Error types shared across the package.

The CLI maps these onto process exit codes, so new failure modes should
reuse one of the classes below rather than raising bare ValueErrors.
"""


class PadicWaveError(Exception):
    """Base class for all package-specific errors."""


class ConfigError(PadicWaveError):
    """Invalid configuration, argument, or input file (CLI exit 2)."""


class GridCapError(PadicWaveError):
    """A requested coset grid exceeds the enumeration cap (CLI exit 3)."""


class LizorkinError(PadicWaveError):
    """An operator precondition on the Lizorkin spaces failed."""


class NonRadialError(PadicWaveError):
    """A table claimed to be radial takes distinct values on one sphere."""


class SpectralCompatibilityError(PadicWaveError):
    """The time and space exponents admit no nonzero solution (CLI exit 4)."""
