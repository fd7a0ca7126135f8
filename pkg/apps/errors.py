"""
Error hierarchy shared by every dualmeissner app.

Each error carries a short machine-parseable ``error_class`` tag and the
process exit code the management commands report for it:

  0  ok
  1  unexpected internal failure
  2  configuration / domain / range errors
  3  numerical non-convergence or undefined signal
  4  I/O and snapshot corruption
"""

EXIT_OK = 0
EXIT_INTERNAL = 1
EXIT_CONFIG = 2
EXIT_NUMERIC = 3
EXIT_IO = 4


class DualMeissnerError(Exception):
    """Base class for all errors raised by the laboratory."""

    error_class = "error"
    exit_code = EXIT_INTERNAL

    def __init__(self, message, **context):
        super().__init__(message)
        self.message = message
        self.context = context

    def diagnostic(self):
        """Single line written to stderr by the command layer."""
        return f"error[{self.error_class}]: {self.message}"


class ConfigError(DualMeissnerError):
    """Invalid or unparseable configuration."""

    error_class = "config"
    exit_code = EXIT_CONFIG

    def __init__(self, message, line=None, key=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message, line=line, key=key)
        self.line = line
        self.key = key


class DomainError(ConfigError):
    """Input outside the mathematical domain of a formula (cs = 0, L <= 0, ...)."""

    error_class = "domain"


class LoopRangeError(ConfigError):
    """Loop or sphere larger than the region it must fit into."""

    error_class = "range"


class SingularPointError(DualMeissnerError):
    """Higgs direction requested where |phi| vanishes."""

    error_class = "singular"
    exit_code = EXIT_NUMERIC


class ConvergenceError(DualMeissnerError):
    """Iterative solver stopped before reaching its tolerance."""

    error_class = "convergence"
    exit_code = EXIT_NUMERIC

    def __init__(self, message, residual=None, iterations=None):
        super().__init__(message, residual=residual, iterations=iterations)
        self.residual = residual
        self.iterations = iterations


class SignalError(DualMeissnerError):
    """Statistics too poor to define the requested quantity."""

    error_class = "signal"
    exit_code = EXIT_NUMERIC


class SnapshotError(DualMeissnerError):
    """Corrupt, truncated or foreign lattice snapshot."""

    error_class = "io"
    exit_code = EXIT_IO


class StorageError(DualMeissnerError):
    """Disk failure while writing run outputs."""

    error_class = "io"
    exit_code = EXIT_IO


class ManifestError(DualMeissnerError):
    """Run manifest missing, unreadable or out of step with the files on disk."""

    error_class = "integrity"
    exit_code = EXIT_IO


class InternalError(DualMeissnerError):
    """Unexpected failure inside a run (a bug or an unhandled library error)."""

    error_class = "internal"
    exit_code = EXIT_INTERNAL


def as_run_error(exc):
    """The DualMeissnerError reported for ``exc``: OSError is storage, anything else unknown is internal."""
    if isinstance(exc, DualMeissnerError):
        return exc
    if isinstance(exc, OSError):
        return StorageError(f"disk failure: {exc}")
    return InternalError(f"{type(exc).__name__}: {exc}")
