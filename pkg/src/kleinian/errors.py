"""Exception taxonomy.

``ConfigError`` maps to CLI exit code 2, ``ConventionError`` (an internal
inconsistency of the convention-bug class) to exit code 3, verification
mismatches to exit code 1.
"""


class KleinianError(Exception):
    """Base class for all package errors."""


class ConfigError(KleinianError):
    """Bad user input: unknown curve family, malformed spec file, bad flags."""


class SeriesError(KleinianError):
    """Illegal series operation (non-invertible leading term, bad composition)."""


class ResidueError(SeriesError):
    """Integration of a series with a nonzero xi^-1 coefficient."""


class TruncationError(SeriesError):
    """An operation cannot guarantee the requested truncation order."""


class InconsistentSystemError(KleinianError):
    """A linear system has a row 0 = nonzero; signals a calibration bug."""


class ReductionError(KleinianError):
    """Reduction failed: zeta symbols survived, or the pass bound was hit."""


class ConventionError(KleinianError):
    """A structural invariant (parity, weight grading, symmetry) failed."""
