"""Exception hierarchy for the logfacies package.

The CLI maps these onto process exit codes: InputError -> 1,
ConfigError -> 2, NumericError -> 3.
"""

from __future__ import annotations


class LogFaciesError(Exception):
    """Base class for all package errors."""


class InputError(LogFaciesError):
    """Bad or unusable input data (files, curves, depth ranges)."""


class LasParseError(InputError):
    """LAS text could not be parsed. Carries the offending line number."""

    def __init__(self, message: str, line_no: int | None = None):
        self.line_no = line_no
        if line_no is not None:
            message = f"line {line_no}: {message}"
        super().__init__(message)


class MissingSectionError(LasParseError):
    """A required LAS section (~A at minimum) is absent."""


class UnsupportedLasError(LasParseError):
    """LAS 3.0 files and unknown section types are not supported."""


class CurveCountMismatchError(LasParseError):
    """A data row's value count disagrees with the ~C curve list."""


class NonNumericDataError(LasParseError):
    """A token in the ~A section failed numeric conversion."""


class NonMonotoneDepthError(LasParseError):
    """Depth column is neither increasing nor decreasing."""


class MissingCurveError(InputError):
    """A requested curve mnemonic is not present in the curve set."""


class EmptySliceError(InputError):
    """A depth slice selected no rows."""


class ConfigError(LogFaciesError):
    """Invalid configuration value or an unsatisfiable request."""


class NumericError(LogFaciesError):
    """Data-driven numeric failure (degenerate variance, non-finite values)."""


class ZeroVarianceError(NumericError):
    """A selected feature has zero spread; standardization is undefined."""

    def __init__(self, mnemonic: str):
        self.mnemonic = mnemonic
        super().__init__(f"curve {mnemonic!r} has zero variance over retained rows")


class DegenerateSpreadError(NumericError):
    """Point set has no spread along an axis; KDE bandwidth is undefined."""


class NonFiniteDataError(NumericError):
    """NaN or infinity encountered where finite values are required."""
