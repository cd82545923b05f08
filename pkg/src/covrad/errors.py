"""Exception hierarchy shared by every covrad module.

The CLI maps these onto exit codes: domain errors exit 1, resource refusals
exit 2, parse and I/O errors exit 3.
"""


class CovradError(Exception):
    """Base class for all covrad errors."""


class DomainError(CovradError, ValueError):
    """A parameter lies outside the mathematical domain of an operation."""


class DimensionError(DomainError):
    """Two objects live on ground sets of different sizes."""


class ResourceError(CovradError):
    """An enumeration cap or search budget would be exceeded."""


class CodeFileError(CovradError):
    """A code file could not be read or does not describe a valid code."""
