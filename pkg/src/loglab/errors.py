"""Exception hierarchy shared across the laboratory.

Domain and range violations raise plain ValueError; everything that needs
to be told apart programmatically (cache corruption, certification failure,
convolution precision gates, ...) gets its own class below.
"""


class LoglabError(Exception):
    """Base class for laboratory-specific failures."""


class EscalationError(LoglabError):
    """Floor certification still straddles an integer at maximum precision."""


class CapacityError(LoglabError):
    """Requested sieve exceeds the configured memory budget."""


class CoverageError(LoglabError):
    """The floored prime image is too small to answer for the requested N."""


class PrecisionError(LoglabError):
    """A fast transform disagreed with the brute-force gate beyond tolerance."""


class GridError(LoglabError):
    """Fourier grid too small for the circle identity to be exact."""


class PoleError(LoglabError, ZeroDivisionError):
    """Fourier coefficient c_h(x) evaluated at its pole h + x = 0."""


class CacheError(LoglabError):
    """Image cache failed its checksum, version, or spot re-certification."""
