"""Exception types raised by the library.

Every structural failure gets its own class so callers (and the CLI) can
map them to exit codes without string matching.
"""


class MicroscopeError(Exception):
    """Base class for all library errors."""


class EmptyRoot(MicroscopeError):
    """Tree has no root vertex."""


class PrefixViolation(MicroscopeError):
    """An occupied vertex has an unoccupied parent."""


class NotTidy(MicroscopeError):
    """A vertex above the bottom level has no occupied child."""


class PointOutOfRange(MicroscopeError):
    """Input point lies outside the closed unit cube."""


class VertexNotOccupied(MicroscopeError):
    """Requested address is not occupied in the tree."""


class DepthOutOfRange(MicroscopeError):
    """Requested level does not exist in the tree."""


class MixedParams(MicroscopeError):
    """Trees with different base or ambient dimension were combined."""


class HeightTooSmall(MicroscopeError):
    """Tree is too shallow for the requested window or extraction."""


class NotLocallyLarge(MicroscopeError):
    """Extraction precondition failed; carries the counterexample vertex."""

    def __init__(self, message, counterexample=None):
        super().__init__(message)
        self.counterexample = counterexample


class NotEquicontractive(MicroscopeError):
    """Similarity dimension formula needs a single contraction ratio."""


class InvalidS(MicroscopeError):
    """Target dimension outside the admissible range."""


class DepthTooDeepForRatio(MicroscopeError):
    """Cylinder enumeration would exceed the word budget."""


class InfNotAttained(MicroscopeError):
    """Spectrum specification does not contain its infimum or supremum."""


class DepthTooShallowForAlpha(MicroscopeError):
    """Fewer than two glue generations fit in the requested depth."""


class UnknownName(MicroscopeError):
    """Unrecognised canonical set name."""


class EmptyMiniset(MicroscopeError):
    """Rescaled window misses the unit cube entirely."""


class LambdaTooSmall(MicroscopeError):
    """Miniset scaling coefficient must be >= 1."""


class KTooLargeForDepth(MicroscopeError):
    """No window admits descendants k levels down."""


class NoQualifyingWindow(MicroscopeError):
    """Search found no window meeting the count bound; carries best effort."""

    def __init__(self, message, best=None):
        super().__init__(message)
        self.best = best


class SpecParseError(MicroscopeError):
    """Malformed input specification (JSON or binary)."""


class AddressOverflow(MicroscopeError):
    """Packed address does not fit the binary wire format."""
