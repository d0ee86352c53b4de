"""Exception hierarchy shared by all modules.

``ValidationError`` subclasses signal that an input failed a structural
check; they carry a witness when one is available.  ``SizeLimitExceeded``
is kept separate so the CLI can map it to its own exit code.
"""


class StructureError(Exception):
    """Base class for every error raised by this package."""


class ValidationError(StructureError):
    """An input does not have the structure an operation requires."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class SizeLimitExceeded(StructureError):
    """A brute-force computation would exceed its configured cap."""

    def __init__(self, what, size, limit):
        super().__init__(f"{what}: size {size} exceeds limit {limit}")
        self.what = what
        self.size = size
        self.limit = limit


class GroundSetMismatch(ValidationError):
    pass


class NotUniform(ValidationError):
    pass


class NotLatin(ValidationError):
    pass


class NotGroup(ValidationError):
    pass


class NotGroupIsotopic(ValidationError):
    pass


class NotSubgroup(ValidationError):
    pass


class NotCartesian(ValidationError):
    pass


class NotHamming(ValidationError):
    pass


class WrongSort(ValidationError):
    pass


class NotRegular(ValidationError):
    pass


class HypothesisFailed(ValidationError):
    pass


class OrderTooSmall(ValidationError):
    pass


class NotLatinSquareGraph(ValidationError):
    pass


class DimensionTooSmall(ValidationError):
    pass


class NotSpecial(ValidationError):
    pass


class NotTransitive(ValidationError):
    pass


class DegenerateCase(ValidationError):
    pass


class ExceptionalCase(ValidationError):
    pass


class NotDiagonalGraph(ValidationError):
    pass


class NotApplicable(ValidationError):
    pass


class FormatError(ValidationError):
    """A text file does not follow the expected layout."""
