"""Exception hierarchy.

Every error raised on a bad domain input derives from :class:`QCLDPCError`, so
callers (and the CLI) can separate domain failures from programming errors.
"""


class QCLDPCError(Exception):
    """Base class for all domain errors in this package."""


class InvalidMatrix(QCLDPCError, ValueError):
    pass


class NotNormalized(QCLDPCError, ValueError):
    pass


class WrongRowCount(QCLDPCError, ValueError):
    pass


class ModulusTooSmall(QCLDPCError, ValueError):
    pass


class InvalidPermutation(QCLDPCError, ValueError):
    pass


class KTooLarge(QCLDPCError, ValueError):
    pass


class EmptyMatrix(QCLDPCError, ValueError):
    pass


class MOutOfRange(QCLDPCError, ValueError):
    pass


class UnsortedLengths(QCLDPCError, ValueError):
    pass


class LengthTooSmall(QCLDPCError, ValueError):
    pass


class SearchSpaceTooLarge(QCLDPCError, ValueError):
    pass


class LTooSmall(QCLDPCError, ValueError):
    pass


class InfeasibleConstraint(QCLDPCError, ValueError):
    pass


class PTooSmall(QCLDPCError, ValueError):
    pass


class ConstructionInvalid(QCLDPCError, RuntimeError):
    """A construction produced a girth-8 matrix that fails verification."""


class AlistError(QCLDPCError, ValueError):
    pass


class MalformedHeader(AlistError):
    pass


class WeightMismatch(AlistError):
    pass


class IndexOutOfRange(AlistError):
    pass


class InvalidRate(QCLDPCError, ValueError):
    pass


class InvalidConfig(QCLDPCError, ValueError):
    pass
