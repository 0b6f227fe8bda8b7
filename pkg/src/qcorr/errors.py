"""Exception hierarchy shared by all qcorr modules."""


class QcorrError(Exception):
    """Base class for all errors raised by qcorr."""


class DimensionTooLarge(QcorrError):
    pass


class SingularBlock(QcorrError):
    pass


class NotPsd(QcorrError):
    pass


class NotUnitDiagonal(QcorrError):
    pass


class NotChordal(QcorrError):
    pass


class NotPartialPsd(QcorrError):
    pass


class OutOfRange(QcorrError):
    pass


class NotNormalized(QcorrError):
    pass


class SignallingDetected(QcorrError):
    """No-signalling violated; ``worst`` holds the offending indices and deviation."""

    def __init__(self, message, worst=None):
        super().__init__(message)
        self.worst = worst


class UnknownName(QcorrError):
    pass


class VariableNotFound(QcorrError):
    pass


class Infeasible(QcorrError):
    pass


class Unbounded(QcorrError):
    pass


class EmptyInterval(QcorrError):
    pass


class EmptyPolytope(QcorrError):
    pass


class TooLarge(QcorrError):
    pass
