"""Exception hierarchy shared by all ffgeom modules."""


class FFGeomError(Exception):
    """Base class for all errors raised by this package."""


class NotPrime(FFGeomError):
    pass


class SizeLimitExceeded(FFGeomError):
    pass


class DivisionByZero(FFGeomError):
    pass


class InvalidBaseDegree(FFGeomError):
    pass


class NoEmbedding(FFGeomError):
    pass


class FieldMismatch(FFGeomError):
    pass


class ArityMismatch(FFGeomError):
    pass


class ZeroPolynomial(FFGeomError):
    pass


class NotHomogeneous(FFGeomError):
    pass


class BothZero(FFGeomError):
    pass


class RankDeficient(FFGeomError):
    pass


class CellContained(FFGeomError):
    pass


class SpaceTooLarge(FFGeomError):
    pass


class FieldTooSmall(FFGeomError):
    pass


class CenterOnCurve(FFGeomError):
    pass


class NotSquarefree(FFGeomError):
    pass


class DivisorNotProper(FFGeomError):
    pass


class InvalidRank(FFGeomError):
    pass


class InternalContradiction(FFGeomError):
    """A verification flag came back false; indicates a bug, never expected."""


class ParseError(FFGeomError):
    def __init__(self, message, position=None):
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)
        self.position = position
