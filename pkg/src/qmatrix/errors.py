"""Exception types shared across the package."""

from __future__ import annotations


class QMatrixError(Exception):
    """Base class for all package errors."""


class ParseError(QMatrixError, ValueError):
    pass


class NotSkew(QMatrixError, ValueError):
    """A Laurent polynomial h was expected to satisfy bar(h) == -h."""


class OddExponent(QMatrixError, ValueError):
    """A Laurent polynomial was expected to live in Z[q^2, q^-2]."""


class ShapeError(QMatrixError, ValueError):
    """Incompatible or out-of-range matrix shape."""


class IndexOutOfRange(QMatrixError, IndexError):
    pass


class NegativeExponent(QMatrixError, ValueError):
    pass


class NotTriangular(QMatrixError, AssertionError):
    """bar(Z^A) produced a non-leading term that is not lex-smaller than A."""


class ShapeNotSquare(ShapeError):
    pass


class NotSolid(QMatrixError, ValueError):
    """A minor was required to use consecutive rows and columns."""


class FormMismatch(QMatrixError, AssertionError):
    """Row and column expansions of a quantum minor disagree."""


class TooSmall(QMatrixError, ValueError):
    pass


class PatternViolation(QMatrixError, ValueError):
    """An exponent matrix lacks the zero blocks a lemma needs."""


class NotACorner(QMatrixError, ValueError):
    pass


class InvalidLine(QMatrixError, ValueError):
    pass


class PointAboveLine(QMatrixError, ValueError):
    pass


class NotQCommuting(QMatrixError, ValueError):
    def __init__(self, i, j, message=None):
        self.pair = (i, j)
        super().__init__(message or f"variables {i} and {j} do not q-commute")


class NotCompatible(QMatrixError, ValueError):
    def __init__(self, witness, message=None):
        self.witness = witness
        super().__init__(message or f"compatibility fails at {witness}")


class NotMutable(QMatrixError, ValueError):
    pass


class NotClosestPair(QMatrixError, ValueError):
    pass


class PredictionMismatch(QMatrixError, AssertionError):
    pass


class NonIntegralSeed(QMatrixError, ArithmeticError):
    pass


class ConfigError(QMatrixError, ValueError):
    pass
