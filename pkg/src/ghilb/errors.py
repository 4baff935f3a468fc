"""Exception hierarchy.  Every error carries a short machine-readable ``code``."""


class GhilbError(Exception):
    code = "error"


class ParseError(GhilbError):
    code = "syntax"

    def __init__(self, message, position=None):
        if position is not None:
            message = f"{message} at position {position}"
        super().__init__(message)
        self.position = position


class UnknownVariable(ParseError):
    code = "unknown-variable"


class NotInvertible(GhilbError):
    code = "not-invertible"


class RingMismatch(GhilbError):
    code = "ring-mismatch"


class DimensionMismatch(GhilbError):
    code = "dimension-mismatch"


class DegreeMismatch(GhilbError):
    code = "degree-mismatch"


class IndexOutOfRange(GhilbError):
    code = "index-out-of-range"


class NotSymmetric(GhilbError):
    code = "not-symmetric"


class MarginError(GhilbError):
    code = "margin"


class AlgebraValidationError(GhilbError):
    code = "invalid-algebra"


class NotABasis(GhilbError):
    code = "not-a-basis"


class NotEtale(GhilbError):
    code = "not-etale"


class NotSurjective(GhilbError):
    code = "not-surjective"


class NotSufficientlyBig(GhilbError):
    code = "not-sufficiently-big"


class Undecided(GhilbError):
    code = "undecided"


class DegenerateChart(GhilbError):
    code = "degenerate-chart"


class OutsideChart(GhilbError):
    code = "outside-chart"


class DiagonalConfig(GhilbError):
    code = "diagonal"


class InfeasibleSize(GhilbError):
    code = "infeasible"


class InputError(GhilbError):
    code = "bad-input"
