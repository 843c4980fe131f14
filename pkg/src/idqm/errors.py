"""Exception hierarchy shared by all modules."""


class IdqmError(Exception):
    """Base class for every error raised by this package."""


class DomainError(IdqmError, ValueError):
    """A mathematical-domain violation (exit code 2 at the command line)."""


class StripViolation(DomainError):
    pass


class TruncationNotConverged(IdqmError, ArithmeticError):
    pass


class QuadratureNotConverged(IdqmError, ArithmeticError):
    pass


class InvalidRho(DomainError):
    pass


class PoleProximity(DomainError):
    def __init__(self, location, distance):
        self.location = location
        self.distance = distance
        super().__init__(f"argument within {distance:.3g} of pole at {location}")


class DenominatorPochhammerZero(DomainError):
    def __init__(self, k, which):
        self.k = k
        self.which = which
        super().__init__(f"denominator Pochhammer #{which} vanishes at k={k}")


class RecurrenceDenominatorZero(DomainError):
    pass


class RangeViolation(DomainError):
    def __init__(self, which):
        self.which = which
        super().__init__(f"parameter range violated: {which}")


class DegenerateParameters(DomainError):
    pass


class EmptySpectrum(DomainError):
    pass


class IndexBeyondSpectrum(DomainError):
    pass


class PoleOfPotential(DomainError):
    pass


class EvaluationPole(DomainError):
    pass


class ShiftedParamsOutOfRange(DomainError):
    pass


class DegreeBoundViolation(DomainError):
    pass


class EmbeddingOutOfRange(DomainError):
    pass


class ParamFileError(IdqmError, ValueError):
    """Malformed parameter file (exit code 1 at the command line)."""
