"""Exception hierarchy shared by every module of the package."""


class DualShiftError(Exception):
    """Base class for all errors raised by dualshift."""


class NonSquare(DualShiftError, ValueError):
    pass


class NotSymmetric(DualShiftError, ValueError):
    pass


class NotUnitary(DualShiftError, ValueError):
    pass


class NotNormal(DualShiftError, ValueError):
    pass


class NoConvergence(DualShiftError, RuntimeError):
    pass


class RepeatedEigenvalues(DualShiftError, ValueError):
    pass


class DimensionMismatch(DualShiftError, ValueError):
    pass


class DegreeTooHigh(DualShiftError, ValueError):
    pass


class IndexOutOfRange(DualShiftError, IndexError):
    pass


class ZeroWeight(DualShiftError, ValueError):
    pass


class InvalidPermutation(DualShiftError, ValueError):
    pass


class Infeasible(DualShiftError):
    pass


class Unbounded(DualShiftError):
    pass


class MaxIterations(DualShiftError, RuntimeError):
    pass


class RepeatedDualEigenvalues(RepeatedEigenvalues):
    pass


class IllConditioned(DualShiftError, ValueError):
    pass


class TooSmall(DualShiftError, ValueError):
    pass


class DegenerateSpectrum(DualShiftError, RuntimeError):
    pass


class ParseError(DualShiftError, ValueError):
    pass


class SchemaError(ParseError):
    pass
