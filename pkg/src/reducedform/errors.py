"""Exception hierarchy shared by every module."""


class ReducedFormError(Exception):
    """Base class for all library errors."""


# field kernel
class DivisionByZero(ReducedFormError, ZeroDivisionError):
    pass


class MixedFields(ReducedFormError):
    pass


class ZeroPolynomial(ReducedFormError):
    pass


class UnsupportedRadical(ReducedFormError):
    pass


class UnsupportedTwistedDerivation(ReducedFormError):
    pass


# operators
class ZeroDivisor(ReducedFormError):
    pass


class BoundOverflow(ReducedFormError):
    """A degree or pole-order bound exceeded the configured cap."""

    def __init__(self, bound, cap):
        super().__init__(f"degree bound {bound} exceeds cap {cap}")
        self.bound = bound
        self.cap = cap


class IrregularSingularity(ReducedFormError):
    pass


class DegenerateInput(ReducedFormError):
    pass


# matrices
class SingularGauge(ReducedFormError):
    pass


class OddDimension(ReducedFormError):
    pass


class SizeMismatch(ReducedFormError):
    pass


class DegenerateForm(ReducedFormError):
    pass


class DependentInput(ReducedFormError):
    pass


# variational equation
class ZeroSolution(ReducedFormError):
    pass


class NotASolution(ReducedFormError):
    pass


class NotHamiltonian(ReducedFormError):
    pass


# 2x2 classification
class NonZeroTrace(ReducedFormError):
    pass


class UnsupportedExtension(ReducedFormError):
    pass


class DegenerateCyclicVector(ReducedFormError):
    pass


# sp(4) reduction
class NonUnimodular(ReducedFormError):
    pass


class ShapeMismatch(ReducedFormError):
    pass


class SideConditionFails(ReducedFormError):
    """A table-row side condition failed; ``regauge`` is the 2x2 fix-up matrix."""

    def __init__(self, message, regauge=None):
        super().__init__(message)
        self.regauge = regauge


class UnknownTarget(ReducedFormError):
    pass


class UnsupportedField(ReducedFormError):
    pass


# formal solving
class NonAbelianInput(ReducedFormError):
    pass


class InconsistentPrimitives(ReducedFormError):
    pass


# input
class ParseError(ReducedFormError):
    def __init__(self, message, line=None, column=None):
        loc = ""
        if line is not None:
            loc = f"line {line}, column {column}: " if column is not None else f"line {line}: "
        super().__init__(loc + message)
        self.message = message
        self.line = line
        self.column = column


class ExprSyntaxError(ParseError):
    pass


class UnknownSymbol(ParseError):
    pass


class InconsistentField(ParseError):
    pass


class PipelineError(ReducedFormError):
    """Wraps any failure with the pipeline stage where it happened."""

    def __init__(self, stage, cause):
        super().__init__(f"[{stage}] {type(cause).__name__}: {cause}")
        self.stage = stage
        self.cause = cause
