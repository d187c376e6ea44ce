"""Exception hierarchy shared by every algkit module."""


class AlgkitError(Exception):
    """Base class for all library errors."""


class DimensionMismatch(AlgkitError, ValueError):
    pass


class UnitViolation(AlgkitError):
    pass


class NonAssociative(AlgkitError):
    def __init__(self, triple, message=None):
        self.triple = triple
        super().__init__(message or f"associativity fails on basis triple {triple}")


class NotCommutative(AlgkitError):
    pass


class ParentMismatch(AlgkitError, ValueError):
    pass


# presentations / DSL
class DSLSyntaxError(AlgkitError):
    def __init__(self, message, line=1, column=1):
        self.line = line
        self.column = column
        super().__init__(f"{message} (line {line}, column {column})")


class UnknownGenerator(DSLSyntaxError):
    pass


class UnsupportedForm(AlgkitError):
    pass


class InfiniteDimensional(AlgkitError):
    pass


class Inconsistent(AlgkitError):
    pass


# polynomials over an algebra
class NonUnitLeadingCoefficient(AlgkitError):
    pass


class DivisionByZeroPoly(AlgkitError, ZeroDivisionError):
    pass


class NotARoot(AlgkitError):
    pass


class UnsupportedAlgebra(AlgkitError):
    pass


class NotAZeroDivisor(AlgkitError):
    pass


class NonSimpleBaseRoot(AlgkitError):
    pass


# structure theory
class NotSemisimple(AlgkitError):
    pass


class DegenerateSample(AlgkitError):
    pass


# nil posets
class NotMultiplicative(AlgkitError):
    def __init__(self, pair, message=None):
        self.pair = pair
        super().__init__(message or f"basis product {pair} is not a scalar multiple of a basis element")


class NotUnitalNil(AlgkitError):
    pass


class NotAntisymmetric(AlgkitError):
    def __init__(self, pair):
        self.pair = pair
        super().__init__(f"nodes {pair} are mutually below each other")
