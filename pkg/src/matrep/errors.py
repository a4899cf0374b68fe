"""Exception hierarchy shared by all modules."""


class MatrepError(Exception):
    """Base class for every error raised by this package."""


# matroid axioms / parsing

class MatroidError(MatrepError, ValueError):
    pass


class EmptyBases(MatroidError):
    pass


class WrongCardinality(MatroidError):
    pass


class ElementOutOfRange(MatroidError):
    pass


class ExchangeViolation(MatroidError):
    def __init__(self, b1, b2, e):
        self.b1 = tuple(sorted(b1))
        self.b2 = tuple(sorted(b2))
        self.e = e
        super().__init__(
            f"basis exchange fails: B1={set(self.b1)}, B2={set(self.b2)}, e={e}"
        )


class UnknownName(MatroidError):
    pass


class BadParams(MatroidError):
    pass


class MatroidSyntaxError(MatroidError):
    def __init__(self, lineno, message):
        self.lineno = lineno
        super().__init__(f"line {lineno}: {message}")


# polynomials

class PolynomialError(MatrepError, ValueError):
    pass


class ZeroPolynomial(PolynomialError):
    pass


class VarAbsent(PolynomialError):
    pass


class NotDivisible(PolynomialError):
    pass


class PolySyntaxError(PolynomialError):
    pass


# finite fields

class FieldError(MatrepError, ValueError):
    pass


class NotPrime(FieldError):
    pass


class TooLarge(FieldError):
    pass


class FieldMismatch(FieldError):
    pass


class DivisionByZero(FieldError, ZeroDivisionError):
    pass


class EmbeddingUnavailable(FieldError):
    pass


# systems and solving

class RankZero(MatrepError, ValueError):
    pass


class BoundViolated(MatrepError, AssertionError):
    """A proven bound failed to hold; always an implementation bug."""


class AllZerosSolution(MatrepError, ValueError):
    pass


class InconsistentInput(MatrepError, ValueError):
    pass


class CapExceeded(MatrepError):
    """Search gave up at its caps; the answer is unknown, not negative."""

    def __init__(self, message, report=None):
        self.report = report
        super().__init__(message)


class SearchSpaceTooLarge(MatrepError, ValueError):
    pass


class NoEliminableVariable(MatrepError, ValueError):
    pass


class VerificationFailed(MatrepError, AssertionError):
    pass


class NTooSmall(MatrepError, ValueError):
    pass
