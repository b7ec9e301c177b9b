"""Exception hierarchy for braidkit."""


class BraidkitError(Exception):
    """Base class for every error raised by braidkit."""


class SchemaError(BraidkitError):
    """Input file or literal does not match the expected layout."""


class ScalarSyntaxError(BraidkitError):
    """Malformed scalar or polynomial literal.

    Attributes:
        text: The literal that failed to parse
        position: 0-based character offset of the offending token
    """

    def __init__(self, message: str, text: str = "", position: int = 0):
        self.text = text
        self.position = position
        if text:
            message = f"{message} at position {position}: {text!r}"
        super().__init__(message)


class ModeMismatch(BraidkitError):
    """Values or literals from two different coefficient fields were combined."""


class DivisionByZero(BraidkitError):
    """Inverse or quotient by a zero scalar."""


class NotDualizable(BraidkitError):
    """R^{t2} (or the same transpose of R^{-1}) is singular."""


class NotBiInvertible(BraidkitError):
    """R or its second inverse is missing."""


class VNotInvertible(BraidkitError):
    """The contraction v of the second inverse is singular.

    Reported as a warning: the braiding is still built.
    """


class IrreducibleFactorError(BraidkitError):
    """A factor of the minimal polynomial of PR has no root in the field."""

    def __init__(self, message: str, coefficients=None):
        self.coefficients = list(coefficients or [])
        super().__init__(message)


class SingularRPrime(BraidkitError):
    """The derived companion matrix R' is not invertible."""


class UnknownFamily(BraidkitError):
    """Unknown standard R-matrix family name."""


class InconsistentRelations(BraidkitError):
    """The relations collapse the algebra (1 reduces to 0)."""


class DegreeBoundExceeded(BraidkitError):
    """A word is longer than the degree up to which the rewrite system is certified."""


class DegreeUnsupported(BraidkitError):
    """Requested degree is beyond what the formula is available for."""


class InvalidBraiding(BraidkitError):
    """A generator braiding table is singular or fails the braid relation."""


class RPrimeConditionFailed(BraidkitError):
    """R and R' do not satisfy the conditions for a braided plane.

    Attributes:
        condition: Name of the failing condition
        witness: Index tuple where the two sides differ
    """

    def __init__(self, condition: str, witness=None):
        self.condition = condition
        self.witness = witness
        super().__init__(f"condition {condition} fails at {witness}")


class NotABicharacter(BraidkitError):
    """A function on G x G is not a bicharacter.

    Attributes:
        triple: The group elements where the law fails
    """

    def __init__(self, message: str, triple=None):
        self.triple = triple
        super().__init__(message)


class NotABialgebraMap(BraidkitError):
    """A linear map does not respect product, unit, coproduct or counit."""


class InputNotBraidedHopf(BraidkitError):
    """Input tables fail the braided Hopf axioms in the given category."""


class OutputVerificationFailed(BraidkitError):
    """A constructed structure failed its own axiom checks.

    Attributes:
        report: The failing VerificationReport
    """

    def __init__(self, message: str, report=None):
        self.report = report
        super().__init__(message)


class NotAProjection(BraidkitError):
    """p composed with i is not the identity."""


class AntipodeNotInvertible(BraidkitError):
    """The antipode matrix is singular."""
