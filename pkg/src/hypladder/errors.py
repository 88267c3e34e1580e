"""Exception hierarchy shared by all hypladder modules.

Every error carries a short machine-readable ``rule`` naming the violated
precondition, so the CLI can emit structured error objects.
"""


class HypladderError(Exception):
    rule = "error"

    def __init__(self, message, rule=None):
        super().__init__(message)
        if rule is not None:
            self.rule = rule


class DegeneratePentagon(HypladderError):
    rule = "pentagon-degenerate"


class NonPositiveLength(HypladderError):
    rule = "length-nonpositive"


class EmptyAnnulus(HypladderError):
    rule = "annulus-empty"


class NotHyperbolic(HypladderError):
    rule = "trace-not-hyperbolic"


class InvalidDilatation(HypladderError):
    rule = "dilatation-below-one"


class NumericalInstability(HypladderError):
    rule = "matrix-overflow"


class NotShiftInvariant(HypladderError):
    rule = "shift-invariance"

    def __init__(self, message, offending_index=None):
        super().__init__(message)
        self.offending_index = offending_index


class ArccoshDomainError(HypladderError):
    rule = "arccosh-domain"

    def __init__(self, message, ratio=None):
        super().__init__(message)
        self.ratio = ratio


class ComplexityTooLarge(HypladderError):
    rule = "complexity-cap"


class ScaleTooLarge(HypladderError):
    rule = "scale-cap"


class Unreachable(HypladderError):
    rule = "unreachable"


class EmptySet(HypladderError):
    rule = "empty-set"


class InconsistentInput(HypladderError):
    rule = "inconsistent-input"
