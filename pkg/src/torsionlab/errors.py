"""Exception hierarchy.

Validation problems (bad input) and numerical failures are kept apart so the
command-line front end can map them to distinct exit codes.
"""


class TorsionLabError(Exception):
    """Base class for all library errors."""


class ValidationError(TorsionLabError, ValueError):
    """Malformed input: bad map definition, wrong orbit type, and so on."""


class NumericalError(TorsionLabError, ArithmeticError):
    """A numerical procedure failed or produced an inconsistent answer."""


class NoConvergence(NumericalError):
    pass


class SingularJacobian(NumericalError):
    pass


class NotFound(NumericalError):
    pass


class IllConditioned(NumericalError):
    pass


class InconsistentSpectra(NumericalError):
    pass


class NotElliptic(NumericalError):
    pass


class ZeroCrossingAmbiguous(NumericalError):
    pass


class NotPositiveTwist(ValidationError):
    pass


class NonTwistAlongOrbit(ValidationError):
    pass


class MismatchedType(ValidationError):
    pass


class NoGap(ValidationError):
    pass


class SeedInvalid(ValidationError):
    pass
