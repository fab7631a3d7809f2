"""Exception hierarchy.

Every error carries a stable ``code`` string so the command line can emit
machine-readable diagnostics.
"""


class FlatFrontError(Exception):
    code = "FlatFrontError"
    #: 1 = validation failure, 2 = runtime failure (command-line exit codes)
    exit_code = 2


class ValidationError(FlatFrontError, ValueError):
    code = "ValidationError"
    exit_code = 1


class NonHermitian(ValidationError):
    code = "NonHermitian"


class NotUnimodular(ValidationError):
    code = "NotUnimodular"


class OutsideDomain(ValidationError):
    code = "OutsideDomain"


class ConstantFunction(ValidationError):
    code = "ConstantFunction"


class EpsilonTooLarge(ValidationError):
    code = "EpsilonTooLarge"


class BadParams(ValidationError):
    code = "BadParams"


class TooManyPoints(ValidationError):
    code = "TooManyPoints"


class DuplicatePoints(ValidationError):
    code = "DuplicatePoints"


class NotAnEnd(ValidationError):
    code = "NotAnEnd"


class PoleOnPath(FlatFrontError):
    code = "PoleOnPath"


class PoleAtPoint(FlatFrontError):
    code = "PoleAtPoint"


class StepUnderflow(FlatFrontError):
    code = "StepUnderflow"


class QuadratureFailure(FlatFrontError):
    code = "QuadratureFailure"


class SingularSample(ValidationError):
    code = "SingularSample"


class NotWeaklyComplete(FlatFrontError):
    code = "NotWeaklyComplete"


class InconclusiveEnd(FlatFrontError):
    code = "InconclusiveEnd"


class IoError(FlatFrontError):
    code = "IoError"
