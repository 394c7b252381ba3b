"""Exception types shared across modules."""


class ArgumentError(ValueError):
    """A documented precondition on the arguments is violated."""


class CertificateRequired(ValueError):
    """The operation needs a local nilpotency certificate the derivation lacks."""


class NotWellDefined(ValueError):
    """The derivation does not preserve the defining ideal."""


class NotAnAutomorphism(ValueError):
    """Forward and backward maps are not mutually inverse algebra maps."""


class GradingMismatch(ValueError):
    """A relation is not homogeneous for the given weight grading."""


class PointNotOnVariety(ValueError):
    """A coordinate vector does not satisfy the defining relations."""
