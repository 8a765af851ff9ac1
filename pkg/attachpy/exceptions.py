class AttachPyError(ValueError):
    pass


class InvalidParameterError(AttachPyError):
    pass


class EmptyInputError(AttachPyError):
    pass


class NormalizationError(AttachPyError):
    pass


class ZeroMassDegreeError(AttachPyError):
    def __init__(self, degree: int):
        self.degree = degree
        super().__init__(
            f"degree {degree} has zero mass; interpolate the distribution first "
            "(see `attachpy dist ingest`)"
        )


class InfeasibleRateError(AttachPyError):
    pass


class InconsistentAttachmentError(AttachPyError):
    pass


class DeadStartError(AttachPyError):
    pass


class DomainError(AttachPyError):
    pass


class FitError(AttachPyError):
    pass


class MissingRateError(AttachPyError):
    pass


class FileClobberError(AttachPyError):
    pass
