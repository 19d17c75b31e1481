class SimunivError(Exception):
    """Base class for all library errors."""


class DomainMismatch(SimunivError):
    pass


class TypeMismatch(SimunivError):
    pass


class UnknownProgram(SimunivError):
    pass


class NotUniversal(SimunivError):
    def __init__(self, message, verdict=None):
        super().__init__(message)
        self.verdict = verdict


class SearchSpaceTooLarge(SimunivError):
    def __init__(self, message, estimate=None, limit=None):
        super().__init__(message)
        self.estimate = estimate
        self.limit = limit


class WitnessNotMonotone(SimunivError):
    def __init__(self, message, pair=None):
        super().__init__(message)
        self.pair = pair


class PreconditionFailed(SimunivError):
    pass


class RealizerFound(SimunivError):
    def __init__(self, message, target=None):
        super().__init__(message)
        self.target = target


class ConfigMismatch(SimunivError):
    pass


class QuantizationOverflow(SimunivError):
    pass


class InputTooLong(SimunivError):
    pass


class BoundsExceeded(SimunivError):
    pass


class DecodeError(SimunivError):
    pass
