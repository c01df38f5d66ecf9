class BnbpeError(Exception):
    """Base class for every error raised by this package."""


class EmptyCorpus(BnbpeError):
    pass


class TargetTooSmall(BnbpeError):
    pass


class FingerprintMismatch(BnbpeError):
    pass


class VersionMismatch(BnbpeError):
    pass


class CorruptFile(BnbpeError):
    pass


class MissingModel(BnbpeError):
    pass


class MissingColumn(BnbpeError):
    pass


class MalformedRow(BnbpeError):
    def __init__(self, message, line=None):
        super().__init__(message if line is None else f"line {line}: {message}")
        self.line = line


class ClassTooSmall(BnbpeError):
    pass


class EmptyTrainingSet(BnbpeError):
    pass


class SingleClass(BnbpeError):
    pass


class NonFinite(BnbpeError):
    pass


class LengthMismatch(BnbpeError):
    pass


class CorpusSmallerThanWarmup(BnbpeError):
    pass
