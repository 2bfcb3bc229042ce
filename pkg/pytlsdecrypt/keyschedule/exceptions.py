from ..exceptions import PyTlsDecryptError


class KeyScheduleError(PyTlsDecryptError):
    pass


class UnsupportedSuiteError(KeyScheduleError):
    pass


class LabelTooLongError(KeyScheduleError):
    pass


class KeyLengthError(KeyScheduleError):
    pass


class NonceShapeMismatchError(KeyScheduleError):
    pass
