from ..exceptions import PyTlsDecryptError


class DetectError(PyTlsDecryptError):
    pass


class RuleLoadError(DetectError):
    pass


class RuleFormatError(DetectError):
    pass
