from ..exceptions import PyTlsDecryptError


class CliError(PyTlsDecryptError):
    pass


class UsageError(CliError):
    pass
