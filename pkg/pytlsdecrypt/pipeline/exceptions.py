from ..exceptions import PyTlsDecryptError


class PipelineError(PyTlsDecryptError):
    pass


class OffsetGapError(PipelineError):
    pass
