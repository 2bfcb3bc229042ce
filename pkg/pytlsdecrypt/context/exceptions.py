from ..exceptions import PyTlsDecryptError


class ArtifactCannotBeOverriddenError(PyTlsDecryptError):
    pass


class ArtifactIsNotProducedError(PyTlsDecryptError):
    pass
