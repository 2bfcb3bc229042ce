class PyTlsDecryptError(Exception):
    pass
