from .base import BasePoller
from .exceptions import FileRemovedError
from .impl import FileTail, poll_forever

__all__ = (
    "BasePoller",
    "FileRemovedError",
    "FileTail",
    "poll_forever",
)
