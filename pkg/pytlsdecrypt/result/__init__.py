from .exceptions import MissingOutError
from .impl import Result, Skipped

__all__ = (
    "MissingOutError",
    "Result",
    "Skipped",
)
