import typing as t
from dataclasses import dataclass

from .exceptions import MissingOutError

OUT = t.TypeVar("OUT")


@dataclass(frozen=True)
class Skipped:
    reason: str


@dataclass(frozen=True, repr=False)
@t.final
class Result(t.Generic[OUT]):
    """Outcome of classifying one item: a value, a deliberate skip, or
    a recoverable error."""

    _out: t.Union[OUT, Skipped, Exception]

    def get(self) -> OUT:
        if isinstance(self._out, Skipped):
            raise MissingOutError(self._out.reason)
        elif isinstance(self._out, Exception):
            raise self._out

        return self._out

    def get_or(self, default: OUT) -> OUT:
        return default if not self.is_ok() else self.get()

    def is_ok(self) -> bool:
        return not (self.is_error() or self.is_skipped())

    def is_skipped(self) -> bool:
        return isinstance(self._out, Skipped)

    def is_error(self) -> bool:
        return isinstance(self._out, Exception)

    @property
    def reason(self) -> t.Optional[str]:
        if isinstance(self._out, Skipped):
            return self._out.reason
        elif isinstance(self._out, Exception):
            return str(self._out)
        return None

    @property
    def exception(self) -> t.Optional[Exception]:
        return self._out if isinstance(self._out, Exception) else None

    @staticmethod
    def ok(out: OUT) -> "Result[OUT]":
        return Result(out)

    @staticmethod
    def error(exc: Exception) -> "Result[OUT]":
        return Result(exc)

    @staticmethod
    def skip(reason: str) -> "Result[OUT]":
        return Result(Skipped(reason))

    def __repr__(self) -> str:
        return self._out.__repr__()
