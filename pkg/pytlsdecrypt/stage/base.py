import abc
import typing as t
from abc import ABC

from ..context import RunContext
from ..result import Result

CONTEXT = t.TypeVar("CONTEXT", bound=RunContext)
OUT = t.TypeVar("OUT")


class BaseStage(t.Generic[CONTEXT, OUT], ABC):
    @abc.abstractmethod
    def __call__(self, context: CONTEXT) -> Result[OUT]:
        raise NotImplementedError
