import abc
import typing as t
from abc import ABC

ITEM = t.TypeVar("ITEM")


class BasePoller(t.Generic[ITEM], ABC):
    @abc.abstractmethod
    def poll(self) -> t.List[ITEM]:
        """Returns everything that became complete since the last poll."""
        raise NotImplementedError
