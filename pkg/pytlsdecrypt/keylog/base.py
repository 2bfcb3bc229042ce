import abc
import enum
import typing as t
from abc import ABC

from .types import KeyLogEntry, KeyLogLabel


class AddOutcome(str, enum.Enum):
    ADDED = "added"
    DUPLICATE = "duplicate"
    CONFLICT = "conflict"


class BaseReadOnlyKeyStore(ABC):
    @abc.abstractmethod
    def find(
        self, client_random: bytes, label: KeyLogLabel
    ) -> t.Optional[bytes]:
        raise NotImplementedError

    @abc.abstractmethod
    def exists(self, client_random: bytes, label: KeyLogLabel) -> bool:
        raise NotImplementedError

    @abc.abstractmethod
    def entries(self) -> t.List[KeyLogEntry]:
        raise NotImplementedError

    @abc.abstractmethod
    def __len__(self) -> int:
        raise NotImplementedError


class BaseWriteOnlyKeyStore(ABC):
    @abc.abstractmethod
    def add(self, entry: KeyLogEntry) -> AddOutcome:
        raise NotImplementedError

    def add_all(
        self, entries: t.Iterable[KeyLogEntry]
    ) -> t.List[AddOutcome]:
        return [self.add(entry) for entry in entries]


class BaseKeyStore(BaseReadOnlyKeyStore, BaseWriteOnlyKeyStore, ABC):
    pass
