import typing as t
from abc import ABC, abstractmethod
from dataclasses import dataclass

VALUE = t.TypeVar("VALUE", bound=t.Any)


@dataclass(frozen=True)
class ArtifactSpec(t.Generic[VALUE]):
    name: str
    ref_type: t.Type[VALUE]

    def __call__(self, value: VALUE) -> "Artifact[VALUE]":
        return Artifact(self, value)


@dataclass(frozen=True)
class Artifact(t.Generic[VALUE]):
    spec: ArtifactSpec[VALUE]
    value: VALUE


class ArtifactsDict(t.Dict[ArtifactSpec[t.Any], t.Any]):
    def __getitem__(self, key: ArtifactSpec[VALUE]) -> VALUE:
        return t.cast(VALUE, super().__getitem__(key))


class BaseArtifactStore(ABC):
    @abstractmethod
    def add(self, *artifacts: Artifact[t.Any]) -> None:
        raise NotImplementedError

    @abstractmethod
    def get(self, *specs: ArtifactSpec[t.Any]) -> ArtifactsDict:
        raise NotImplementedError

    @abstractmethod
    def has(self, spec: ArtifactSpec[t.Any]) -> bool:
        raise NotImplementedError
