import typing as t
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from pathlib import Path

from .base import Artifact, ArtifactsDict, ArtifactSpec, BaseArtifactStore
from .exceptions import (
    ArtifactCannotBeOverriddenError,
    ArtifactIsNotProducedError,
)


@dataclass(frozen=True)
class RunParams:
    """Everything a command was invoked with; immutable for the run."""

    command: str
    pcap: t.Optional[Path] = None
    keylog: t.Optional[Path] = None
    out_dir: t.Optional[Path] = None
    rules: t.Optional[str] = None
    ports: t.FrozenSet[int] = frozenset()
    hosts: t.FrozenSet[str] = frozenset()
    max_pending: t.Optional[int] = None
    poll_ms: t.Optional[int] = None
    jvm_in: t.Optional[Path] = None
    jvm_out: t.Optional[Path] = None
    idle_polls: t.Optional[int] = None


@dataclass(frozen=True)
class RunContext(BaseArtifactStore):
    params: RunParams

    _storage: ArtifactsDict = field(
        init=False, repr=False, default_factory=ArtifactsDict
    )

    def add(self, *artifacts: Artifact[t.Any]) -> None:
        for artifact in artifacts:
            if artifact.spec in self._storage:
                raise ArtifactCannotBeOverriddenError(artifact.spec.name)
            self._storage[artifact.spec] = artifact.value

    def get(self, *specs: ArtifactSpec[t.Any]) -> ArtifactsDict:
        missing = {spec.name for spec in specs if spec not in self._storage}

        if len(missing) > 0:
            raise ArtifactIsNotProducedError(sorted(missing))

        return ArtifactsDict(
            {k: v for k, v in self._storage.items() if k in specs}
        )

    def has(self, spec: ArtifactSpec[t.Any]) -> bool:
        return spec in self._storage


class ConsumesArtifacts(ABC):
    @property
    @abstractmethod
    def _consumes(self) -> t.Set[ArtifactSpec[t.Any]]:
        raise NotImplementedError

    def out_of(self, store: BaseArtifactStore) -> ArtifactsDict:
        return store.get(*self._consumes)


class ProducesArtifacts(ABC):
    @dataclass(frozen=True)
    class ProducerProxy:
        _store: BaseArtifactStore
        _required_specs: t.Set[ArtifactSpec[t.Any]]

        def add(self, *artifacts: Artifact[t.Any]) -> None:
            actual_specs = {artifact.spec for artifact in artifacts}
            missing_specs = self._required_specs - actual_specs

            if len(missing_specs) > 0:
                raise ArtifactIsNotProducedError(
                    sorted(spec.name for spec in missing_specs)
                )

            self._store.add(*artifacts)

    @property
    @abstractmethod
    def _produces(self) -> t.Set[ArtifactSpec[t.Any]]:
        raise NotImplementedError

    def to(
        self, store: BaseArtifactStore
    ) -> "ProducesArtifacts.ProducerProxy":
        return self.ProducerProxy(store, self._produces)
