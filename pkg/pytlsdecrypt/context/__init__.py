from .base import Artifact, ArtifactsDict, ArtifactSpec, BaseArtifactStore
from .exceptions import (
    ArtifactCannotBeOverriddenError,
    ArtifactIsNotProducedError,
)
from .impl import ConsumesArtifacts, ProducesArtifacts, RunContext, RunParams

__all__ = (
    "Artifact",
    "ArtifactsDict",
    "ArtifactSpec",
    "BaseArtifactStore",
    "ArtifactCannotBeOverriddenError",
    "ArtifactIsNotProducedError",
    "ConsumesArtifacts",
    "ProducesArtifacts",
    "RunContext",
    "RunParams",
)
