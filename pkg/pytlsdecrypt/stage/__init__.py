from .base import BaseStage
from .exceptions import (
    CannotRelinkStageError,
    FinalStageError,
    IncompleteFlowError,
)
from .impl import (
    FailStage,
    FinalStage,
    Flow,
    FlowStage,
    GuardStage,
    RunStage,
    StageChain,
)

__all__ = (
    "BaseStage",
    "CannotRelinkStageError",
    "FinalStageError",
    "IncompleteFlowError",
    "FailStage",
    "FinalStage",
    "Flow",
    "FlowStage",
    "GuardStage",
    "RunStage",
    "StageChain",
)
