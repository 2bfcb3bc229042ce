import abc
import time
import typing as t
from abc import ABC
from logging import getLogger

from ..context import RunContext
from ..result import Result
from .base import BaseStage
from .exceptions import (
    CannotRelinkStageError,
    FinalStageError,
    IncompleteFlowError,
)

logger = getLogger(__name__)

CONTEXT = t.TypeVar("CONTEXT", bound=RunContext)
OUT = t.TypeVar("OUT")


class FlowStage(BaseStage[CONTEXT, OUT], ABC):
    """One step of a command flow.

    `a >> b >> c` collects stages into a `StageChain`; `build()` turns the
    chain into a runnable `Flow`. A stage belongs to at most one chain.
    """

    _linked: bool = False

    @property
    def name(self) -> str:
        return self.__class__.__name__

    @abc.abstractmethod
    def step(
        self, context: CONTEXT
    ) -> t.Union[None, Result[OUT], BaseStage[CONTEXT, OUT]]:
        """Returns None to go on, a result to end the flow, or the stage
        that takes over the context."""
        raise NotImplementedError

    def __rshift__(
        self, other: "FlowStage[CONTEXT, OUT]"
    ) -> "StageChain[CONTEXT, OUT]":
        return StageChain(self) >> other

    def build(self) -> "Flow[CONTEXT, OUT]":
        return StageChain(self).build()

    def __call__(self, context: CONTEXT) -> Result[OUT]:
        return Flow((self,))(context)


class StageChain(t.Generic[CONTEXT, OUT]):
    def __init__(self, first: FlowStage[CONTEXT, OUT]) -> None:
        self._stages: t.List[FlowStage[CONTEXT, OUT]] = []
        self._append(first)

    def _append(self, stage: FlowStage[CONTEXT, OUT]) -> None:
        if self._stages and isinstance(self._stages[-1], FinalStage):
            raise FinalStageError(self._stages[-1].name)
        if stage._linked:
            raise CannotRelinkStageError(stage.name)
        stage._linked = True
        self._stages.append(stage)

    def __rshift__(
        self, other: FlowStage[CONTEXT, OUT]
    ) -> "StageChain[CONTEXT, OUT]":
        self._append(other)
        return self

    @property
    def stages(self) -> t.Tuple[FlowStage[CONTEXT, OUT], ...]:
        return tuple(self._stages)

    def build(self) -> "Flow[CONTEXT, OUT]":
        return Flow(self._stages)


class Flow(BaseStage[CONTEXT, OUT]):
    """Runs stages in order until one of them ends the flow or hands it
    over. Stage exceptions become error results."""

    def __init__(self, stages: t.Sequence[FlowStage[CONTEXT, OUT]]) -> None:
        if not stages or not isinstance(stages[-1], FinalStage):
            raise IncompleteFlowError(
                " >> ".join(stage.name for stage in stages) or "empty flow"
            )
        self.stages = tuple(stages)

    def __call__(self, context: CONTEXT) -> Result[OUT]:
        for stage in self.stages:
            started = time.perf_counter()
            try:
                outcome = stage.step(context)
            except Exception as error:
                logger.exception(
                    "[%s] failed with exception", stage.name, exc_info=error
                )
                return Result.error(error)
            elapsed_ms = (time.perf_counter() - started) * 1000

            if outcome is None:
                logger.info("[%s] completed in %.1fms", stage.name, elapsed_ms)
            elif isinstance(outcome, Result):
                logger.info("[%s] completed in %.1fms", stage.name, elapsed_ms)
                logger.debug("[%s] result [%s]", stage.name, outcome)
                return outcome
            else:
                logger.info("[%s] rejected", stage.name)
                return outcome(context)

        raise IncompleteFlowError(self.stages[-1].name)


class FinalStage(FlowStage[CONTEXT, OUT], ABC):
    def step(self, context: CONTEXT) -> Result[OUT]:
        return self.finish(context)

    @abc.abstractmethod
    def finish(self, context: CONTEXT) -> Result[OUT]:
        raise NotImplementedError


@t.final
class FailStage(FinalStage[CONTEXT, OUT]):
    def __init__(self, exc: Exception) -> None:
        self._exc = exc

    def finish(self, context: CONTEXT) -> Result[OUT]:
        return Result.error(self._exc)


class GuardStage(FlowStage[CONTEXT, OUT]):
    """Goes on when `check` holds, otherwise hands the context to
    `on_failure`."""

    def __init__(self, *, on_failure: BaseStage[CONTEXT, OUT]) -> None:
        self._on_failure = on_failure

    def step(self, context: CONTEXT) -> t.Optional[BaseStage[CONTEXT, OUT]]:
        return None if self.check(context) else self._on_failure

    @abc.abstractmethod
    def check(self, context: CONTEXT) -> bool:
        raise NotImplementedError


class RunStage(FlowStage[CONTEXT, OUT]):
    def step(self, context: CONTEXT) -> None:
        self.run(context)

    @abc.abstractmethod
    def run(self, context: CONTEXT) -> None:
        raise NotImplementedError
