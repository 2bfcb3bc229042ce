import logging
import typing as t
from unittest.mock import Mock

import pytest

from pytlsdecrypt.context import (
    ArtifactSpec,
    ConsumesArtifacts,
    ProducesArtifacts,
    RunContext,
    RunParams,
)
from pytlsdecrypt.result import Result
from pytlsdecrypt.stage import (
    CannotRelinkStageError,
    FailStage,
    FinalStage,
    FinalStageError,
    Flow,
    FlowStage,
    GuardStage,
    IncompleteFlowError,
    RunStage,
)

Greeting = ArtifactSpec("greeting", str)


class Noop(RunStage[RunContext, str]):
    def run(self, context: RunContext) -> None:
        pass


class ProduceGreeting(RunStage[RunContext, str], ProducesArtifacts):
    _produces = {Greeting}

    def run(self, context: RunContext) -> None:
        self.to(context).add(Greeting(f"hello {context.params.command}"))


class RequireDecrypt(GuardStage[RunContext, str], ConsumesArtifacts):
    _consumes = {Greeting}

    def check(self, context: RunContext) -> bool:
        return bool(self.out_of(context)[Greeting] == "hello decrypt")


class ReturnGreeting(FinalStage[RunContext, str], ConsumesArtifacts):
    _consumes = {Greeting}

    def finish(self, context: RunContext) -> Result[str]:
        return Result.ok(self.out_of(context)[Greeting])


def decrypt_context() -> RunContext:
    return RunContext(RunParams(command="decrypt"))


class TestStageChain:
    def test_rshift_should_collect_stages_in_order(self) -> None:
        # given
        first, second, last = Noop(), Noop(), ReturnGreeting()
        # when
        chain = first >> second >> last
        # then
        assert chain.stages == (first, second, last)

    def test_rshift_should_raise_on_relink(self) -> None:
        # given
        stage1 = Noop()
        stage2 = Noop()
        # when / then
        with pytest.raises(CannotRelinkStageError):
            stage1 >> stage2 >> stage1

    def test_stage_should_not_join_two_chains(self) -> None:
        # given
        shared = Noop()
        Noop() >> shared
        # when / then
        with pytest.raises(CannotRelinkStageError):
            Noop() >> shared

    def test_final_stage_rshift_should_raise(self) -> None:
        # given
        final = FailStage[RunContext, str](exc=Exception("test"))
        # when / then
        with pytest.raises(FinalStageError):
            final >> Noop()

    def test_build_should_return_flow_over_chain(self) -> None:
        # given
        first, last = Noop(), ReturnGreeting()
        # when
        flow = (first >> last).build()
        # then
        assert isinstance(flow, Flow)
        assert flow.stages == (first, last)

    @pytest.mark.parametrize(
        "stages",
        [
            pytest.param([], id="empty"),
            pytest.param([Noop()], id="single run stage"),
            pytest.param([ReturnGreeting(), Noop()], id="final not last"),
        ],
    )
    def test_flow_should_require_final_stage_last(
        self, stages: t.List[FlowStage[RunContext, str]]
    ) -> None:
        # when / then
        with pytest.raises(IncompleteFlowError):
            Flow(stages)

    def test_build_should_raise_when_chain_is_open(self) -> None:
        # when / then
        with pytest.raises(IncompleteFlowError):
            (Noop() >> ProduceGreeting()).build()


class TestFlow:
    def test_flow_should_pass_artifacts_between_stages(self) -> None:
        # given
        flow = (
            ProduceGreeting()
            >> RequireDecrypt(on_failure=FailStage(exc=Exception("rejected")))
            >> ReturnGreeting()
        ).build()
        passed = decrypt_context()
        rejected = RunContext(RunParams(command="inspect"))
        # when
        passed_result = flow(passed)
        rejected_result = flow(rejected)
        # then
        assert passed_result.get() == "hello decrypt"
        assert rejected_result.is_error() is True
        assert rejected_result.reason == "rejected"

    def test_rejected_guard_should_hand_context_to_failure_stage(
        self,
    ) -> None:
        # given
        on_failure = Mock(return_value=Result.ok("fallback"))
        after_guard = Mock(spec=ReturnGreeting)

        class Rejecting(GuardStage[RunContext, str]):
            def check(self, context: RunContext) -> bool:
                return False

        flow = Flow([Rejecting(on_failure=on_failure), after_guard])
        context = decrypt_context()
        # when
        result = flow(context)
        # then
        assert result.get() == "fallback"
        on_failure.assert_called_once_with(context)
        after_guard.step.assert_not_called()

    def test_run_stage_should_turn_exceptions_into_error_results(
        self,
    ) -> None:
        # given
        error = RuntimeError("boom")

        class Exploding(RunStage[RunContext, str]):
            def run(self, context: RunContext) -> None:
                raise error

        flow = (Exploding() >> ReturnGreeting()).build()
        # when
        result = flow(decrypt_context())
        # then
        assert result.exception is error

    def test_guard_stage_should_turn_exceptions_into_error_results(
        self,
    ) -> None:
        # given
        class Exploding(GuardStage[RunContext, str]):
            def check(self, context: RunContext) -> bool:
                raise KeyError("missing")

        flow = (
            Exploding(on_failure=FailStage(exc=Exception()))
            >> ReturnGreeting()
        ).build()
        # when
        result = flow(decrypt_context())
        # then
        assert result.is_error() is True
        assert isinstance(result.exception, KeyError)

    def test_flow_should_log_each_completed_stage(
        self, caplog: pytest.LogCaptureFixture
    ) -> None:
        # given
        flow = (ProduceGreeting() >> ReturnGreeting()).build()
        # when
        with caplog.at_level(logging.INFO, logger="pytlsdecrypt.stage"):
            flow(decrypt_context())
        # then
        completed = [
            r.getMessage()
            for r in caplog.records
            if "completed in" in r.getMessage()
        ]
        assert len(completed) == 2
        assert completed[0].startswith("[ProduceGreeting]")
        assert completed[1].startswith("[ReturnGreeting]")

    def test_final_stage_should_run_on_its_own(self) -> None:
        # given
        stage = FailStage[RunContext, str](exc=ValueError("alone"))
        # when
        result = stage(decrypt_context())
        # then
        assert result.reason == "alone"

    def test_run_stage_should_not_run_on_its_own(self) -> None:
        # given
        stage = ProduceGreeting()
        # when / then
        with pytest.raises(IncompleteFlowError):
            stage(decrypt_context())
