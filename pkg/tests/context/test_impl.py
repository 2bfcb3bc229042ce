from dataclasses import dataclass

import pytest

from pytlsdecrypt.context import (
    ArtifactCannotBeOverriddenError,
    ArtifactIsNotProducedError,
    ArtifactSpec,
    ProducesArtifacts,
    RunContext,
    RunParams,
)


@dataclass(frozen=True)
class FakeComplexType:
    fake_field: int


FakeArtifactOne = ArtifactSpec("fake_artifact_one", FakeComplexType)
FakeArtifactTwo = ArtifactSpec("fake_artifact_two", FakeComplexType)


class TestRunContext:
    @pytest.fixture
    def context(self) -> RunContext:
        return RunContext(params=RunParams(command="decrypt"))

    def test_should_properly_add_and_get_artifacts(
        self, context: RunContext
    ) -> None:
        # given
        complex_obj_one = FakeComplexType(fake_field=123)
        complex_obj_two = FakeComplexType(fake_field=456)
        # when
        context.add(
            FakeArtifactOne(complex_obj_one), FakeArtifactTwo(complex_obj_two)
        )
        # then
        artifacts = context.get(FakeArtifactOne, FakeArtifactTwo)
        assert artifacts[FakeArtifactOne] == complex_obj_one
        assert artifacts[FakeArtifactTwo] == complex_obj_two
        assert context.has(FakeArtifactOne) is True

    def test_add_should_raise_if_duplicated_artifact_added(
        self, context: RunContext
    ) -> None:
        # given
        artifact = FakeArtifactOne(FakeComplexType(fake_field=123))
        # when / then
        with pytest.raises(ArtifactCannotBeOverriddenError):
            context.add(artifact, artifact)

    def test_get_should_raise_if_no_artifact_exists(
        self, context: RunContext
    ) -> None:
        # given / when / then
        with pytest.raises(ArtifactIsNotProducedError):
            context.get(FakeArtifactOne)
        assert context.has(FakeArtifactOne) is False

    def test_producer_should_raise_if_declared_artifact_is_missing(
        self, context: RunContext
    ) -> None:
        # given
        class Producer(ProducesArtifacts):
            _produces = {FakeArtifactOne, FakeArtifactTwo}

        # when / then
        with pytest.raises(ArtifactIsNotProducedError):
            Producer().to(context).add(
                FakeArtifactOne(FakeComplexType(fake_field=1))
            )
