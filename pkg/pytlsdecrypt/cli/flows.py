import typing as t

from ..context import RunContext
from ..stage import Flow, FlowStage
from .exceptions import UsageError
from .stages import (
    CheckKeyLog,
    ConvertJvmDebug,
    DecryptCapture,
    FollowCapture,
    InspectCapture,
    LoadKeyLog,
    LoadRules,
    PrintInspection,
    PrintSummary,
    ReportMissingInputs,
    RequireInputs,
)

CommandFlow = Flow[RunContext, int]


def _guarded() -> FlowStage[RunContext, int]:
    return RequireInputs(on_failure=ReportMissingInputs())


def decrypt_flow() -> CommandFlow:
    return (
        _guarded()
        >> LoadKeyLog()
        >> LoadRules()
        >> DecryptCapture()
        >> PrintSummary()
    ).build()


def follow_flow() -> CommandFlow:
    return (
        _guarded() >> LoadRules() >> FollowCapture() >> PrintSummary()
    ).build()


def inspect_flow() -> CommandFlow:
    return (
        _guarded() >> LoadKeyLog() >> InspectCapture() >> PrintInspection()
    ).build()


def convert_jvm_flow() -> CommandFlow:
    return (_guarded() >> ConvertJvmDebug()).build()


def check_keys_flow() -> CommandFlow:
    return (_guarded() >> LoadKeyLog() >> CheckKeyLog()).build()


FLOWS: t.Dict[str, t.Callable[[], CommandFlow]] = {
    "decrypt": decrypt_flow,
    "follow": follow_flow,
    "inspect": inspect_flow,
    "keys convert-jvm": convert_jvm_flow,
    "keys check": check_keys_flow,
}


def build_flow(command: str) -> CommandFlow:
    try:
        return FLOWS[command]()
    except KeyError as e:
        raise UsageError(f"unknown command {command!r}") from e
