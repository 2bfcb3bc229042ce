import logging
import sys
import typing as t

from ..capture import CaptureError
from ..context import RunContext
from ..detect import RuleLoadError
from ..export import ExportError
from ..follow import FileRemovedError
from ..keylog import KeyLogReadError, NoSessionsFoundError
from .exceptions import UsageError
from .flows import build_flow
from .parser import build_parser, params_from_args
from .stages import EXIT_NONE_DECRYPTED, EXIT_USAGE

EXIT_INTERNAL = 1

_USAGE_ERRORS = (
    UsageError,
    OSError,
    CaptureError,
    KeyLogReadError,
    RuleLoadError,
    ExportError,
    FileRemovedError,
)


def exit_code_for(error: t.Optional[Exception]) -> int:
    if isinstance(error, NoSessionsFoundError):
        return EXIT_NONE_DECRYPTED
    if isinstance(error, _USAGE_ERRORS):
        return EXIT_USAGE
    return EXIT_INTERNAL


def configure_logging(level: str) -> None:
    logging.basicConfig(
        level=level,
        stream=sys.stderr,
        format="%(asctime)s %(levelname)s %(name)s %(message)s",
    )


def main(argv: t.Optional[t.Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        params = params_from_args(parser, args)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else EXIT_USAGE

    configure_logging(args.log_level)
    result = build_flow(params.command)(RunContext(params))

    if result.is_error():
        print(f"error: {result.reason}", file=sys.stderr)
        return exit_code_for(result.exception)
    return result.get()
