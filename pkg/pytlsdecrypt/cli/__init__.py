from .exceptions import CliError, UsageError
from .flows import build_flow
from .main import exit_code_for, main
from .parser import build_parser, params_from_args
from .stages import (
    EXIT_KEY_ERRORS,
    EXIT_NONE_DECRYPTED,
    EXIT_OK,
    EXIT_USAGE,
)
from .summary import RunSummary

__all__ = (
    "CliError",
    "UsageError",
    "build_flow",
    "exit_code_for",
    "main",
    "build_parser",
    "params_from_args",
    "EXIT_KEY_ERRORS",
    "EXIT_NONE_DECRYPTED",
    "EXIT_OK",
    "EXIT_USAGE",
    "RunSummary",
)
