import argparse
import ipaddress
import os
import typing as t
from pathlib import Path

from ..context import RunParams

ENV_OUT_DIR = "PYTLSDECRYPT_OUT_DIR"
ENV_POLL_MS = "PYTLSDECRYPT_POLL_MS"
ENV_LOG_LEVEL = "PYTLSDECRYPT_LOG_LEVEL"
DEFAULT_POLL_MS = 200


def _ports(value: str) -> t.FrozenSet[int]:
    try:
        ports = frozenset(int(p) for p in value.split(",") if p.strip())
    except ValueError as e:
        raise argparse.ArgumentTypeError(f"bad port list {value!r}") from e
    if not ports or any(not 0 < p < 65536 for p in ports):
        raise argparse.ArgumentTypeError(f"bad port list {value!r}")
    return ports


def _host(value: str) -> str:
    try:
        return str(ipaddress.ip_address(value))
    except ValueError as e:
        raise argparse.ArgumentTypeError(f"bad address {value!r}") from e


def _positive(value: str) -> int:
    try:
        number = int(value)
    except ValueError as e:
        raise argparse.ArgumentTypeError(f"not a number: {value!r}") from e
    if number <= 0:
        raise argparse.ArgumentTypeError(f"must be positive: {value!r}")
    return number


def _env_poll_ms() -> int:
    try:
        return int(os.environ.get(ENV_POLL_MS, DEFAULT_POLL_MS))
    except ValueError:
        return DEFAULT_POLL_MS


def _add_filters(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--ports",
        type=_ports,
        default=frozenset(),
        help="comma-separated TCP ports; flows on other ports are ignored",
    )
    parser.add_argument(
        "--host",
        dest="hosts",
        type=_host,
        action="append",
        default=[],
        help="only flows with this address at either end (repeatable)",
    )


def _add_outputs(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--out",
        type=Path,
        default=os.environ.get(ENV_OUT_DIR),
        help=f"output directory (env {ENV_OUT_DIR})",
    )
    parser.add_argument(
        "--rules",
        help="rule TSV file, or 'builtin' for the starter rules",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pytlsdecrypt",
        description=(
            "Decrypt TLS in packet captures with NSS session key logs."
        ),
    )
    parser.add_argument(
        "--log-level",
        default=os.environ.get(ENV_LOG_LEVEL, "WARNING"),
        choices=["DEBUG", "INFO", "WARNING", "ERROR"],
        type=str.upper,
        help=f"diagnostics on stderr (env {ENV_LOG_LEVEL})",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    decrypt = commands.add_parser("decrypt", help="decrypt a capture file")
    decrypt.add_argument("--pcap", type=Path, required=True)
    decrypt.add_argument("--keylog", type=Path, required=True)
    _add_outputs(decrypt)
    _add_filters(decrypt)
    decrypt.add_argument(
        "--max-pending",
        type=_positive,
        help="bytes of ciphertext buffered per session while keys are missing",
    )

    follow = commands.add_parser(
        "follow", help="decrypt growing capture and key log files"
    )
    follow.add_argument("--pcap", type=Path, required=True)
    follow.add_argument("--keylog", type=Path, required=True)
    _add_outputs(follow)
    _add_filters(follow)
    follow.add_argument(
        "--poll-ms",
        type=int,
        default=_env_poll_ms(),
        help=f"poll interval in milliseconds (env {ENV_POLL_MS})",
    )
    follow.add_argument(
        "--idle-polls",
        type=_positive,
        help="stop after this many polls without new input",
    )

    inspect = commands.add_parser(
        "inspect", help="list TLS sessions in a capture"
    )
    inspect.add_argument("--pcap", type=Path, required=True)
    inspect.add_argument(
        "--keylog", type=Path, help="also report whether keys are present"
    )
    _add_filters(inspect)

    keys = commands.add_parser("keys", help="key log utilities")
    key_commands = keys.add_subparsers(dest="keys_command", required=True)
    convert = key_commands.add_parser(
        "convert-jvm", help="convert JVM TLS debug output to NSS format"
    )
    convert.add_argument("--in", dest="jvm_in", type=Path, required=True)
    convert.add_argument("--out", dest="jvm_out", type=Path, required=True)
    check = key_commands.add_parser("check", help="validate a key log")
    check.add_argument("--keylog", type=Path, required=True)

    return parser


def params_from_args(
    parser: argparse.ArgumentParser, args: argparse.Namespace
) -> RunParams:
    command = args.command
    if command == "keys":
        command = f"keys {args.keys_command}"

    out_dir = getattr(args, "out", None)
    if command in ("decrypt", "follow") and out_dir is None:
        parser.error(f"--out is required (or set {ENV_OUT_DIR})")

    poll_ms = getattr(args, "poll_ms", None)
    if poll_ms is not None and poll_ms <= 0:
        parser.error("--poll-ms must be positive")

    return RunParams(
        command=command,
        pcap=getattr(args, "pcap", None),
        keylog=getattr(args, "keylog", None),
        out_dir=Path(out_dir) if out_dir is not None else None,
        rules=getattr(args, "rules", None),
        ports=getattr(args, "ports", frozenset()),
        hosts=frozenset(getattr(args, "hosts", ())),
        max_pending=getattr(args, "max_pending", None),
        poll_ms=poll_ms,
        jvm_in=getattr(args, "jvm_in", None),
        jvm_out=getattr(args, "jvm_out", None),
        idle_polls=getattr(args, "idle_polls", None),
    )
