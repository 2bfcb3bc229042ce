import argparse
import typing as t
from pathlib import Path

import pytest

from pytlsdecrypt.cli import build_parser, params_from_args
from pytlsdecrypt.cli.parser import ENV_OUT_DIR, ENV_POLL_MS
from pytlsdecrypt.context import RunParams

DECRYPT = ("decrypt", "--pcap", "a", "--keylog", "k", "--out", "o")
FOLLOW = ("follow", "--pcap", "a", "--keylog", "k", "--out", "o")


def parse(*argv: str) -> RunParams:
    parser = build_parser()
    return params_from_args(parser, parser.parse_args(argv))


class TestParser:
    @pytest.fixture(autouse=True)
    def clean_environment(self, monkeypatch: pytest.MonkeyPatch) -> None:
        monkeypatch.delenv(ENV_OUT_DIR, raising=False)
        monkeypatch.delenv(ENV_POLL_MS, raising=False)

    def test_decrypt_should_collect_filters(self) -> None:
        # when
        params = parse(
            "decrypt",
            "--pcap",
            "a.pcap",
            "--keylog",
            "k.log",
            "--out",
            "out",
            "--ports",
            "443,8443",
            "--host",
            "10.0.0.2",
            "--max-pending",
            "4096",
        )
        # then
        assert params.command == "decrypt"
        assert params.pcap == Path("a.pcap")
        assert params.out_dir == Path("out")
        assert params.ports == frozenset({443, 8443})
        assert params.hosts == frozenset({"10.0.0.2"})
        assert params.max_pending == 4096
        assert params.rules is None

    def test_keys_subcommand_should_join_command_name(self) -> None:
        # when
        params = parse("keys", "convert-jvm", "--in", "a.txt", "--out", "b")
        # then
        assert params.command == "keys convert-jvm"
        assert params.jvm_in == Path("a.txt")
        assert params.jvm_out == Path("b")

    @pytest.mark.parametrize(
        "argv",
        [
            ("decrypt", "--pcap", "a", "--keylog", "k"),
            (*DECRYPT, "--ports", "0"),
            (*DECRYPT, "--ports", "443,x"),
            (*DECRYPT, "--host", "example.com"),
            (*DECRYPT, "--max-pending", "0"),
            (*FOLLOW, "--poll-ms", "0"),
            ("inspect",),
        ],
    )
    def test_bad_arguments_should_exit_with_usage(
        self, argv: t.Tuple[str, ...]
    ) -> None:
        with pytest.raises(SystemExit) as exc_info:
            parse(*argv)
        assert exc_info.value.code == 2

    def test_environment_should_supply_defaults(
        self, monkeypatch: pytest.MonkeyPatch
    ) -> None:
        # given
        monkeypatch.setenv(ENV_OUT_DIR, "/tmp/from-env")
        monkeypatch.setenv(ENV_POLL_MS, "50")
        # when
        params = parse("follow", "--pcap", "a", "--keylog", "k")
        # then
        assert params.out_dir == Path("/tmp/from-env")
        assert params.poll_ms == 50

    def test_flag_should_override_environment(
        self, monkeypatch: pytest.MonkeyPatch
    ) -> None:
        # given
        monkeypatch.setenv(ENV_POLL_MS, "50")
        # when
        params = parse(*FOLLOW, "--poll-ms", "7")
        # then
        assert params.poll_ms == 7

    def test_parser_should_be_argparse(self) -> None:
        assert isinstance(build_parser(), argparse.ArgumentParser)
