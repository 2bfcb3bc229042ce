from pathlib import Path

import pytest

from pytlsdecrypt.keylog import (
    InMemoryKeyStore,
    KeyLogEntry,
    KeyLogFormatError,
    KeyLogLabel,
    KeyLogReadError,
    KeyLogStats,
    dump_keylog,
    ingest,
    load_keylog,
    parse_keylog_line,
)
from tests.keylog.corpus import (
    MALFORMED,
    Corpus,
    client_random,
    master_secret,
)


class TestParseKeyLogLine:
    def test_should_parse_client_random_line(
        self, entry: KeyLogEntry
    ) -> None:
        # when
        result = parse_keylog_line(entry.to_line() + "\r\n")
        # then
        assert result.get() == entry

    @pytest.mark.parametrize("hash_len", [32, 48])
    def test_should_parse_traffic_secrets(self, hash_len: int) -> None:
        # given
        line = (
            f"CLIENT_HANDSHAKE_TRAFFIC_SECRET {client_random(3).hex()} "
            f"{'11' * hash_len}"
        )
        # when
        entry = parse_keylog_line(line).get()
        # then
        assert entry.label is KeyLogLabel.CLIENT_HANDSHAKE_TRAFFIC_SECRET
        assert entry.secret == b"\x11" * hash_len

    def test_short_client_random_should_be_format_error(self) -> None:
        # when
        result = parse_keylog_line("CLIENT_RANDOM deadbeef cafe")
        # then
        assert result.is_error() is True
        assert isinstance(result.exception, KeyLogFormatError)
        assert result.reason == "client_random must be 64 hex chars"

    @pytest.mark.parametrize(
        "line, reason",
        [
            ("", "blank"),
            ("# comment", "comment"),
            (f"RSA {'ab' * 8} {'cd' * 48}", "rsa premaster"),
            (
                "EARLY_EXPORTER_SECRET aa bb",
                "unknown label EARLY_EXPORTER_SECRET",
            ),
        ],
    )
    def test_should_skip_non_entries(self, line: str, reason: str) -> None:
        # when
        result = parse_keylog_line(line)
        # then
        assert result.is_skipped() is True
        assert result.reason == reason

    @pytest.mark.parametrize("line", MALFORMED)
    def test_malformed_lines_should_be_errors(self, line: str) -> None:
        # when
        result = parse_keylog_line(line)
        # then
        assert result.is_error() is True
        assert isinstance(result.exception, KeyLogFormatError)

    def test_uppercase_hex_should_be_accepted(self) -> None:
        # given
        line = f"CLIENT_RANDOM {'AB' * 32} {'CD' * 48}"
        # when
        entry = parse_keylog_line(line).get()
        # then
        assert entry.client_random == b"\xab" * 32
        assert entry.to_line() == f"CLIENT_RANDOM {'ab' * 32} {'cd' * 48}"


class TestIngest:
    def test_mixed_lines_should_be_counted(self, entry: KeyLogEntry) -> None:
        # given
        other = KeyLogEntry(
            KeyLogLabel.CLIENT_RANDOM, client_random(2), master_secret(2)
        )
        third = KeyLogEntry(
            KeyLogLabel.CLIENT_TRAFFIC_SECRET_0, client_random(2), b"\x01" * 32
        )
        lines = [
            entry.to_line().encode(),
            b"# comment",
            other.to_line().encode(),
            b"CLIENT_RANDOM deadbeef cafe",
            third.to_line().encode(),
        ]
        store = InMemoryKeyStore()
        stats = KeyLogStats()
        # when
        added = ingest(store, stats, lines)
        # then
        assert (stats.accepted, stats.skipped, stats.errors) == (3, 1, 1)
        assert stats.error_lines == [
            (4, "client_random must be 64 hex chars")
        ]
        assert added == [entry, other, third]
        assert len(store) == 3

    def test_duplicate_entry_should_be_idempotent(
        self, entry: KeyLogEntry
    ) -> None:
        # given
        store = InMemoryKeyStore()
        stats = KeyLogStats()
        line = entry.to_line().encode()
        # when
        ingest(store, stats, [line, line])
        # then
        assert stats.accepted == 2
        assert stats.conflicts == 0
        assert len(store) == 1

    def test_conflicting_secret_should_keep_first(
        self, entry: KeyLogEntry
    ) -> None:
        # given
        store = InMemoryKeyStore()
        stats = KeyLogStats()
        rival = KeyLogEntry(entry.label, entry.client_random, bytes(48))
        # when
        lines = [entry.to_line().encode(), rival.to_line().encode()]
        ingest(store, stats, lines)
        # then
        assert stats.conflicts == 1
        assert store.find(entry.client_random, entry.label) == entry.secret
        assert store.conflicts == [rival]

    def test_invalid_utf8_should_be_format_error(self) -> None:
        # given
        stats = KeyLogStats()
        # when
        ingest(InMemoryKeyStore(), stats, [b"CLIENT_RANDOM \xff\xfe x"])
        # then
        assert stats.errors == 1


class TestLoadKeyLog:
    def test_corpus_should_load_with_exact_counters(
        self, tmp_path: Path, corpus: Corpus
    ) -> None:
        # given
        path = tmp_path / "keys.log"
        path.write_text(corpus.text)
        # when
        store, stats = load_keylog(path)
        # then
        assert stats.accepted == corpus.accepted
        assert stats.skipped == corpus.skipped
        assert stats.errors == corpus.errors
        assert stats.unknown_labels == corpus.unknown_labels
        assert stats.rsa_premaster == corpus.rsa_premaster
        assert stats.conflicts == 0
        assert len(store) == corpus.accepted
        assert len(stats.error_lines) == corpus.errors

    def test_missing_file_should_raise(self, tmp_path: Path) -> None:
        # when / then
        with pytest.raises(KeyLogReadError):
            load_keylog(tmp_path / "absent.log")

    def test_dump_should_reload_to_same_store(
        self, tmp_path: Path, corpus: Corpus
    ) -> None:
        # given
        path = tmp_path / "keys.log"
        path.write_text(corpus.text)
        store, _ = load_keylog(path)
        copy = tmp_path / "copy.log"
        # when
        copy.write_text(dump_keylog(store))
        reloaded, stats = load_keylog(copy)
        # then
        assert reloaded.entries() == store.entries()
        assert stats.skipped == stats.errors == 0
