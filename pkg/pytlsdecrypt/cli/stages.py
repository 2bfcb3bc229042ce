import dataclasses
import ipaddress
import time
import typing as t
from logging import getLogger
from pathlib import Path

from ..capture import PcapFollower, PcapRecord, open_pcap
from ..context import (
    ArtifactSpec,
    ConsumesArtifacts,
    ProducesArtifacts,
    RunContext,
)
from ..detect import RuleSet, load_rules, load_starter_rules
from ..events import SessionRecord
from ..export import RunOutputs
from ..follow import BasePoller, poll_forever
from ..keylog import (
    InMemoryKeyStore,
    KeyLogEntry,
    KeyLogFollower,
    KeyLogLabel,
    KeyLogStats,
    NoSessionsFoundError,
    convert_jvm_debug,
    load_keylog,
)
from ..keyschedule import SUITES, suite_name
from ..pipeline import Pipeline, PipelineConfig
from ..result import Result
from ..stage import FinalStage, GuardStage, RunStage
from ..types import SessionStatus
from .exceptions import UsageError
from .summary import RunSummary

logger = getLogger(__name__)

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_NONE_DECRYPTED = 3
EXIT_KEY_ERRORS = 4

KEYSTORE = ArtifactSpec("keystore", InMemoryKeyStore)
KEYLOG_STATS = ArtifactSpec("keylog_stats", KeyLogStats)
RULES = ArtifactSpec("rules", RuleSet)
SUMMARY = ArtifactSpec("summary", RunSummary)

BUILTIN_RULES = "builtin"

_TLS13_LABELS = (
    KeyLogLabel.CLIENT_HANDSHAKE_TRAFFIC_SECRET,
    KeyLogLabel.SERVER_HANDSHAKE_TRAFFIC_SECRET,
    KeyLogLabel.CLIENT_TRAFFIC_SECRET_0,
    KeyLogLabel.SERVER_TRAFFIC_SECRET_0,
)

PATH = t.TypeVar("PATH")


def _required(value: t.Optional[PATH], flag: str) -> PATH:
    if value is None:
        raise UsageError(f"{flag} is required")
    return value


def _inputs(context: RunContext) -> t.List[Path]:
    params = context.params
    paths = [params.pcap, params.keylog, params.jvm_in]
    if params.rules and params.rules != BUILTIN_RULES:
        paths.append(Path(params.rules))
    return [path for path in paths if path is not None]


def pipeline_config(context: RunContext) -> PipelineConfig:
    params = context.params
    config = PipelineConfig(
        ports=params.ports,
        hosts=frozenset(ipaddress.ip_address(h) for h in params.hosts),
    )
    if params.max_pending is not None:
        config = dataclasses.replace(
            config, max_pending_session=params.max_pending
        )
    return config


class RequireInputs(GuardStage[RunContext, int]):
    def check(self, context: RunContext) -> bool:
        return all(path.is_file() for path in _inputs(context))


class ReportMissingInputs(FinalStage[RunContext, int]):
    def finish(self, context: RunContext) -> Result[int]:
        missing = [str(p) for p in _inputs(context) if not p.is_file()]
        return Result.error(UsageError(f"no such file: {', '.join(missing)}"))


class LoadKeyLog(RunStage[RunContext, int], ProducesArtifacts):
    @property
    def _produces(self) -> t.Set[ArtifactSpec[t.Any]]:
        return {KEYSTORE, KEYLOG_STATS}

    def run(self, context: RunContext) -> None:
        keylog = context.params.keylog
        if keylog is None:
            store, stats = InMemoryKeyStore(), KeyLogStats()
        else:
            store, stats = load_keylog(keylog)
        self.to(context).add(KEYSTORE(store), KEYLOG_STATS(stats))


class LoadRules(RunStage[RunContext, int], ProducesArtifacts):
    @property
    def _produces(self) -> t.Set[ArtifactSpec[t.Any]]:
        return {RULES}

    def run(self, context: RunContext) -> None:
        rules = context.params.rules
        if rules is None:
            rule_set = RuleSet()
        elif rules == BUILTIN_RULES:
            rule_set = load_starter_rules()
        else:
            rule_set = load_rules(rules)
        self.to(context).add(RULES(rule_set))


class DecryptCapture(
    RunStage[RunContext, int], ConsumesArtifacts, ProducesArtifacts
):
    @property
    def _consumes(self) -> t.Set[ArtifactSpec[t.Any]]:
        return {KEYSTORE, RULES}

    @property
    def _produces(self) -> t.Set[ArtifactSpec[t.Any]]:
        return {SUMMARY}

    def run(self, context: RunContext) -> None:
        artifacts = self.out_of(context)
        params = context.params
        pcap = _required(params.pcap, "--pcap")
        out_dir = _required(params.out_dir, "--out")

        pipeline = Pipeline(
            artifacts[KEYSTORE], pipeline_config(context), artifacts[RULES]
        )
        outputs = RunOutputs(out_dir)
        for record in open_pcap(pcap):
            outputs.emit(pipeline.feed(record))
        outputs.emit(pipeline.finish())
        outputs.finalize()

        self.to(context).add(
            SUMMARY(RunSummary(outputs.records, outputs.alerts))
        )


class FollowSources(BasePoller[t.Union[KeyLogEntry, PcapRecord]]):
    """Polls the key log before the capture, so a key and the records it
    unlocks that land in the same poll are handled together."""

    def __init__(self, pcap: Path, keylog: Path) -> None:
        self.keylog = KeyLogFollower(keylog)
        self.pcap = PcapFollower(pcap)

    def poll(self) -> t.List[t.Union[KeyLogEntry, PcapRecord]]:
        items: t.List[t.Union[KeyLogEntry, PcapRecord]] = []
        items.extend(self.keylog.poll())
        items.extend(self.pcap.poll())
        return items


class FollowCapture(
    RunStage[RunContext, int], ConsumesArtifacts, ProducesArtifacts
):
    @property
    def _consumes(self) -> t.Set[ArtifactSpec[t.Any]]:
        return {RULES}

    @property
    def _produces(self) -> t.Set[ArtifactSpec[t.Any]]:
        return {SUMMARY}

    def run(self, context: RunContext) -> None:
        artifacts = self.out_of(context)
        params = context.params
        sources = FollowSources(
            _required(params.pcap, "--pcap"),
            _required(params.keylog, "--keylog"),
        )
        poll_ms = _required(params.poll_ms, "--poll-ms")

        pipeline = Pipeline(
            InMemoryKeyStore(), pipeline_config(context), artifacts[RULES]
        )
        outputs = RunOutputs(_required(params.out_dir, "--out"), live=True)
        started = time.monotonic()
        try:
            for item in poll_forever(
                sources, poll_ms, idle_polls=params.idle_polls
            ):
                if isinstance(item, KeyLogEntry):
                    outputs.emit(pipeline.add_key(item))
                else:
                    outputs.emit(pipeline.feed(item))
        except KeyboardInterrupt:
            logger.info("interrupted, finalizing outputs")

        outputs.emit(pipeline.finish())
        outputs.finalize()
        logger.info("followed for %.1fs", time.monotonic() - started)

        self.to(context).add(
            SUMMARY(RunSummary(outputs.records, outputs.alerts))
        )


class InspectCapture(
    RunStage[RunContext, int], ConsumesArtifacts, ProducesArtifacts
):
    @property
    def _consumes(self) -> t.Set[ArtifactSpec[t.Any]]:
        return {KEYSTORE}

    @property
    def _produces(self) -> t.Set[ArtifactSpec[t.Any]]:
        return {SUMMARY}

    def run(self, context: RunContext) -> None:
        pcap = _required(context.params.pcap, "--pcap")
        pipeline = Pipeline(
            self.out_of(context)[KEYSTORE], pipeline_config(context)
        )
        for record in open_pcap(pcap):
            pipeline.feed(record)
        records = [
            event
            for event in pipeline.finish()
            if isinstance(event, SessionRecord)
        ]
        self.to(context).add(SUMMARY(RunSummary(records)))


class PrintSummary(FinalStage[RunContext, int], ConsumesArtifacts):
    @property
    def _consumes(self) -> t.Set[ArtifactSpec[t.Any]]:
        return {SUMMARY}

    def finish(self, context: RunContext) -> Result[int]:
        summary = self.out_of(context)[SUMMARY]
        print(summary.render())
        if summary.decrypted:
            return Result.ok(EXIT_OK)
        return Result.ok(EXIT_NONE_DECRYPTED)


def inspect_row(
    record: SessionRecord, store: t.Optional[InMemoryKeyStore] = None
) -> str:
    suite = SUITES.get(record.cipher_id) if record.cipher_id else None
    if record.status is SessionStatus.UNSUPPORTED_SUITE:
        verdict = "unsupported_suite"
    elif suite is not None:
        verdict = "supported"
    else:
        verdict = "incomplete"

    columns = [
        record.id,
        f"{record.src} -> {record.dst}",
        record.version or "-",
        record.cipher or "-",
        suite_name(record.cipher_id) if record.cipher_id is not None else "-",
        f"sni={record.sni or '-'}",
        verdict,
    ]
    if store is not None:
        columns.append(f"key: {'yes' if has_keys(record, store) else 'no'}")
    return "  ".join(columns)


def has_keys(record: SessionRecord, store: InMemoryKeyStore) -> bool:
    suite = SUITES.get(record.cipher_id) if record.cipher_id else None
    if record.client_random is None:
        return False
    if suite is not None and suite.tls13:
        labels: t.Iterable[KeyLogLabel] = _TLS13_LABELS
    else:
        labels = (KeyLogLabel.CLIENT_RANDOM,)
    return all(store.exists(record.client_random, label) for label in labels)


class PrintInspection(FinalStage[RunContext, int], ConsumesArtifacts):
    @property
    def _consumes(self) -> t.Set[ArtifactSpec[t.Any]]:
        return {SUMMARY, KEYSTORE}

    def finish(self, context: RunContext) -> Result[int]:
        artifacts = self.out_of(context)
        store = artifacts[KEYSTORE] if context.params.keylog else None
        for record in artifacts[SUMMARY].tls_records:
            print(inspect_row(record, store))
        return Result.ok(EXIT_OK)


class ConvertJvmDebug(FinalStage[RunContext, int]):
    def finish(self, context: RunContext) -> Result[int]:
        params = context.params
        source = _required(params.jvm_in, "--in")
        target = _required(params.jvm_out, "--out")

        try:
            conversion = convert_jvm_debug(
                source.read_text(encoding="utf-8", errors="replace")
            )
        except NoSessionsFoundError as e:
            print("accepted: 0\ndropped: 0")
            return Result.error(e)
        target.write_text(conversion.text, encoding="utf-8")

        print(f"accepted: {len(conversion.entries)}")
        print(f"dropped: {len(conversion.dropped)}")
        for reason in conversion.dropped:
            print(f"  {reason}")
        if conversion.entries:
            return Result.ok(EXIT_OK)
        return Result.ok(EXIT_NONE_DECRYPTED)


class CheckKeyLog(FinalStage[RunContext, int], ConsumesArtifacts):
    @property
    def _consumes(self) -> t.Set[ArtifactSpec[t.Any]]:
        return {KEYSTORE, KEYLOG_STATS}

    def finish(self, context: RunContext) -> Result[int]:
        artifacts = self.out_of(context)
        stats = artifacts[KEYLOG_STATS]
        print(f"accepted: {stats.accepted}")
        print(f"skipped: {stats.skipped}")
        print(f"errors: {stats.errors}")
        print(f"conflicts: {stats.conflicts}")
        print(f"unknown labels: {stats.unknown_labels}")
        print(f"rsa premaster: {stats.rsa_premaster}")
        print(f"entries: {len(artifacts[KEYSTORE])}")
        for line_no, reason in stats.error_lines:
            print(f"line {line_no}: {reason}")
        return Result.ok(EXIT_KEY_ERRORS if stats.errors else EXIT_OK)
