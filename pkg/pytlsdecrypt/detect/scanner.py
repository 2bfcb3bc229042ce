import typing as t
from collections import defaultdict
from logging import getLogger

from ..events import DecryptedEvent
from ..types import Direction
from .types import Alert, Rule, RuleSet

logger = getLogger(__name__)

EXCERPT_LEN = 64
REGEX_WINDOW = 1024


class StreamScanner:
    """Matches rules over one direction's plaintext as it arrives.

    Literal rules alert as soon as their last byte is in. A regex match
    is final once `REGEX_WINDOW` bytes past its start have arrived, or
    when the stream is flushed. For regex matches up to `REGEX_WINDOW`
    bytes long the alerts equal those of one scan over the whole stream;
    a longer match alerts once, at its start.
    """

    def __init__(
        self, rules: RuleSet, session_id: str, direction: Direction
    ) -> None:
        self._session_id = session_id
        self._direction = direction
        applicable = [r for r in rules if r.direction.applies_to(direction)]
        self._literals = [r for r in applicable if r.regex is None]
        self._regexes = [
            (r, r.regex) for r in applicable if r.regex is not None
        ]
        self._keep = max(rules.max_literal_len - 1, 0)
        self._buf = b""
        self._base = 0
        # per regex rule: where the next search starts, and whether the
        # last match reached the end of the data seen so far
        self._resume = [0] * len(self._regexes)
        self._open = [False] * len(self._regexes)

    @property
    def stream_len(self) -> int:
        return self._base + len(self._buf)

    def feed(self, data: bytes, ts: float = 0.0) -> t.List[Alert]:
        seen_end = self.stream_len
        self._buf += data
        alerts = self._literal_alerts(seen_end, ts)
        if data:
            alerts.extend(self._regex_alerts(ts, final=False))
        self._trim()
        return self._report(alerts)

    def flush(self, ts: float = 0.0) -> t.List[Alert]:
        """Settles the regex matches held back for more data. Call once,
        when the stream has ended."""
        alerts = self._regex_alerts(ts, final=True)
        self._trim()
        return self._report(alerts)

    def _literal_alerts(self, seen_end: int, ts: float) -> t.List[Alert]:
        alerts = []
        for rule in self._literals:
            start = self._buf.find(rule.needle)
            while start != -1:
                end = start + len(rule.needle)
                if self._base + end > seen_end:
                    alerts.append(self._alert(rule, start, end, ts))
                start = self._buf.find(rule.needle, start + 1)
        return alerts

    def _regex_alerts(self, ts: float, *, final: bool) -> t.List[Alert]:
        stream_len = self.stream_len
        horizon = stream_len if final else stream_len - REGEX_WINDOW - 1
        alerts = []
        for i, (rule, regex) in enumerate(self._regexes):
            resume, was_open = self._resume[i], self._open[i]
            is_open = False
            matches = regex.finditer(self._buf, resume - self._base)
            for match in matches:
                start = self._base + match.start()
                end = self._base + match.end()
                if end == start:
                    continue
                grown = was_open and start == resume
                was_open = False
                if grown:
                    # the same run, grown by the new data
                    resume = end
                    is_open = not final and end == stream_len
                    continue
                if start >= horizon:
                    break
                alerts.append(
                    self._alert(rule, match.start(), match.end(), ts)
                )
                resume = end
                is_open = not final and end == stream_len
            self._resume[i] = max(resume, horizon)
            self._open[i] = is_open
        return alerts

    def _alert(self, rule: Rule, start: int, end: int, ts: float) -> Alert:
        return Alert(
            rule=rule.id,
            session_id=self._session_id,
            direction=self._direction,
            offset=self._base + start,
            excerpt=self._buf[start:end][:EXCERPT_LEN],
            ts=ts,
        )

    def _report(self, alerts: t.List[Alert]) -> t.List[Alert]:
        alerts.sort(key=lambda a: (a.offset, a.rule))
        for alert in alerts:
            logger.info(
                "[%s %s] rule %s at %d",
                alert.session_id,
                alert.direction.value,
                alert.rule,
                alert.offset,
            )
        return alerts

    def _trim(self) -> None:
        keep_from = self.stream_len - self._keep
        if self._regexes:
            keep_from = min(keep_from, min(self._resume) - REGEX_WINDOW)
        drop = keep_from - self._base
        if drop <= 0:
            return
        self._buf = self._buf[drop:]
        self._base += drop


def scan(
    events: t.Iterable[DecryptedEvent], rules: RuleSet
) -> t.List[Alert]:
    """Scans events of any number of sessions, one scanner per direction.
    Every scanner is flushed at the end."""
    scanners: t.Dict[t.Tuple[str, Direction], StreamScanner] = {}
    alerts: t.DefaultDict[t.Tuple[str, Direction], t.List[Alert]] = (
        defaultdict(list)
    )
    last_ts: t.Dict[t.Tuple[str, Direction], float] = {}
    for event in events:
        key = (event.session_id, event.direction)
        scanner = scanners.get(key)
        if scanner is None:
            scanner = scanners[key] = StreamScanner(rules, *key)
        alerts[key].extend(scanner.feed(event.payload, event.ts))
        last_ts[key] = event.ts
    for key, scanner in scanners.items():
        alerts[key].extend(scanner.flush(last_ts[key]))
    return [alert for key in alerts for alert in alerts[key]]
