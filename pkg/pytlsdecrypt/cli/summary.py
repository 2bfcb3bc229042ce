import typing as t
from collections import Counter
from dataclasses import dataclass, field

from ..detect import Alert
from ..events import SessionRecord
from ..types import SessionStatus


@dataclass
class RunSummary:
    records: t.List[SessionRecord] = field(default_factory=list)
    alerts: t.List[Alert] = field(default_factory=list)

    @property
    def tls_records(self) -> t.List[SessionRecord]:
        return [
            r for r in self.records if r.status is not SessionStatus.NOT_TLS
        ]

    def counts(self) -> t.Dict[SessionStatus, int]:
        counter = Counter(record.status for record in self.records)
        return {status: counter[status] for status in SessionStatus}

    @property
    def decrypted(self) -> int:
        return self.counts()[SessionStatus.DECRYPTED]

    def render(self) -> str:
        lines = [
            f"{status.value}: {count}"
            for status, count in self.counts().items()
            if count
        ]
        lines.append(f"alerts: {len(self.alerts)}")
        return "\n".join(lines)
