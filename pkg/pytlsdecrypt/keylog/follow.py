import threading
import typing as t
from pathlib import Path

from ..follow import BasePoller, FileTail, poll_forever
from .parser import KeyLogStats, decode_line, split_lines
from .types import KeyLogEntry


class KeyLogFollower(BasePoller[KeyLogEntry]):
    """Parses lines appended to a key log, complete lines only."""

    def __init__(self, path: t.Union[str, Path]) -> None:
        self._tail = FileTail(path, on_restart=self._restart)
        self._line_no = 0
        self.stats = KeyLogStats()

    def _restart(self) -> None:
        self._line_no = 0

    def poll(self) -> t.List[KeyLogEntry]:
        data = self._tail.read_new()
        end = data.rfind(b"\n") + 1
        if not end:
            return []
        self._tail.commit(end)

        entries = []
        for raw in split_lines(data[:end]):
            self._line_no += 1
            result = decode_line(raw)
            self.stats.count(self._line_no, result)
            if result.is_ok():
                entries.append(result.get())
        return entries


def follow_keylog(
    path: t.Union[str, Path],
    poll_interval_ms: int,
    *,
    idle_polls: t.Optional[int] = None,
    stop: t.Optional[threading.Event] = None,
) -> t.Iterator[KeyLogEntry]:
    return poll_forever(
        KeyLogFollower(path),
        poll_interval_ms,
        idle_polls=idle_polls,
        stop=stop,
    )
