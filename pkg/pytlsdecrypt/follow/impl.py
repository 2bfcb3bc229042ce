import os
import threading
import time
import typing as t
from logging import getLogger
from pathlib import Path

from .base import ITEM, BasePoller
from .exceptions import FileRemovedError

logger = getLogger(__name__)


class FileTail:
    """Reads a growing file from a remembered offset.

    The offset only moves when a consumer commits the bytes it fully
    used, so a half-written trailing unit is re-read on the next poll.
    """

    def __init__(
        self,
        path: t.Union[str, Path],
        *,
        on_restart: t.Optional[t.Callable[[], None]] = None,
    ) -> None:
        self._path = Path(path)
        self._on_restart = on_restart
        self._offset = 0
        self._identity: t.Optional[t.Tuple[int, int]] = None

    @property
    def path(self) -> Path:
        return self._path

    @property
    def offset(self) -> int:
        return self._offset

    def read_new(self) -> bytes:
        try:
            with self._path.open("rb") as fp:
                stat = os.fstat(fp.fileno())
                identity = (stat.st_dev, stat.st_ino)
                if self._identity is None:
                    self._identity = identity
                elif identity != self._identity or stat.st_size < self._offset:
                    logger.warning(
                        "[%s] truncated or replaced, restarting from offset 0",
                        self._path,
                    )
                    self._identity = identity
                    self._offset = 0
                    if self._on_restart is not None:
                        self._on_restart()
                fp.seek(self._offset)
                return fp.read()
        except FileNotFoundError as e:
            raise FileRemovedError(str(self._path)) from e

    def commit(self, consumed: int) -> None:
        self._offset += consumed


def poll_forever(
    poller: BasePoller[ITEM],
    poll_interval_ms: int,
    *,
    idle_polls: t.Optional[int] = None,
    stop: t.Optional[threading.Event] = None,
) -> t.Iterator[ITEM]:
    """Yields items as the poller produces them, sleeping between polls.

    Ends after `idle_polls` consecutive empty polls, or when `stop` is set.
    """
    if poll_interval_ms <= 0:
        raise ValueError("poll interval must be positive")

    idle = 0
    while stop is None or not stop.is_set():
        items = poller.poll()
        if items:
            idle = 0
            yield from items
        else:
            idle += 1
            if idle_polls is not None and idle >= idle_polls:
                return
        if stop is not None:
            stop.wait(poll_interval_ms / 1000)
        else:
            time.sleep(poll_interval_ms / 1000)
