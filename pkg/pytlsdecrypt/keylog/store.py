import threading
import typing as t
from logging import getLogger

from .base import AddOutcome, BaseKeyStore
from .types import KeyLogEntry, KeyLogLabel

logger = getLogger(__name__)


class InMemoryKeyStore(BaseKeyStore):
    """Secrets by (client_random, label), first entry wins.

    One writer and any number of readers; each secret is published as a
    whole under the lock.
    """

    def __init__(self, entries: t.Iterable[KeyLogEntry] = ()) -> None:
        self._lock = threading.RLock()
        self._secrets: t.Dict[t.Tuple[bytes, KeyLogLabel], bytes] = {}
        self._journal: t.List[KeyLogEntry] = []
        self._conflicts: t.List[KeyLogEntry] = []
        self.add_all(entries)

    def add(self, entry: KeyLogEntry) -> AddOutcome:
        key = (entry.client_random, entry.label)
        with self._lock:
            known = self._secrets.get(key)
            if known is None:
                self._secrets[key] = entry.secret
                self._journal.append(entry)
                return AddOutcome.ADDED
            if known == entry.secret:
                return AddOutcome.DUPLICATE
            self._conflicts.append(entry)

        logger.warning(
            "[%s] conflicting %s secret ignored",
            entry.client_random.hex(),
            entry.label.value,
        )
        return AddOutcome.CONFLICT

    def find(
        self, client_random: bytes, label: KeyLogLabel
    ) -> t.Optional[bytes]:
        with self._lock:
            return self._secrets.get((client_random, label))

    def exists(self, client_random: bytes, label: KeyLogLabel) -> bool:
        return self.find(client_random, label) is not None

    def entries(self) -> t.List[KeyLogEntry]:
        with self._lock:
            return list(self._journal)

    @property
    def conflicts(self) -> t.List[KeyLogEntry]:
        with self._lock:
            return list(self._conflicts)

    def __len__(self) -> int:
        with self._lock:
            return len(self._secrets)
