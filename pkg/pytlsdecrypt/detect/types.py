import enum
import re
import typing as t
from dataclasses import dataclass, field

from ..types import Direction


class RuleKind(str, enum.Enum):
    SUBSTR = "substr"
    REGEX = "regex"
    HEX = "hex"


class RuleDirection(str, enum.Enum):
    CLIENT_TO_SERVER = "c2s"
    SERVER_TO_CLIENT = "s2c"
    ANY = "any"

    def applies_to(self, direction: Direction) -> bool:
        return self is RuleDirection.ANY or self.value == direction.value


@dataclass(frozen=True)
class Rule:
    id: str
    direction: RuleDirection
    kind: RuleKind
    pattern: str
    description: str = ""
    needle: bytes = field(default=b"", repr=False, compare=False)
    regex: t.Optional["re.Pattern[bytes]"] = field(
        default=None, repr=False, compare=False
    )

    @property
    def is_literal(self) -> bool:
        return self.kind is not RuleKind.REGEX


@dataclass(frozen=True)
class RuleSet:
    rules: t.Tuple[Rule, ...] = ()
    problems: t.Tuple[t.Tuple[int, str], ...] = ()

    def __len__(self) -> int:
        return len(self.rules)

    def __iter__(self) -> t.Iterator[Rule]:
        return iter(self.rules)

    @property
    def max_literal_len(self) -> int:
        return max(
            (len(rule.needle) for rule in self.rules if rule.is_literal),
            default=0,
        )

    @property
    def has_regex(self) -> bool:
        return any(not rule.is_literal for rule in self.rules)


@dataclass(frozen=True)
class Alert:
    rule: str
    session_id: str
    direction: Direction
    offset: int
    excerpt: bytes
    ts: float
