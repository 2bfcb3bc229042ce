import re
import typing as t
from logging import getLogger
from pathlib import Path

from .exceptions import RuleFormatError, RuleLoadError
from .types import Rule, RuleDirection, RuleKind, RuleSet

logger = getLogger(__name__)

STARTER_RULES = Path(__file__).with_name("starter_rules.tsv")
_HEX = re.compile(r"(?:[0-9a-fA-F]{2})+")


def compile_rule(
    id: str,
    direction: str,
    kind: str,
    pattern: str,
    description: str = "",
) -> Rule:
    if not id or any(c.isspace() for c in id):
        raise RuleFormatError(f"bad rule id {id!r}")
    try:
        rule_direction = RuleDirection(direction)
    except ValueError as e:
        raise RuleFormatError(f"bad direction {direction!r}") from e
    try:
        rule_kind = RuleKind(kind)
    except ValueError as e:
        raise RuleFormatError(f"bad kind {kind!r}") from e
    if not pattern:
        raise RuleFormatError("empty pattern")

    if rule_kind is RuleKind.HEX:
        if not _HEX.fullmatch(pattern):
            raise RuleFormatError("hex pattern must be even-length hex")
        return Rule(
            id,
            rule_direction,
            rule_kind,
            pattern,
            description,
            needle=bytes.fromhex(pattern),
        )
    if rule_kind is RuleKind.SUBSTR:
        return Rule(
            id,
            rule_direction,
            rule_kind,
            pattern,
            description,
            needle=pattern.encode("utf-8"),
        )
    try:
        regex = re.compile(pattern.encode("utf-8"))
    except re.error as e:
        raise RuleFormatError(f"regex does not compile: {e}") from e
    return Rule(
        id, rule_direction, rule_kind, pattern, description, regex=regex
    )


def parse_rules(text: str) -> RuleSet:
    rules: t.List[Rule] = []
    problems: t.List[t.Tuple[int, str]] = []
    seen: t.Set[str] = set()

    for line_no, line in enumerate(text.splitlines(), start=1):
        if not line.strip() or line.startswith("#"):
            continue
        fields = line.split("\t")
        if len(fields) == 4:
            fields.append("")
        try:
            if len(fields) != 5:
                raise RuleFormatError(
                    f"expected 5 tab-separated fields, got {len(fields)}"
                )
            rule = compile_rule(*fields)
            if rule.id in seen:
                raise RuleFormatError(f"duplicate rule id {rule.id}")
        except RuleFormatError as e:
            logger.warning("rule line %d dropped: %s", line_no, e)
            problems.append((line_no, str(e)))
            continue
        seen.add(rule.id)
        rules.append(rule)

    if not rules:
        logger.warning("rule set is empty")
    return RuleSet(tuple(rules), tuple(problems))


def load_rules(path: t.Union[str, Path]) -> RuleSet:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as e:
        raise RuleLoadError(f"{path}: {e}") from e
    rule_set = parse_rules(text)
    logger.info(
        "[%s] %d rules loaded, %d dropped",
        path,
        len(rule_set),
        len(rule_set.problems),
    )
    return rule_set


def load_starter_rules() -> RuleSet:
    return load_rules(STARTER_RULES)
