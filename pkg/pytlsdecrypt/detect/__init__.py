from .exceptions import DetectError, RuleFormatError, RuleLoadError
from .rules import (
    STARTER_RULES,
    compile_rule,
    load_rules,
    load_starter_rules,
    parse_rules,
)
from .scanner import EXCERPT_LEN, REGEX_WINDOW, StreamScanner, scan
from .types import Alert, Rule, RuleDirection, RuleKind, RuleSet

__all__ = (
    "DetectError",
    "RuleFormatError",
    "RuleLoadError",
    "STARTER_RULES",
    "compile_rule",
    "load_rules",
    "load_starter_rules",
    "parse_rules",
    "EXCERPT_LEN",
    "REGEX_WINDOW",
    "StreamScanner",
    "scan",
    "Alert",
    "Rule",
    "RuleDirection",
    "RuleKind",
    "RuleSet",
)
