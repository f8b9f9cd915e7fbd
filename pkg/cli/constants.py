from typing import Literal

DEFAULT_MAX_DEPTH = 4
DEFAULT_STEP_BUDGET = 10**6
DEFAULT_PARALLELISM = 1
SCHEMA_VERSION = "1"

COMMANDS = ("catalog", "unify", "overlaps", "diagrams")
OUTPUT_FORMATS = ("json", "text")
RULE_KINDS = ("transformation", "no")

Command = Literal["catalog", "unify", "overlaps", "diagrams"]
OutputFormat = Literal["json", "text"]

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_BUDGET = 2
