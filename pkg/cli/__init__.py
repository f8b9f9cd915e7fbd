from .commands import (
    COMMANDS,
    cmd_catalog,
    cmd_diagrams,
    cmd_overlaps,
    cmd_unify,
    run_command,
)
from .constants import (
    DEFAULT_MAX_DEPTH,
    DEFAULT_STEP_BUDGET,
    EXIT_BUDGET,
    EXIT_OK,
    EXIT_USAGE,
    SCHEMA_VERSION,
)
from .run_config import RunConfig, construct_run_config, dump_config

__all__ = [
    "RunConfig",
    "construct_run_config",
    "dump_config",
    "COMMANDS",
    "cmd_catalog",
    "cmd_unify",
    "cmd_overlaps",
    "cmd_diagrams",
    "run_command",
    "DEFAULT_MAX_DEPTH",
    "DEFAULT_STEP_BUDGET",
    "SCHEMA_VERSION",
    "EXIT_OK",
    "EXIT_USAGE",
    "EXIT_BUDGET",
]
