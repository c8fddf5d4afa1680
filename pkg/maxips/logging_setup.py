"""Logging configuration for the command line."""

import logging

from rich.console import Console
from rich.logging import RichHandler

_VERBOSITY = {0: None, 1: "INFO", 2: "DEBUG"}


def resolve_level(configured: str, verbose: int) -> str:
    """``-v`` raises the configured level to INFO, ``-vv`` to DEBUG."""
    override = _VERBOSITY.get(min(verbose, 2))
    return override or configured.upper()


def setup_logging(level: str = "WARNING", timestamps: bool = False) -> None:
    handler = RichHandler(
        console=Console(stderr=True),
        show_time=timestamps,
        show_path=False,
        rich_tracebacks=True,
    )
    root = logging.getLogger("maxips")
    for existing in list(root.handlers):
        root.removeHandler(existing)
    root.addHandler(handler)
    root.setLevel(getattr(logging, level.upper(), logging.WARNING))
    root.propagate = False
