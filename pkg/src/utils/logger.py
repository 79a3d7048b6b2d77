"""Loguru configuration for CLI runs and tests.

Console records go to stderr; stdout belongs to JSON reports and manifests.
Every record carries a ``component`` extra (``-`` when unbound), so transport,
closure and classifier messages can be told apart in JSON mode.
"""

import sys
from pathlib import Path
from typing import Any, Dict, Optional, Union

from loguru import logger

CONSOLE_FORMAT = (
    "<green>{time:HH:mm:ss.SSS}</green> | "
    "<level>{level: <8}</level> | "
    "<magenta>{extra[component]: <10}</magenta> | "
    "<cyan>{name}</cyan>:<cyan>{function}</cyan> | "
    "<level>{message}</level>"
)
FILE_FORMAT = "{time:YYYY-MM-DD HH:mm:ss.SSS} | {level: <8} | {extra[component]} | {name}:{function}:{line} | {message}"


def _sink_options(level: str, fmt: str, serialize: bool) -> Dict[str, Any]:
    return {
        "level": level.upper(),
        "format": fmt,
        "serialize": serialize,
        "diagnose": False,
    }


def setup_logger(
    log_level: str = "INFO",
    log_file: Optional[Union[str, Path]] = None,
    rotation: str = "10 MB",
    retention: str = "7 days",
    format_string: Optional[str] = None,
    serialize: bool = False,
) -> None:
    """
    Replace all loguru sinks with a stderr sink and an optional rotating file.

    Args:
        log_level: DEBUG, INFO, WARNING, ERROR or CRITICAL
        log_file: file sink path; parent directories are created
        rotation: rotation threshold of the file sink
        retention: how long rotated files are kept
        format_string: overrides both console and file formats
        serialize: one JSON record per line on every sink
    """
    logger.remove()
    logger.configure(extra={"component": "-"})

    logger.add(
        sys.stderr,
        colorize=not serialize,
        backtrace=False,
        **_sink_options(log_level, format_string or CONSOLE_FORMAT, serialize),
    )

    if log_file:
        path = Path(log_file)
        path.parent.mkdir(parents=True, exist_ok=True)
        logger.add(
            path,
            rotation=rotation,
            retention=retention,
            backtrace=True,
            **_sink_options(log_level, format_string or FILE_FORMAT, serialize),
        )


def get_logger(component: Optional[str] = None):
    """Logger bound to ``component``, or the root logger."""
    return logger.bind(component=component) if component else logger
