"""JSON reports on stdout or a file, with a rich summary on stderr."""

import json
import sys
from pathlib import Path
from typing import Any, Optional

import numpy as np
from loguru import logger
from rich.console import Console
from rich.table import Table

from src.models.report import Report

console = Console(stderr=True)


def _jsonable(value: Any):
    if isinstance(value, np.ndarray):
        return value.tolist()
    if isinstance(value, (np.floating, np.integer, np.bool_)):
        return value.item()
    if isinstance(value, Path):
        return str(value)
    raise TypeError(f"not JSON serialisable: {type(value).__name__}")


def render(report: Report, include_timing: bool = True) -> str:
    """Report as JSON text; without timing the text depends only on inputs and seed."""
    data = report.model_dump(mode="python")
    if not include_timing:
        data.pop("timing", None)
    data["exit_code"] = report.exit_code
    data["status"] = report.status
    return json.dumps(data, indent=2, ensure_ascii=False, default=_jsonable) + "\n"


class ReportWriter:
    """Вывод отчёта: JSON в stdout или файл, сводка в stderr."""

    def __init__(self, out: Optional[Path] = None, include_timing: bool = True, quiet: bool = False):
        self.out = Path(out) if out else None
        self.include_timing = include_timing
        self.quiet = quiet

    def write(self, report: Report) -> Optional[Path]:
        """
        Returns:
            Path of the written file, or None when printed to stdout
        """
        text = render(report, self.include_timing)
        if self.out is None:
            sys.stdout.write(text)
            sys.stdout.flush()
            path = None
        else:
            self.out.parent.mkdir(parents=True, exist_ok=True)
            self.out.write_text(text, encoding="utf-8")
            logger.info(f"✓ Report written to {self.out}")
            path = self.out
        if not self.quiet:
            print_summary(report)
        return path


def print_summary(report: Report) -> None:
    table = Table(title=f"subholonomy {report.command}", show_header=True)
    table.add_column("Section", style="cyan")
    table.add_column("Status", style="green")
    table.add_column("tol", style="magenta")
    table.add_column("Time, s", style="yellow")

    for section in report.sections:
        status = {True: "✓", False: "✗", None: "·"}[section.passed]
        tol = f"{section.tol:.0e}" if section.tol is not None else ""
        seconds = report.timing.get(section.name)
        table.add_row(section.name, status, tol, f"{seconds:.2f}" if seconds is not None else "")

    console.print(table)
    if report.error is not None:
        console.print(f"[bold red]{report.error.code}[/bold red]: {report.error.message}")
    style = "bold green" if report.exit_code == 0 else "bold red"
    console.print(f"exit {report.exit_code} ({report.status})", style=style)
