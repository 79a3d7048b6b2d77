"""Export module."""

from src.export.report_writer import ReportWriter, print_summary, render

__all__ = ["ReportWriter", "print_summary", "render"]
