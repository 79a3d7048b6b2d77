"""Report document emitted by every CLI command."""

from typing import Any, Dict, List, Optional

from pydantic import BaseModel, Field

from src.errors import SubholonomyError


class ErrorBlock(BaseModel):
    code: str
    message: str
    details: Dict[str, Any] = Field(default_factory=dict)
    exit_code: int = 2

    @classmethod
    def from_error(cls, error: SubholonomyError) -> "ErrorBlock":
        data = error.to_dict()
        return cls(
            code=data["code"],
            message=data["message"],
            details=data.get("details", {}),
            exit_code=error.exit_code,
        )


class ReportSection(BaseModel):
    """Одна секция отчёта; tol - допуск, с которым посчитаны числа секции."""

    name: str
    tol: Optional[float] = None
    passed: Optional[bool] = None
    data: Dict[str, Any] = Field(default_factory=dict)


class Report(BaseModel):
    command: str
    manifest_hash: Optional[str] = None
    seed: Optional[int] = None
    tolerances: Dict[str, float] = Field(default_factory=dict)
    timing: Dict[str, float] = Field(default_factory=dict)
    sections: List[ReportSection] = Field(default_factory=list)
    error: Optional[ErrorBlock] = None

    def add(self, section: ReportSection, seconds: Optional[float] = None) -> ReportSection:
        self.sections.append(section)
        if seconds is not None:
            self.timing[section.name] = round(seconds, 6)
        return section

    def section(self, name: str) -> Optional[ReportSection]:
        return next((s for s in self.sections if s.name == name), None)

    @property
    def failed(self) -> bool:
        return any(s.passed is False for s in self.sections)

    @property
    def exit_code(self) -> int:
        if self.error is not None:
            return self.error.exit_code
        return 1 if self.failed else 0

    @property
    def status(self) -> str:
        return {0: "ok", 1: "verification_failed", 2: "input_error"}[self.exit_code]
