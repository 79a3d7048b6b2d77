"""Exception hierarchy shared by every subpackage."""

from typing import Any, Dict, Optional


class SubholonomyError(Exception):
    """Базовая ошибка пакета: машиночитаемый код + детали для отчёта."""

    code = "error"
    exit_code = 2

    def __init__(self, message: str, details: Optional[Dict[str, Any]] = None):
        super().__init__(message)
        self.message = message
        self.details: Dict[str, Any] = details or {}

    def to_dict(self) -> Dict[str, Any]:
        """Представление для блока `error` в отчёте."""
        return {
            "code": self.code,
            "type": type(self).__name__,
            "message": self.message,
            "details": self.details,
        }


# ============================================================================
# INPUT ERRORS (exit 2)
# ============================================================================

class ExpressionError(SubholonomyError):
    code = "expression"


class ManifestError(SubholonomyError):
    code = "manifest"


class DimensionMismatchError(SubholonomyError):
    code = "dimension_mismatch"


class PoleError(SubholonomyError):
    code = "pole"


class NotContactError(SubholonomyError):
    code = "not_contact"


class MetricDegeneracyError(SubholonomyError):
    code = "metric_degenerate"


class NonHorizontalCurveError(SubholonomyError):
    code = "non_horizontal_curve"


class FlowExitError(SubholonomyError):
    code = "flow_exits_chart"


class ContainmentError(SubholonomyError):
    code = "not_contained"


class PreconditionError(SubholonomyError):
    code = "precondition"


class DescriptorError(SubholonomyError):
    code = "descriptor"


# ============================================================================
# NUMERICAL ERRORS (exit 2)
# ============================================================================

class ToleranceNotReachedError(SubholonomyError):
    code = "tolerance_not_reached"


class ClosureNotConvergedError(SubholonomyError):
    code = "closure_not_converged"


class InseparableBlocksError(SubholonomyError):
    code = "inseparable_blocks"


# ============================================================================
# VERIFICATION FAILURES (exit 1)
# ============================================================================

class VerificationFailure(SubholonomyError):
    code = "verification_failed"
    exit_code = 1


class ClassificationFailure(VerificationFailure):
    """An ideal matched none of the codimension-one cases."""

    code = "classification_failed"
