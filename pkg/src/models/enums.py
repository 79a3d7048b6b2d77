"""Enum для режимов голономии и меток идеалов."""

from enum import Enum


class HolonomyMode(str, Enum):
    """Какую голономию считаем."""

    HORIZONTAL = "horizontal"
    ADAPTED = "adapted"
    WAGNER = "wagner"


class HolonomyKind(str, Enum):
    """Weakly irreducible types of Lorentzian holonomy."""

    TYPE_1 = "1"
    TYPE_2 = "2"
    TYPE_3 = "3"
    TYPE_4 = "4"
    UNKNOWN = "unknown"


class IdealCase(str, Enum):
    """Cases of the codimension-one ideal classification."""

    CASE_1_1 = "1.1"
    CASE_1_2 = "1.2"
    CASE_1_3 = "1.3"
    CASE_2_1 = "2.1"
    CASE_2_2 = "2.2"
    CASE_2_3 = "2.3"
    CASE_3_1 = "3.1"
    CASE_3_2 = "3.2"
    CASE_4_1 = "4.1"
    CASE_4_2 = "4.2"
    CASE_4_3 = "4.3"

    @property
    def type_number(self) -> int:
        return int(self.value.split(".")[0])
