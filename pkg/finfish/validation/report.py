from fractions import Fraction
from typing import Any, Dict, List, Optional

from pydantic import BaseModel, ConfigDict, Field


class SuiteFailure(BaseModel):
    check: str
    key: List[Any] = Field(default_factory=list)
    expected: Optional[str] = None
    actual: Optional[str] = None


class SuiteReport(BaseModel):
    """Outcome of one validation suite; serializes with a ``pass`` key."""

    model_config = ConfigDict(populate_by_name=True)

    suite: str
    params: Dict[str, Any] = Field(default_factory=dict)
    passed: bool = Field(True, alias="pass")
    checked: int = 0
    failure: Optional[SuiteFailure] = None
    notes: Dict[str, Any] = Field(default_factory=dict)
    seconds: float = 0.0

    def to_json(self) -> str:
        return self.model_dump_json(by_alias=True, exclude_none=True)


class AreaRow(BaseModel):
    size: int
    fish: int
    total_area: int
    mean_area: str
    ratio: str
    slope: Optional[float] = None


class AreaReport(BaseModel):
    rows: List[AreaRow]
    means_increasing: bool
    ratios_increasing: bool


class Tally:
    """Collects checks for one suite and keeps the smallest failing key."""

    def __init__(self):
        self.checked = 0
        self.failure: Optional[SuiteFailure] = None

    def compare(self, check: str, key, expected, actual) -> bool:
        self.checked += 1
        if expected == actual:
            return True
        key = list(key) if isinstance(key, (tuple, list)) else [key]
        candidate = SuiteFailure(check=check, key=key, expected=_show(expected), actual=_show(actual))
        if self.failure is None or _order(candidate) < _order(self.failure):
            self.failure = candidate
        return False

    def series(self, check: str, left, right) -> bool:
        """Compare two truncated series; a mismatch is keyed by (t order, y, a, b, u)."""
        diff = left.first_difference(right)
        if diff is None:
            self.checked += 1
            return True
        k, mono, lhs, rhs = diff
        return self.compare(check, (k, *mono), rhs, lhs)

    def require(self, check: str, key, condition: bool, detail: str = "") -> bool:
        return self.compare(check, key, True, condition if condition else (detail or False))

    @property
    def passed(self) -> bool:
        return self.failure is None


def _show(value) -> str:
    if isinstance(value, Fraction) and value.denominator == 1:
        return str(value.numerator)
    return str(value)


def _order(failure: SuiteFailure):
    key = [(0, k) if isinstance(k, int) else (1, str(k)) for k in failure.key]
    return (key, failure.check)
