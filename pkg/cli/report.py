"""
Verification report: one record per checked criterion, each stamped with the grid and config hash.
"""
from dataclasses import asdict, dataclass, field
from typing import Any, Dict, List, Optional

import pandas as pd

from utils.logger import get_logger

logger = get_logger(__name__)


@dataclass(frozen=True)
class Criterion:
    """
    A single pass/fail (or informational) measurement.

    Attributes:
        name: Criterion identifier, e.g. "unitarity"
        value: Measured quantity
        threshold: Upper bound the value must respect; None for informational records
        passed: Outcome; None for informational records
        energy: λ the measurement belongs to, None for run-level checks
        grid: "n_r x n_theta x n_phi @ R_max" of the grid that produced it
        details: Extra values kept for the report (JSON-serializable)
    """
    name: str
    value: Optional[float]
    threshold: Optional[float]
    passed: Optional[bool]
    energy: Optional[float]
    grid: str
    config_hash: str
    details: Dict[str, Any] = field(default_factory=dict)

    @property
    def informational(self) -> bool:
        return self.passed is None


@dataclass
class VerificationReport:
    config_hash: str
    criteria: List[Criterion] = field(default_factory=list)
    errors: List[Dict[str, Any]] = field(default_factory=list)

    def add(self, name: str, value: Optional[float], threshold: Optional[float] = None, *,
            energy: Optional[float] = None, grid: str = "", passed: Optional[bool] = None,
            **details) -> Criterion:
        """
        Record a criterion. Without an explicit outcome, a value is checked as value <= threshold.
        """
        if passed is None and threshold is not None and value is not None:
            passed = bool(value <= threshold)
        elif passed is not None:
            passed = bool(passed)
        criterion = Criterion(name, None if value is None else float(value), threshold, passed,
                              energy, grid, self.config_hash, dict(details))
        self.criteria.append(criterion)

        where = "" if energy is None else f" at lambda={energy:g}"
        shown = "n/a" if value is None else f"{value:.3e}"
        if passed is False:
            logger.warning(f"FAIL {name}{where}: {shown} (threshold {threshold})")
        elif passed:
            logger.info(f"PASS {name}{where}: {shown}")
        else:
            logger.info(f"INFO {name}{where}: {shown}")
        return criterion

    def add_error(self, name: str, message: str, energy: Optional[float] = None, grid: str = "") -> None:
        """A check that could not be evaluated; counts as a failure."""
        logger.error(f"{name} could not be evaluated" + ("" if energy is None else f" at lambda={energy:g}") + f": {message}")
        self.errors.append({"name": name, "message": message, "lambda": energy,
                            "grid": grid, "config_hash": self.config_hash})

    @property
    def failures(self) -> List[Criterion]:
        return [c for c in self.criteria if c.passed is False]

    @property
    def passed(self) -> bool:
        return not self.failures and not self.errors

    def frame(self) -> pd.DataFrame:
        columns = ["name", "lambda", "value", "threshold", "passed", "grid", "config_hash"]
        rows = [{"name": c.name, "lambda": c.energy, "value": c.value, "threshold": c.threshold,
                 "passed": c.passed, "grid": c.grid, "config_hash": c.config_hash} for c in self.criteria]
        return pd.DataFrame(rows, columns=columns)

    def to_record(self) -> Dict[str, Any]:
        return {
            "passed": self.passed,
            "n_criteria": len(self.criteria),
            "n_failed": len(self.failures),
            "criteria": [asdict(c) for c in self.criteria],
            "errors": list(self.errors),
        }

    def summary(self) -> str:
        checked = [c for c in self.criteria if not c.informational]
        status = "PASSED" if self.passed else "FAILED"
        text = f"Verification {status}: {len(checked) - len(self.failures)}/{len(checked)} criteria passed"
        if self.errors:
            text += f", {len(self.errors)} checks errored"
        return text
