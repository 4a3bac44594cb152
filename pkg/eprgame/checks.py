from dataclasses import dataclass, field
from typing import Any, Dict, List


@dataclass(frozen=True)
class CheckReport:
    """Outcome of a report-style check: residual per named item plus the failing names."""

    name: str
    passed: bool
    residuals: Dict[str, Any] = field(default_factory=dict)
    violations: List[str] = field(default_factory=list)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "check": self.name,
            "passed": self.passed,
            "residuals": dict(self.residuals),
            "violations": list(self.violations),
        }
