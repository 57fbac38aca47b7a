from __future__ import annotations

from dataclasses import dataclass, field

PASS, FAIL, SKIP = "PASS", "FAIL", "SKIP"


@dataclass
class CheckReport:
    """Outcome of one executable check.

    ``status`` is SKIP when a precondition of the checked statement does not
    hold (for example a repeated dual spectrum); that is not a failure.
    """

    check: str
    residual: float | None
    tolerance: float
    status: str
    details: dict = field(default_factory=dict)

    @classmethod
    def from_residual(cls, check, residual, tolerance, **details) -> "CheckReport":
        status = PASS if residual <= tolerance else FAIL
        return cls(check, float(residual), float(tolerance), status, details)

    @classmethod
    def skipped(cls, check, tolerance, reason, **details) -> "CheckReport":
        return cls(check, None, float(tolerance), SKIP, {"reason": reason, **details})

    @property
    def passed(self) -> bool:
        return self.status == PASS

    @property
    def failed(self) -> bool:
        return self.status == FAIL

    def to_dict(self) -> dict:
        out = {
            "axiom": self.check,
            "residual": self.residual,
            "tolerance": self.tolerance,
            "pass": self.passed,
            "status": self.status,
        }
        out.update(self.details)
        return out
