from __future__ import annotations

from dataclasses import dataclass, field

VERIFIED = "verified"
FAILED = "failed"
CORRECTED = "corrected-form-verified"
ERROR = "error"
STATUSES = (VERIFIED, FAILED, CORRECTED, ERROR)


@dataclass
class Report:
    """Outcome of one identity check at one parameter point."""

    id: str
    params: dict
    status: str
    lhs: str = ""
    rhs: str = ""
    notes: str = ""
    elapsed_ms: float = 0.0
    data: dict = field(default_factory=dict, repr=False)

    @property
    def ok(self) -> bool:
        return self.status in (VERIFIED, CORRECTED)

    def to_json(self) -> dict:
        return {
            "id": self.id,
            "params": self.params,
            "status": self.status,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "notes": self.notes,
            "elapsed_ms": round(self.elapsed_ms, 3),
        }


def compare(id: str, params: dict, lhs, rhs, notes: str = "") -> Report:
    """Exact comparison of two canonical values (RatQ or MPoly)."""
    return Report(
        id=id,
        params=dict(params),
        status=VERIFIED if lhs == rhs else FAILED,
        lhs=lhs.render() if hasattr(lhs, "render") else str(lhs),
        rhs=rhs.render() if hasattr(rhs, "render") else str(rhs),
        notes=notes,
    )
