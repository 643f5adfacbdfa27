from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from typing import Optional


@dataclass
class Report:
    """Outcome of one verification run.  ``witness`` is set iff status is FAIL."""

    name: str
    n: int
    m_values: list
    backend: dict
    trials: int
    seed: int
    status: str = "PASS"
    witness: Optional[dict] = None
    evaluations: int = 0
    details: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.status == "PASS"

    def __bool__(self):
        return self.passed

    def to_dict(self) -> dict:
        return asdict(self)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, separators=(",", ":"))

    @classmethod
    def from_json(cls, text: str) -> "Report":
        return cls(**json.loads(text))

    def line(self) -> str:
        return "%s %s n=%d backend=%s" % (self.status, self.name, self.n, self.backend.get("name"))
