from __future__ import annotations

from typing import Any


class PreconditionError(ValueError):
    """Inputs are outside the range where the procedure is guaranteed to work."""


class ExtractionFailure(RuntimeError):
    """A constructive step could not be carried out at the given scale.

    ``step`` names where it happened and ``measured`` holds the quantities
    that were compared (sizes, thresholds, counts), so a run below the
    full-scale thresholds can be diagnosed.
    """

    def __init__(self, step: str, reason: str, **measured: Any):
        self.step = step
        self.reason = reason
        self.measured = measured
        detail = ", ".join(f"{k}={v}" for k, v in measured.items())
        super().__init__(f"{step}: {reason}" + (f" ({detail})" if detail else ""))

    def to_dict(self) -> dict:
        return {"step": self.step, "reason": self.reason, "measured": {k: _jsonable(v) for k, v in self.measured.items()}}


def _jsonable(v):
    if isinstance(v, (int, str, bool)) or v is None:
        return v
    if isinstance(v, float):
        return v
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    return str(v)
