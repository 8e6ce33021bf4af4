"""Structured pass/fail records returned by the verifiers."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any


@dataclass
class Report:
    identity: str
    shape: tuple[int, int]
    index: Any
    status: bool
    witness: str | None = None
    details: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return bool(self.status)

    def to_json(self) -> dict:
        out = {
            "identity": self.identity,
            "shape": list(self.shape),
            "index": _jsonable(self.index),
            "status": "pass" if self.status else "fail",
        }
        if self.witness is not None:
            out["witness"] = self.witness
        if self.details:
            out["details"] = _jsonable(self.details)
        return out

    def line(self) -> str:
        tag = "PASS" if self.status else "FAIL"
        s = f"[{tag}] {self.identity} {self.shape[0]}x{self.shape[1]} {_jsonable(self.index)}"
        if self.witness and not self.status:
            s += f" :: {self.witness}"
        return s


def _jsonable(x):
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, (str, int, float, bool)) or x is None:
        return x
    return str(x)


def all_passed(reports) -> bool:
    return all(r.status for r in reports)
