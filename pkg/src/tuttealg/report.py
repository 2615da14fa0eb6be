"""Pass/fail records for identity checks."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any, Iterable

from .exactalg import MultiPoly, as_poly


def _jsonable(x: Any) -> Any:
    if isinstance(x, MultiPoly):
        return x.to_text()
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, (int, str, bool)) or x is None:
        return x
    return str(x)


@dataclass
class CheckReport:
    """Outcome of one named check: PASS unless a witness was recorded.

    Only the first failing instance is kept as witness; later instances are
    still counted.
    """

    check: str
    instances: int = 0
    witness: dict | None = None
    members: list[str] = field(default_factory=list)

    @property
    def status(self) -> str:
        return "FAIL" if self.witness is not None else "PASS"

    @property
    def passed(self) -> bool:
        return self.witness is None

    def add_member(self, name: str) -> None:
        if name and name not in self.members:
            self.members.append(name)

    def expect_equal(self, lhs, rhs, graph: str | None = None, **params) -> bool:
        self.instances += 1
        lhs, rhs = as_poly(lhs), as_poly(rhs)
        if lhs == rhs:
            return True
        self.fail(residual=lhs - rhs, graph=graph, **params)
        return False

    def expect(self, ok: bool, residual, graph: str | None = None, **params) -> bool:
        """Record a non-equational instance; ``residual`` documents a failure."""
        self.instances += 1
        if not ok:
            self.fail(residual=residual, graph=graph, **params)
        return ok

    def fail(self, residual, graph: str | None = None, **params) -> None:
        if self.witness is None:
            residual = as_poly(residual)
            if not residual:
                residual = MultiPoly.const(1)
            w: dict[str, Any] = {}
            if graph is not None:
                w["graph"] = graph
            w["params"] = _jsonable(params)
            w["residual"] = residual.to_text()
            self.witness = w

    def merge(self, other: "CheckReport") -> "CheckReport":
        self.instances += other.instances
        if self.witness is None and other.witness is not None:
            self.witness = other.witness
        for m in other.members:
            self.add_member(m)
        return self

    def to_json(self) -> dict:
        out: dict[str, Any] = {"check": self.check, "status": self.status,
                               "instances": self.instances}
        if self.members:
            out["members"] = list(self.members)
        if self.witness is not None:
            out["witness"] = self.witness
        return out

    def to_line(self) -> str:
        return json.dumps(self.to_json(), separators=(",", ":"))


def all_passed(reports: Iterable[CheckReport]) -> bool:
    return all(r.passed for r in reports)


def merge_by_name(reports: Iterable[CheckReport]) -> list[CheckReport]:
    """Combine reports sharing a check name, keeping first-seen order."""
    out: dict[str, CheckReport] = {}
    for r in reports:
        if r.check in out:
            out[r.check].merge(r)
        else:
            out[r.check] = CheckReport(r.check, r.instances, r.witness, list(r.members))
    return list(out.values())
