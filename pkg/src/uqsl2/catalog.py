"""The identity catalog: records {id, lhs, rhs, anchor} checked by normalization.

A record may carry ``apply_lhs`` / ``apply_rhs``: lists of morphism specs
applied in order (first entry first) to the evaluated side.  This is how
claims such as "tau sends e to -q k f" become zero tests.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from importlib import resources
from typing import List, Optional, Sequence

from .coeff_field import ParseError
from .expr import evaluate
from .ncalgebra import NormalElement, format_element, to_records
from .presentations import apply_chain


@dataclass(frozen=True)
class IdentityRecord:
    id: str
    lhs: str
    rhs: str
    anchor: str = ""
    apply_lhs: tuple = ()
    apply_rhs: tuple = ()

    @classmethod
    def from_dict(cls, d: dict) -> "IdentityRecord":
        return cls(d["id"], d["lhs"], d["rhs"], d.get("anchor", ""),
                   tuple(d.get("apply_lhs", ())), tuple(d.get("apply_rhs", ())))

    def to_dict(self) -> dict:
        d = {"id": self.id, "lhs": self.lhs, "rhs": self.rhs, "anchor": self.anchor}
        if self.apply_lhs:
            d["apply_lhs"] = list(self.apply_lhs)
        if self.apply_rhs:
            d["apply_rhs"] = list(self.apply_rhs)
        return d


@dataclass
class CheckResult:
    id: str
    status: str  # pass | fail | error
    residual: Optional[NormalElement] = None
    message: str = ""

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def to_dict(self) -> dict:
        d = {"id": self.id, "status": self.status}
        if self.residual is not None:
            d["residual"] = to_records(self.residual)
        if self.message:
            d["message"] = self.message
        return d

    def format(self) -> str:
        line = f"{self.id}: {self.status}"
        if self.status == "fail":
            line += f"  residual = {format_element(self.residual)}"
        elif self.status == "error":
            line += f"  {self.message}"
        return line


def load_catalog(path: Optional[str] = None) -> List[IdentityRecord]:
    if path is None:
        text = resources.files("uqsl2").joinpath("data/catalog.json").read_text()
    else:
        with open(path) as fh:
            text = fh.read()
    return [IdentityRecord.from_dict(d) for d in json.loads(text)]


def side_value(text: str, chain: Sequence[str]) -> NormalElement:
    return apply_chain(chain, evaluate(text))


def check_identity(rec) -> CheckResult:
    if isinstance(rec, dict):
        rec = IdentityRecord.from_dict(rec)
    try:
        residual = side_value(rec.lhs, rec.apply_lhs) - side_value(rec.rhs, rec.apply_rhs)
    except ParseError as exc:
        return CheckResult(rec.id, "error", message=str(exc))
    if residual.is_zero():
        return CheckResult(rec.id, "pass")
    return CheckResult(rec.id, "fail", residual)


@dataclass
class CatalogReport:
    results: List[CheckResult] = field(default_factory=list)

    @property
    def passed(self) -> int:
        return sum(r.passed for r in self.results)

    @property
    def failed(self) -> int:
        return len(self.results) - self.passed

    @property
    def ok(self) -> bool:
        return self.failed == 0

    def format(self) -> str:
        lines = [r.format() for r in self.results]
        lines.append(f"{len(self.results)} records, {self.passed} pass, {self.failed} fail")
        return "\n".join(lines)

    def to_dict(self) -> dict:
        return {"total": len(self.results), "passed": self.passed, "failed": self.failed,
                "records": [r.to_dict() for r in self.results]}


def run_catalog(prefix: str = "", records: Optional[Sequence[IdentityRecord]] = None) -> CatalogReport:
    """Check every record whose id starts with ``prefix``; results sorted by id."""
    records = load_catalog() if records is None else records
    chosen = sorted((r for r in records if r.id.startswith(prefix or "")), key=lambda r: r.id)
    return CatalogReport([check_identity(r) for r in chosen])
