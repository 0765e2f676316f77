"""Structured verification records with deterministic text/JSON rendering."""

from __future__ import annotations

from dataclasses import asdict, dataclass, field
from typing import Any, Dict, List, Optional

SCHEMA_VERSION = 1


def _text(v) -> str:
    return v if isinstance(v, str) else str(v)


@dataclass
class CaseResult:
    inputs: Dict[str, str]
    lhs: str
    rhs: str
    passed: bool
    detail: str = ""


@dataclass
class VerificationReport:
    suite: str
    cases: List[CaseResult] = field(default_factory=list)
    inconclusive: bool = False
    warnings: List[str] = field(default_factory=list)
    info: Dict[str, Any] = field(default_factory=dict)

    def add(self, inputs: Dict[str, Any], lhs, rhs, passed: Optional[bool] = None, detail: str = "") -> bool:
        if passed is None:
            passed = bool(lhs == rhs)
        self.cases.append(
            CaseResult({k: _text(v) for k, v in inputs.items()}, _text(lhs), _text(rhs), bool(passed), detail)
        )
        return passed

    def extend(self, other: "VerificationReport", prefix: str = "") -> "VerificationReport":
        for c in other.cases:
            inputs = dict(c.inputs)
            if prefix:
                inputs = {"check": prefix, **inputs}
            self.cases.append(CaseResult(inputs, c.lhs, c.rhs, c.passed, c.detail))
        self.inconclusive |= other.inconclusive
        self.warnings.extend(other.warnings)
        for k, v in other.info.items():
            self.info[f"{prefix}.{k}" if prefix else k] = v
        return self

    @property
    def failures(self) -> List[CaseResult]:
        return [c for c in self.cases if not c.passed]

    @property
    def passed(self) -> bool:
        return not self.inconclusive and not self.failures

    @property
    def status(self) -> str:
        if self.failures:
            return "FAIL"
        if self.inconclusive:
            return "INCONCLUSIVE"
        return "PASS"

    def summary_line(self) -> str:
        n = len(self.cases)
        if n == 0 and not self.inconclusive:
            return "0 cases, PASS (vacuous)"
        return f"{n} cases, {len(self.failures)} failed, {self.status}"

    def to_json(self) -> dict:
        return {
            "kind": "verification",
            "suite": self.suite,
            "status": self.status,
            "passed": self.passed,
            "inconclusive": self.inconclusive,
            "n_cases": len(self.cases),
            "n_failed": len(self.failures),
            "cases": [asdict(c) for c in self.cases],
            "warnings": list(self.warnings),
            "info": self.info,
        }

    @classmethod
    def from_json(cls, doc: dict) -> "VerificationReport":
        return cls(
            doc["suite"],
            [CaseResult(**c) for c in doc["cases"]],
            doc["inconclusive"],
            list(doc["warnings"]),
            dict(doc["info"]),
        )

    def render_text(self, verbose: bool = True) -> str:
        lines = [f"suite: {self.suite}"]
        for w in self.warnings:
            lines.append(f"warning: {w}")
        for k in sorted(self.info):
            lines.append(f"{k}: {self.info[k]}")
        if verbose or self.failures:
            for i, c in enumerate(self.cases):
                if not verbose and c.passed:
                    continue
                args = " ".join(f"{k}={v}" for k, v in c.inputs.items())
                mark = "ok  " if c.passed else "FAIL"
                lines.append(f"  [{i:4d}] {mark} {args}")
                if not c.passed or verbose:
                    lines.append(f"         lhs: {c.lhs}")
                    lines.append(f"         rhs: {c.rhs}")
                if c.detail:
                    lines.append(f"         note: {c.detail}")
        lines.append(self.summary_line())
        return "\n".join(lines)


@dataclass
class DegreeRecord:
    degree: int
    source_dim: int
    image_rank: int
    target_dim: int
    injective: bool
    surjective: bool


@dataclass
class GradedReport:
    datum: str
    point: str
    order: int
    records: List[DegreeRecord] = field(default_factory=list)
    generator_degrees: List[int] = field(default_factory=list)
    inconclusive: bool = False
    warnings: List[str] = field(default_factory=list)
    molien_crosscheck: Dict[int, bool] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return (
            not self.inconclusive
            and all(r.injective and r.surjective for r in self.records)
            and all(self.molien_crosscheck.values())
        )

    @property
    def status(self) -> str:
        if self.inconclusive:
            return "INCONCLUSIVE"
        return "PASS" if self.passed else "FAIL"

    def to_json(self) -> dict:
        return {
            "kind": "graded",
            "datum": self.datum,
            "point": self.point,
            "order": self.order,
            "status": self.status,
            "passed": self.passed,
            "inconclusive": self.inconclusive,
            "generator_degrees": list(self.generator_degrees),
            "records": [asdict(r) for r in self.records],
            "molien_crosscheck": {str(k): v for k, v in sorted(self.molien_crosscheck.items())},
            "warnings": list(self.warnings),
        }

    def render_text(self) -> str:
        lines = [f"graded map at q=({self.point}) for {self.datum}, degrees 0..{self.order}"]
        lines.append(f"generator degrees: {self.generator_degrees}")
        for w in self.warnings:
            lines.append(f"warning: {w}")
        lines.append("  d  source  image  target  inj  surj  molien")
        for r in self.records:
            mc = self.molien_crosscheck.get(r.degree)
            mc_s = "-" if mc is None else ("ok" if mc else "BAD")
            lines.append(
                f"{r.degree:3d}  {r.source_dim:6d}  {r.image_rank:5d}  {r.target_dim:6d}"
                f"  {'yes' if r.injective else 'no ':3s}  {'yes' if r.surjective else 'no ':4s}  {mc_s}"
            )
        lines.append(self.status)
        return "\n".join(lines)
