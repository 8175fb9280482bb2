"""Check reports, JSON (de)serialisation of certificates, and re-verification."""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from typing import Any

from .bimodule import Bimodule, BimoduleMap, parse_algebra
from .linalg import RatMatrix, as_rational

__all__ = ["CheckReport", "Outcome", "map_to_json", "map_from_json", "bimodule_to_json",
           "bimodule_from_json", "verify_report", "Timer"]

PASS, FAIL, INCONCLUSIVE = "pass", "fail", "inconclusive"


class Outcome:
    """Accumulates named boolean expectations."""

    def __init__(self):
        self.passed = 0
        self.failures: list[str] = []
        self.notes: list[str] = []

    def expect(self, condition: bool, message: str, quiet: bool = False) -> bool:
        if condition:
            self.passed += 1
            if not quiet:
                self.notes.append(message)
        else:
            self.failures.append(message)
        return bool(condition)

    @property
    def ok(self) -> bool:
        return not self.failures

    def merge(self, other: "Outcome") -> "Outcome":
        self.passed += other.passed
        self.failures += other.failures
        self.notes += other.notes
        return self


@dataclass
class CheckReport:
    check: str
    params: dict
    paper_ref: str
    verdict: str
    dims: Any = None
    maps: list = field(default_factory=list)  # (label, BimoduleMap, graded) triples
    witness: Any = None
    details: list = field(default_factory=list)
    elapsed_ms: int = 0

    @property
    def passed(self) -> bool:
        return self.verdict == PASS

    def to_json(self, with_certificate: bool = True) -> dict:
        out = {"check": self.check, "params": self.params, "paper_ref": self.paper_ref,
               "verdict": self.verdict, "dims": self.dims, "elapsed_ms": self.elapsed_ms}
        if self.maps and with_certificate:
            out["certificate"] = {
                "kind": "bimodule-maps",
                "maps": [dict(map_to_json(f), label=label, graded=graded)
                         for label, f, graded in self.maps],
            }
        if self.witness is not None:
            out["witness"] = self.witness
        if self.details:
            out["details"] = self.details
        return out

    def to_text(self) -> str:
        params = ", ".join(f"{k}={v}" for k, v in self.params.items())
        head = f"[{self.verdict.upper()}] {self.check}({params})"
        lines = [head, f"  claim: {self.paper_ref}"]
        if self.dims is not None:
            lines.append(f"  dims: {_fmt_dims(self.dims)}")
        if self.maps:
            lines.append(f"  certificates: {len(self.maps)} verified map(s)")
        if self.witness is not None:
            lines.append(f"  witness: {self.witness}")
        for d in self.details:
            lines.append(f"  - {d}")
        return "\n".join(lines)


def _fmt_dims(dims) -> str:
    if isinstance(dims, dict):
        return "; ".join(f"{k}: {v}" for k, v in dims.items())
    return str(dims)


class Timer:
    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.ms = int((time.perf_counter() - self.start) * 1000)


# ---------------------------------------------------------------------------
# sparse JSON forms

def _matrix_to_json(m: RatMatrix) -> dict:
    return {"shape": [m.nrows, m.ncols],
            "entries": [[i, j, str(v)] for i, j, v in m.entries()]}


def _matrix_from_json(d: dict) -> RatMatrix:
    r, c = d["shape"]
    return RatMatrix.from_entries(r, c, ((i, j, as_rational(v)) for i, j, v in d["entries"]))


def bimodule_to_json(b: Bimodule) -> dict:
    return {"name": b.name, "left": str(b.left), "right": str(b.right), "dim": b.dim,
            "degrees": list(b.degrees),
            "left_action": [_matrix_to_json(m) for m in b.left_action],
            "right_action": [_matrix_to_json(m) for m in b.right_action]}


def bimodule_from_json(d: dict) -> Bimodule:
    return Bimodule(parse_algebra(d["left"]), parse_algebra(d["right"]), d["dim"], d["degrees"],
                    [_matrix_from_json(m) for m in d["left_action"]],
                    [_matrix_from_json(m) for m in d["right_action"]], name=d.get("name", ""))


def map_to_json(f: BimoduleMap) -> dict:
    return {"source": bimodule_to_json(f.source), "target": bimodule_to_json(f.target),
            "matrix": _matrix_to_json(f.matrix), "shift": f.shift}


def map_from_json(d: dict) -> BimoduleMap:
    return BimoduleMap(bimodule_from_json(d["source"]), bimodule_from_json(d["target"]),
                       _matrix_from_json(d["matrix"]), d.get("shift", 0))


def verify_report(d: dict) -> tuple[bool, list[str]]:
    """
    Re-check every certificate map in a JSON report: both endpoints satisfy
    the module axioms and the map is an invertible intertwiner (homogeneous
    when flagged graded).
    """
    problems = []
    cert = d.get("certificate")
    if d.get("verdict") == PASS and cert is None and d.get("needs_certificate"):
        problems.append("pass verdict without certificate")
    if cert:
        for k, m in enumerate(cert.get("maps", [])):
            f = map_from_json(m)
            label = m.get("label", str(k))
            graded = bool(m.get("graded"))
            for end in (f.source, f.target):
                bad = end.violations(graded)
                if bad:
                    problems.append(f"{label}: {end.name} violates {bad[0]}")
            if not f.verify(graded):
                problems.append(f"{label}: map is not an invertible intertwiner")
    return not problems, problems


def dumps(reports: list, with_certificate: bool = True) -> str:
    docs = [r.to_json(with_certificate) for r in reports]
    return json.dumps(docs[0] if len(docs) == 1 else docs, indent=1)
