"""Verification reports: ordered lists of named pass/fail checks."""
from __future__ import annotations

import json
import time
from contextlib import contextmanager
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional

__all__ = ["Check", "Report", "PASS", "FAIL", "SKIPPED"]

PASS = "pass"
FAIL = "fail"
SKIPPED = "skipped"


def _param_text(params: Dict) -> str:
    return json.dumps(params, sort_keys=True)


@dataclass
class Check:
    name: str
    parameters: Dict = field(default_factory=dict)
    status: str = PASS
    witness: Optional[str] = None
    runtime_ms: float = 0.0

    @property
    def passed(self) -> bool:
        return self.status == PASS

    def sort_key(self):
        return (self.name, _param_text(self.parameters))

    def to_dict(self, timings: bool = False) -> Dict:
        out = {
            "name": self.name,
            "parameters": self.parameters,
            "status": self.status,
            "witness": self.witness,
        }
        if timings:
            out["runtime_ms"] = round(self.runtime_ms, 3)
        return out

    @classmethod
    def from_dict(cls, doc: Dict) -> "Check":
        return cls(doc["name"], doc.get("parameters", {}), doc["status"], doc.get("witness"),
                   doc.get("runtime_ms", 0.0))


class Report:
    """A collection of checks kept in deterministic (name, parameters) order."""

    def __init__(self, checks: Iterable[Check] = (), seed: Optional[int] = None):
        self.checks: List[Check] = list(checks)
        self.seed = seed

    def add(self, name: str, ok: bool, witness=None, **parameters) -> Check:
        chk = Check(name, dict(parameters), PASS if ok else FAIL, None if ok else _text(witness))
        self.checks.append(chk)
        return chk

    def skip(self, name: str, reason: str, **parameters) -> Check:
        chk = Check(name, dict(parameters), SKIPPED, reason)
        self.checks.append(chk)
        return chk

    @contextmanager
    def timed(self, name: str, **parameters):
        """Context manager yielding a mutable slot ``[ok, witness]``."""
        slot = [True, None]
        start = time.perf_counter()
        yield slot
        chk = self.add(name, slot[0], slot[1], **parameters)
        chk.runtime_ms = (time.perf_counter() - start) * 1000.0

    def extend(self, other: "Report") -> "Report":
        self.checks.extend(other.checks)
        return self

    def sorted_checks(self) -> List[Check]:
        return sorted(self.checks, key=Check.sort_key)

    def find(self, name: str, **parameters) -> List[Check]:
        return [c for c in self.checks if c.name == name
                and all(c.parameters.get(k) == v for k, v in parameters.items())]

    @property
    def passed(self) -> bool:
        return all(c.status != FAIL for c in self.checks)

    @property
    def status(self) -> str:
        return PASS if self.passed else FAIL

    def failures(self) -> List[Check]:
        return [c for c in self.sorted_checks() if c.status == FAIL]

    def to_dict(self, timings: bool = False) -> Dict:
        return {
            "seed": self.seed,
            "status": self.status,
            "checks": [c.to_dict(timings) for c in self.sorted_checks()],
        }

    def to_json(self, timings: bool = False) -> str:
        return json.dumps(self.to_dict(timings), sort_keys=True, indent=2) + "\n"

    @classmethod
    def from_json(cls, text: str) -> "Report":
        doc = json.loads(text)
        return cls([Check.from_dict(c) for c in doc["checks"]], doc.get("seed"))

    def to_table(self) -> str:
        rows = [(c.status.upper(), c.name, _param_text(c.parameters), c.witness or "")
                for c in self.sorted_checks()]
        if not rows:
            return "(no checks)\n"
        w0 = max(len(r[0]) for r in rows)
        w1 = max(len(r[1]) for r in rows)
        lines = []
        for st, name, params, wit in rows:
            line = f"{st:<{w0}}  {name:<{w1}}  {params}"
            if wit:
                line += f"  witness: {wit}"
            lines.append(line)
        total = len(rows)
        npass = sum(1 for c in self.checks if c.status == PASS)
        lines.append(f"{npass}/{total} checks passed; overall {self.status}")
        return "\n".join(lines) + "\n"


def _text(witness) -> Optional[str]:
    if witness is None:
        return "(no witness recorded)"
    return str(witness)
