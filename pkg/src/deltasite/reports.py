"""Machine-readable command reports: deterministic given (model, command,
flags, seed), rendered as canonical JSON or stable plain text."""
from __future__ import annotations

import json
from dataclasses import dataclass, field


@dataclass
class Record:
    check: str
    instance: str
    status: str  # "pass" | "fail" | "info"
    witness: str = ""

    def as_doc(self) -> dict:
        return {"check": self.check, "instance": self.instance,
                "status": self.status, "witness": self.witness}


@dataclass
class Report:
    command: str
    model_hash: str | None = None
    params: dict = field(default_factory=dict)
    records: list[Record] = field(default_factory=list)

    def add(self, check: str, instance: str, ok: bool | None, witness: str = ""):
        status = "info" if ok is None else ("pass" if ok else "fail")
        self.records.append(Record(check, instance, status, witness))

    @property
    def passed(self) -> bool:
        return all(r.status != "fail" for r in self.records)

    @property
    def summary(self) -> dict:
        counts = {"pass": 0, "fail": 0, "info": 0}
        for r in self.records:
            counts[r.status] += 1
        counts["total"] = len(self.records)
        return counts

    def exit_code(self) -> int:
        return 0 if self.passed else 1

    def to_json(self) -> str:
        doc = {
            "command": self.command,
            "model_hash": self.model_hash,
            "params": {k: self.params[k] for k in sorted(self.params)},
            "records": [r.as_doc() for r in self.records],
            "summary": self.summary,
        }
        return json.dumps(doc, indent=2, sort_keys=True) + "\n"

    def to_text(self) -> str:
        lines = [f"command: {self.command}"]
        if self.model_hash:
            lines.append(f"model: sha256:{self.model_hash}")
        if self.params:
            lines.append("params: " + " ".join(
                f"{k}={self.params[k]}" for k in sorted(self.params)))
        for r in self.records:
            entry = f"[{r.status}] {r.check} {r.instance}"
            if r.witness:
                entry += f" :: {r.witness}"
            lines.append(entry)
        s = self.summary
        verdict = "OK" if self.passed else "FAIL"
        lines.append(f"summary: {s['pass']} pass, {s['fail']} fail, "
                     f"{s['info']} info -> {verdict}")
        return "\n".join(lines) + "\n"

    def render(self, fmt: str) -> str:
        return self.to_json() if fmt == "json" else self.to_text()
