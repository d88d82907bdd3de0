"""Verification reports for the construction pipelines.

A report is a sequence of stages, each carrying named assertions with the
expected and computed values.  The JSON form is fully deterministic for a
fixed (pipeline, seed, characteristic): it contains no wall-clock data, so
identical reruns serialize byte-for-byte identically.  Timings appear only
in the human-readable text rendering.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from pathlib import Path

from .errors import UsageError


def jsonable(value):
    """Recursively convert assertion values to JSON-serializable form.

    Betti tables carry tuple keys (step, twist); they become "step,twist"
    strings.  Dict items are emitted in sorted key order so the output is
    independent of construction order.
    """
    if isinstance(value, dict):
        return {",".join(map(str, k)) if isinstance(k, tuple) else str(k):
                jsonable(v) for k, v in sorted(value.items())}
    if isinstance(value, (list, tuple)):
        return [jsonable(v) for v in value]
    return value


@dataclass
class Assertion:
    name: str
    expected: object
    computed: object

    @property
    def ok(self) -> bool:
        return self.expected == self.computed

    def to_json(self):
        return {
            "name": self.name,
            "expected": jsonable(self.expected),
            "computed": jsonable(self.computed),
            "ok": self.ok,
        }


@dataclass
class Stage:
    name: str
    assertions: list = field(default_factory=list)
    notes: list = field(default_factory=list)
    seconds: float = 0.0

    def check(self, name, expected, computed):
        self.assertions.append(Assertion(name, expected, computed))

    def note(self, text):
        self.notes.append(text)

    @property
    def ok(self) -> bool:
        return all(a.ok for a in self.assertions)

    def to_json(self):
        return {
            "name": self.name,
            "assertions": [a.to_json() for a in self.assertions],
            "notes": list(self.notes),
            "ok": self.ok,
        }


class ConstructionReport:
    """Accumulates stage results for one pipeline run."""

    def __init__(self, pipeline: str, seed: int, char: int):
        self.pipeline = pipeline
        self.seed = seed
        self.char = char
        self.stages = []
        self.retries = []  # (stage name, rejected seed, reason)
        self.tables = {}   # label -> {"render": str, "data": json-able}

    def stage(self, name: str) -> "_StageContext":
        return _StageContext(self, name)

    def record_retry(self, stage: str, seed: int, reason: str):
        self.retries.append({"stage": stage, "seed": seed, "reason": reason})

    def add_table(self, label: str, render: str, data):
        self.tables[label] = {"render": render, "data": data}

    @property
    def verdict(self) -> bool:
        return bool(self.stages) and all(s.ok for s in self.stages)

    def failures(self):
        out = []
        for s in self.stages:
            for a in s.assertions:
                if not a.ok:
                    out.append((s.name, a))
        return out

    def to_json(self):
        return {
            "pipeline": self.pipeline,
            "seed": self.seed,
            "char": self.char,
            "stages": [s.to_json() for s in self.stages],
            "retries": list(self.retries),
            "tables": {k: {"render": v["render"], "data": jsonable(v["data"])}
                       for k, v in sorted(self.tables.items())},
            "verdict": "pass" if self.verdict else "fail",
        }

    def json_text(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=True) + "\n"

    def render(self) -> str:
        lines = [
            f"pipeline: {self.pipeline}  seed: {self.seed}  char: {self.char}",
            f"verdict: {'pass' if self.verdict else 'FAIL'}",
            "",
        ]
        for s in self.stages:
            lines.append(f"[{s.name}] {'ok' if s.ok else 'FAIL'} ({s.seconds:.1f}s)")
            for a in s.assertions:
                mark = "ok  " if a.ok else "FAIL"
                lines.append(f"  {mark} {a.name}: expected {a.expected!r}, "
                             f"computed {a.computed!r}")
            for n in s.notes:
                lines.append(f"  note: {n}")
        if self.retries:
            lines.append("")
            lines.append("retries:")
            for r in self.retries:
                lines.append(f"  {r['stage']}: seed {r['seed']} rejected ({r['reason']})")
        for label, tab in sorted(self.tables.items()):
            lines.append("")
            lines.append(f"{label}:")
            lines.append(tab["render"])
        return "\n".join(lines) + "\n"


class _StageContext:
    """`with report.stage("name") as st:` — times the block, appends on exit."""

    def __init__(self, report: ConstructionReport, name: str):
        self.report = report
        self.st = Stage(name)

    def __enter__(self):
        self._t0 = time.monotonic()
        return self.st

    def __exit__(self, exc_type, exc, tb):
        self.st.seconds = time.monotonic() - self._t0
        self.report.stages.append(self.st)
        return False


def run_directory(output_dir, pipeline: str, seed: int, char: int,
                  force: bool = False) -> Path:
    """Create the append-only run directory for (pipeline, seed, char)."""
    out = Path(output_dir) / f"{pipeline}-seed{seed}-p{char}"
    if out.exists():
        if not force:
            raise UsageError(
                f"run directory {out} exists; pass --force to overwrite")
    else:
        out.mkdir(parents=True)
    return out


def persist_report(run_dir: Path, report: ConstructionReport):
    (run_dir / "report.json").write_text(report.json_text())
    (run_dir / "report.txt").write_text(report.render())
