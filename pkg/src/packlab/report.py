"""Run reports with per-value provenance, serialised as text, JSON or CSV."""

from __future__ import annotations

import csv
import enum
import io
import json
from dataclasses import asdict, dataclass, field, fields

from .solvers import InvariantResult


class Provenance(str, enum.Enum):
    COMPUTED = "Computed"
    CONSTRUCTED = "Constructed"
    PAPER_CONSTANT = "PaperConstant"


@dataclass
class ResultEntry:
    invariant: str
    lower: int
    upper: int
    status: str
    provenance: str
    elapsed_ms: int = 0
    citation: str | None = None
    certificate_file: str | None = None
    n: int | None = None
    lower_provenance: str | None = None
    upper_provenance: str | None = None
    note: str | None = None

    def __post_init__(self):
        if self.provenance == Provenance.PAPER_CONSTANT.value and not self.citation:
            raise ValueError("a recorded constant needs a citation")
        if self.provenance == Provenance.COMPUTED.value and not self.status:
            raise ValueError("a computed value needs a status")

    @classmethod
    def from_result(cls, result: InvariantResult, **extra) -> ResultEntry:
        return cls(
            invariant=result.kind.value if result.kind else "mis",
            lower=result.lower,
            upper=result.upper,
            status=result.status.value,
            provenance=extra.pop("provenance", Provenance.COMPUTED.value),
            elapsed_ms=result.elapsed_ms,
            **extra,
        )

    def display_value(self) -> str:
        return str(self.lower) if self.lower == self.upper else f"{self.lower}-{self.upper}"


@dataclass
class RunReport:
    command: str
    graph: dict | None = None
    results: list[ResultEntry] = field(default_factory=list)
    wall_ms: int = 0
    extra: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        out = asdict(self)
        out["results"] = [{k: v for k, v in r.items() if v is not None} for r in out["results"]]
        if not out["extra"]:
            del out["extra"]
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=False)

    @classmethod
    def from_json(cls, text: str) -> RunReport:
        data = json.loads(text)
        results = [ResultEntry(**r) for r in data.get("results", [])]
        return cls(data["command"], data.get("graph"), results, data.get("wall_ms", 0), data.get("extra", {}))

    def to_csv(self) -> str:
        buf = io.StringIO()
        names = [f.name for f in fields(ResultEntry)]
        writer = csv.DictWriter(buf, fieldnames=names, lineterminator="\n")
        writer.writeheader()
        for r in self.results:
            writer.writerow({k: ("" if v is None else v) for k, v in asdict(r).items()})
        return buf.getvalue()

    def to_text(self) -> str:
        lines = [f"command: {self.command}"]
        if self.graph:
            params = ", ".join(f"{k}={v}" for k, v in self.graph.get("params", {}).items())
            lines.append(f"graph: {self.graph.get('kind')}({params}) hash={self.graph.get('hash')}")
        for r in self.results:
            where = f" n={r.n}" if r.n is not None else ""
            line = f"{r.invariant}{where}: {r.display_value()} [{r.status}, {r.provenance}] {r.elapsed_ms} ms"
            if r.certificate_file:
                line += f" certificate={r.certificate_file}"
            lines.append(line)
            if r.citation:
                lines.append(f"    citation: {r.citation}")
            if r.note:
                lines.append(f"    note: {r.note}")
        for key, value in self.extra.items():
            lines.append(f"{key}: {value}")
        lines.append(f"wall time: {self.wall_ms} ms")
        return "\n".join(lines) + "\n"

    def render(self, fmt: str) -> str:
        if fmt == "json":
            return self.to_json() + "\n"
        if fmt == "csv":
            return self.to_csv()
        return self.to_text()
