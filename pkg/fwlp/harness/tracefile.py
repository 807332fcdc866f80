"""CSV trace files, one row per traced iteration."""
from __future__ import annotations

import csv
from dataclasses import astuple, dataclass, fields
from pathlib import Path

from fwlp.constants import TRACE_HEADER
from fwlp.core.diagnostics import DiagnosticsRecord
from fwlp.lib.errors import MalformedFieldError


@dataclass(frozen=True)
class TraceRow:
    k: int
    primal_infeas: float
    dual_infeas: float
    gap: float
    U: float
    delta: float
    epsilon: float
    recursion_residual: float
    M: float
    touch_count: int
    wall_time_ns: int

    @classmethod
    def from_record(cls, record: DiagnosticsRecord) -> TraceRow:
        return cls(**{f.name: getattr(record, f.name) for f in fields(cls)})

    def as_strings(self) -> list[str]:
        # repr keeps every float bit-exact on the way back in.
        return [str(int(v)) if f.type == "int" else repr(float(v)) for f, v in zip(fields(self), astuple(self))]

    @classmethod
    def from_strings(cls, values: list[str]) -> TraceRow:
        if len(values) != len(TRACE_HEADER):
            raise MalformedFieldError(f"Trace row has {len(values)} fields, expected {len(TRACE_HEADER)}!")
        parsed = [int(v) if f.type == "int" else float(v) for f, v in zip(fields(cls), values)]
        return cls(*parsed)


def write_trace(path: str | Path, records: list[DiagnosticsRecord]) -> None:
    with open(path, "w", newline="", encoding="utf-8") as f:
        writer = csv.writer(f)
        writer.writerow(TRACE_HEADER)
        for record in records:
            writer.writerow(TraceRow.from_record(record).as_strings())


def read_trace(path: str | Path) -> list[TraceRow]:
    with open(path, newline="", encoding="utf-8") as f:
        reader = csv.reader(f)
        header = next(reader, None)
        if header is None or tuple(header) != TRACE_HEADER:
            raise MalformedFieldError(f"Trace file {path} does not start with the expected header!")
        return [TraceRow.from_strings(row) for row in reader]
