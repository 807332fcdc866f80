"""Reader for the MPS subset: NAME, ROWS, COLUMNS, RHS, BOUNDS (LO/UP/FR), ENDATA."""
from __future__ import annotations

import math
from dataclasses import dataclass, field

from fwlp.lib.errors import (DuplicateEntryError, MalformedFieldError,
                             UnsupportedSectionError)
from fwlp.lib.log import logger
from fwlp.lib.types import RowKind

SECTIONS = {"NAME", "ROWS", "COLUMNS", "RHS", "BOUNDS", "ENDATA"}
UNSUPPORTED_SECTIONS = {"RANGES", "SOS", "OBJSENSE", "OBJNAME", "QUADOBJ", "QMATRIX",
                        "QSECTION", "QCMATRIX", "CSECTION", "INDICATORS", "LAZYCONS", "USERCUTS"}
BOUND_TYPES = {"LO", "UP", "FR"}

# Fixed-format field columns (1-based 2-3, 5-12, 15-22, 25-36, 40-47, 50-61).
FIXED_FIELDS = ((1, 3), (4, 12), (14, 22), (24, 36), (39, 47), (49, 61))


@dataclass
class MpsModel:
    """General-form LP as read from the file, in file order."""
    name: str = ""
    objective: str | None = None
    rows: dict[str, RowKind] = field(default_factory=dict)
    columns: dict[str, dict[str, float]] = field(default_factory=dict)
    cost: dict[str, float] = field(default_factory=dict)
    rhs: dict[str, float] = field(default_factory=dict)
    lower: dict[str, float] = field(default_factory=dict)
    upper: dict[str, float] = field(default_factory=dict)
    free: set[str] = field(default_factory=set)
    obj_offset: float = 0.0

    def bounds(self, column: str) -> tuple[float, float]:
        return self.lower.get(column, 0.0), self.upper.get(column, math.inf)


def _number(token: str, line: int) -> float:
    try:
        value = float(token)
    except ValueError:
        raise MalformedFieldError(f"'{token}' is not a number!", line) from None
    if math.isnan(value):
        raise MalformedFieldError(f"'{token}' is not a number!", line)
    return value


def _fixed_tokens(raw: str) -> list[str]:
    return [f for start, end in FIXED_FIELDS if (f := raw[start:end].strip())]


def _pairs(tokens: list[str], line: int) -> list[tuple[str, float]]:
    if len(tokens) not in (2, 4):
        raise MalformedFieldError(f"Expected one or two name/value pairs, got {tokens}!", line)
    return [(tokens[i], _number(tokens[i + 1], line)) for i in range(0, len(tokens), 2)]


class _Reader:
    def __init__(self) -> None:
        self.model = MpsModel()
        self.section: str | None = None
        self.extra_objectives: set[str] = set()
        self.bound_seen: set[tuple[str, str]] = set()

    def header(self, tokens: list[str], line: int) -> None:
        word = tokens[0]
        if word in UNSUPPORTED_SECTIONS:
            raise UnsupportedSectionError(word, line)
        self.section = word
        match word:
            case "NAME":
                self.model.name = " ".join(tokens[1:])

    def data(self, tokens: list[str], line: int) -> None:
        if "'MARKER'" in tokens:
            raise UnsupportedSectionError("MARKER", line)
        match self.section:
            case "ROWS":
                self.row(tokens, line)
            case "COLUMNS":
                self.column(tokens, line)
            case "RHS":
                self.right_hand_side(tokens, line)
            case "BOUNDS":
                self.bound(tokens, line)
            case _:
                raise MalformedFieldError(f"Data line outside of a section: {' '.join(tokens)}", line)

    def row(self, tokens: list[str], line: int) -> None:
        if len(tokens) != 2:
            raise MalformedFieldError(f"ROWS entry needs a type and a name, got {tokens}!", line)
        kind, name = tokens
        if kind not in RowKind.__members__:
            raise MalformedFieldError(f"Unknown row type '{kind}'!", line)
        model = self.model
        if name in model.rows or name == model.objective or name in self.extra_objectives:
            raise DuplicateEntryError(f"row '{name}'", line)
        if kind == RowKind.N:
            if model.objective is None:
                model.objective = name
            else:
                logger.warning(f"Dropping extra objective row '{name}' (line {line}).")
                self.extra_objectives.add(name)
            return
        model.rows[name] = RowKind(kind)

    def column(self, tokens: list[str], line: int) -> None:
        if len(tokens) not in (3, 5):
            raise MalformedFieldError(f"COLUMNS entry malformed: {tokens}", line)
        name = tokens[0]
        model = self.model
        entries = model.columns.setdefault(name, {})
        for row, value in _pairs(tokens[1:], line):
            if row in self.extra_objectives:
                continue
            if row == model.objective:
                if name in model.cost:
                    raise DuplicateEntryError(f"objective entry for column '{name}'", line)
                model.cost[name] = value
            elif row in model.rows:
                if row in entries:
                    raise DuplicateEntryError(f"entry ({name}, {row})", line)
                entries[row] = value
            else:
                raise MalformedFieldError(f"Unknown row '{row}' in column '{name}'!", line)

    def right_hand_side(self, tokens: list[str], line: int) -> None:
        # An odd token count carries a leading set name.
        if len(tokens) % 2 == 1:
            tokens = tokens[1:]
        model = self.model
        for row, value in _pairs(tokens, line):
            if row in self.extra_objectives:
                continue
            if row == model.objective:
                model.obj_offset = -value
            elif row in model.rows:
                if row in model.rhs:
                    raise DuplicateEntryError(f"right-hand side for row '{row}'", line)
                model.rhs[row] = value
            else:
                raise MalformedFieldError(f"Unknown row '{row}' in RHS!", line)

    def bound(self, tokens: list[str], line: int) -> None:
        kind = tokens[0]
        if kind not in BOUND_TYPES:
            raise UnsupportedSectionError(f"BOUNDS type {kind}", line)
        wanted = 2 if kind == "FR" else 3
        # Optional bound set name after the type.
        if len(tokens) == wanted + 1:
            tokens = [kind] + tokens[2:]
        if len(tokens) != wanted:
            raise MalformedFieldError(f"BOUNDS entry malformed: {tokens}", line)
        column = tokens[1]
        model = self.model
        if column not in model.columns:
            raise MalformedFieldError(f"Bound on unknown column '{column}'!", line)
        if (kind, column) in self.bound_seen:
            raise DuplicateEntryError(f"{kind} bound on column '{column}'", line)
        self.bound_seen.add((kind, column))
        match kind:
            case "LO":
                model.lower[column] = _number(tokens[2], line)
            case "UP":
                model.upper[column] = _number(tokens[2], line)
            case "FR":
                model.lower[column] = -math.inf
                model.upper[column] = math.inf
                model.free.add(column)


def parse_mps(text: str, fixed: bool = False) -> MpsModel:
    """Parse MPS text into an `MpsModel`.

    Free format splits data lines on whitespace. Fixed format reads the
    classic column positions, so names may contain spaces.
    """
    reader = _Reader()
    finished = False
    for number, raw in enumerate(text.splitlines(), start=1):
        if not raw.strip() or raw.lstrip().startswith("*"):
            continue
        tokens = raw.split()
        if not raw[0].isspace() and (tokens[0] in SECTIONS or tokens[0] in UNSUPPORTED_SECTIONS):
            if tokens[0] == "ENDATA":
                finished = True
                break
            reader.header(tokens, number)
            continue
        if fixed:
            tokens = _fixed_tokens(raw)
        reader.data(tokens, number)

    if not finished:
        raise MalformedFieldError("File ended without ENDATA!")
    if reader.model.objective is None:
        raise MalformedFieldError("No objective (N) row declared!")
    return reader.model


def read_mps(path, fixed: bool = False) -> MpsModel:
    with open(path, encoding="utf-8") as f:
        return parse_mps(f.read(), fixed=fixed)
