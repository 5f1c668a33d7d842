"""Contingency tables, probability tables, and their CSV/JSON forms."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

PROB_SUM_TOL = 1e-9
MARGIN_TOL = 1e-12


class TableError(ValueError):
    """Raised for malformed or invalid table input."""


def _frozen(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class ContingencyTable:
    """An r x c grid of nonnegative integer counts.

    Margins and the grand total are computed once at construction.
    Instances are immutable (the underlying arrays are read-only).
    """

    counts: np.ndarray
    row_sums: np.ndarray = field(init=False)
    col_sums: np.ndarray = field(init=False)
    total: int = field(init=False)

    def __post_init__(self):
        raw = np.asarray(self.counts)
        if raw.ndim != 2:
            raise TableError(f"counts must be 2-dimensional, got shape {raw.shape}")
        if raw.shape[0] < 1 or raw.shape[1] < 1:
            raise TableError("table needs at least one row and one column")
        if raw.dtype.kind == "f":
            if not np.all(np.isfinite(raw)) or np.any(raw != np.round(raw)):
                raise TableError("counts must be integers")
        elif raw.dtype.kind not in "iub":
            raise TableError(f"counts must be integers, got dtype {raw.dtype}")
        counts = raw.astype(np.int64)
        if np.any(counts < 0):
            raise TableError("counts must be nonnegative")
        object.__setattr__(self, "counts", _frozen(counts))
        object.__setattr__(self, "row_sums", _frozen(counts.sum(axis=1)))
        object.__setattr__(self, "col_sums", _frozen(counts.sum(axis=0)))
        object.__setattr__(self, "total", int(counts.sum()))

    @property
    def rows(self) -> int:
        return self.counts.shape[0]

    @property
    def cols(self) -> int:
        return self.counts.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self.counts.shape

    def __eq__(self, other):
        if not isinstance(other, ContingencyTable):
            return NotImplemented
        return self.shape == other.shape and bool(np.all(self.counts == other.counts))

    def __hash__(self):
        return hash((self.shape, self.counts.tobytes()))

    def __repr__(self):
        return f"ContingencyTable({self.tolist()!r})"

    def tolist(self) -> list[list[int]]:
        return self.counts.tolist()

    def margins(self) -> tuple[np.ndarray, np.ndarray, int]:
        return margins(self)

    def to_csv(self) -> str:
        return serialize(self)

    def to_json(self) -> str:
        return json.dumps({"counts": self.tolist(), "n": self.total})

    @classmethod
    def from_json(cls, text: str) -> "ContingencyTable":
        data = json.loads(text)
        try:
            table = cls(np.array(data["counts"]))
        except (KeyError, TypeError) as exc:
            raise TableError(f"bad table JSON: {exc}") from exc
        if "n" in data and data["n"] != table.total:
            raise TableError(f"stated n={data['n']} disagrees with counts total {table.total}")
        return table


@dataclass(frozen=True, eq=False)
class ProbabilityTable:
    """An r x c grid of nonnegative reals summing to one, with margins."""

    probs: np.ndarray
    row_margins: np.ndarray = field(init=False)
    col_margins: np.ndarray = field(init=False)

    def __post_init__(self):
        probs = np.array(self.probs, dtype=float)
        if probs.ndim != 2 or probs.shape[0] < 1 or probs.shape[1] < 1:
            raise TableError(f"probs must be a nonempty 2-d grid, got shape {probs.shape}")
        if not np.all(np.isfinite(probs)) or np.any(probs < 0):
            raise TableError("probabilities must be finite and nonnegative")
        if abs(probs.sum() - 1.0) > PROB_SUM_TOL:
            raise TableError(f"probabilities sum to {probs.sum()!r}, not 1")
        row = probs.sum(axis=1)
        col = probs.sum(axis=0)
        # Cramer's cell-vs-margin inequalities; cannot fail for sums of nonnegatives.
        assert np.all(probs <= row[:, None] + MARGIN_TOL)
        assert np.all(probs <= col[None, :] + MARGIN_TOL)
        object.__setattr__(self, "probs", _frozen(probs))
        object.__setattr__(self, "row_margins", _frozen(row))
        object.__setattr__(self, "col_margins", _frozen(col))

    @property
    def rows(self) -> int:
        return self.probs.shape[0]

    @property
    def cols(self) -> int:
        return self.probs.shape[1]

    def __repr__(self):
        return f"ProbabilityTable({self.probs.tolist()!r})"


def _parse_int(field_text: str) -> int | None:
    s = field_text.strip()
    try:
        return int(s)
    except ValueError:
        return None


def _is_numeric(field_text: str) -> bool:
    try:
        float(field_text.strip())
    except ValueError:
        return False
    return True


def parse_table(text: str) -> ContingencyTable:
    """Parse CSV text into a :class:`ContingencyTable`.

    One table row per line, comma separated. A first line whose first
    field is not numeric is treated as a header and skipped.

    Raises:
        TableError: on empty input, ragged rows, or a cell that is not a
            nonnegative integer. The message names the offending line.
    """
    lines = [(i, ln) for i, ln in enumerate(text.splitlines(), start=1) if ln.strip()]
    if lines and not _is_numeric(lines[0][1].split(",")[0]):
        lines = lines[1:]
    if not lines:
        raise TableError("empty input: no table rows")

    grid: list[list[int]] = []
    width = None
    for lineno, line in lines:
        fields = line.split(",")
        if width is None:
            width = len(fields)
        elif len(fields) != width:
            raise TableError(f"line {lineno}: ragged row ({len(fields)} fields, expected {width})")
        row = []
        for f in fields:
            v = _parse_int(f)
            if v is None:
                raise TableError(f"line {lineno}: non-integer cell {f.strip()!r}")
            if v < 0:
                raise TableError(f"line {lineno}: negative cell {v}")
            row.append(v)
        grid.append(row)
    return ContingencyTable(np.array(grid, dtype=np.int64))


def serialize(t: ContingencyTable) -> str:
    """Render a table in the CSV format accepted by :func:`parse_table`."""
    return "".join(",".join(str(v) for v in row) + "\n" for row in t.tolist())


def margins(t: ContingencyTable) -> tuple[np.ndarray, np.ndarray, int]:
    """Return ``(row_sums, col_sums, total)``."""
    return t.row_sums, t.col_sums, t.total


def to_probability(t: ContingencyTable) -> ProbabilityTable:
    """Divide every count by the grand total."""
    if t.total == 0:
        raise TableError("empty table: total count is zero")
    return ProbabilityTable(t.counts / t.total)


def as_table(obj: ContingencyTable | Sequence[Sequence[int]] | np.ndarray) -> ContingencyTable:
    """Coerce nested lists or arrays to a ContingencyTable."""
    if isinstance(obj, ContingencyTable):
        return obj
    return ContingencyTable(np.asarray(obj))
