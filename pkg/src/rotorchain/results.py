"""Tabular scan results with reproducible CSV/JSON serialization."""

import json
import math
from dataclasses import dataclass, field

import numpy as np


def format_cell(value) -> str:
    """Fixed 17-significant-digit float formatting; strings pass through."""
    if isinstance(value, str):
        return value
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return format(float(value), ".17g")


@dataclass
class ScanResult:
    """Column names, numeric/string rows and the resolved config metadata."""

    columns: tuple
    rows: list
    metadata: dict = field(default_factory=dict)

    def __post_init__(self):
        self.columns = tuple(self.columns)
        for row in self.rows:
            if len(row) != len(self.columns):
                raise ValueError("row width does not match column count")
            for cell in row:
                if not isinstance(cell, str) and not math.isfinite(float(cell)):
                    raise ValueError(f"non-finite value in scan row: {row}")

    def write_csv(self, stream):
        for key in sorted(self.metadata):
            stream.write(f"# {key} = {self.metadata[key]}\n")
        stream.write(",".join(self.columns) + "\n")
        for row in self.rows:
            stream.write(",".join(format_cell(c) for c in row) + "\n")

    def write_json(self, stream):
        payload = {
            "metadata": self.metadata,
            "columns": list(self.columns),
            "rows": [list(r) for r in self.rows],
        }
        json.dump(payload, stream, indent=2, sort_keys=True, default=float)
        stream.write("\n")

    def write(self, path, fmt: str = "csv"):
        with open(path, "w", encoding="utf-8") as fh:
            if fmt == "csv":
                self.write_csv(fh)
            elif fmt == "json":
                self.write_json(fh)
            else:
                raise ValueError(f"unknown output format {fmt!r}")
