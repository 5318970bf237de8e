"""
Alpharm File Formats
- Solution JSON documents (alpha, order, coeffs as k/re/im entries)
- Boundary CSV tables (theta, re, im on a uniform grid starting at 0)
- Deterministic CSV and JSON-lines writers for command output
"""

import csv
import io
import json
import math
from pathlib import Path
from typing import Any, Dict, Iterable, List, Optional, Sequence, TextIO, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, ValidationError

from .exceptions import AlphaHarmonicError, InputFormatError
from .solution import BoundaryData, SeriesSolution

BOUNDARY_HEADER = ["theta", "re", "im"]
UNIFORMITY_TOLERANCE = 1e-9
REPORT_COLUMNS = ["label", "lhs", "rhs", "slack", "satisfied"]


class CoefficientEntry(BaseModel):
    model_config = ConfigDict(extra="forbid")

    k: int
    re: float
    im: float = 0.0


class SolutionDocument(BaseModel):
    """On-disk form of a SeriesSolution; unknown fields are rejected"""
    model_config = ConfigDict(extra="forbid")

    alpha: float
    order: int
    coeffs: List[CoefficientEntry]

    def to_solution(self) -> SeriesSolution:
        seen = set()
        coeffs: Dict[int, complex] = {}
        for entry in self.coeffs:
            if entry.k in seen:
                raise InputFormatError(f"coefficient k={entry.k} listed twice")
            seen.add(entry.k)
            coeffs[entry.k] = complex(entry.re, entry.im)
        try:
            return SeriesSolution(alpha=self.alpha, order=self.order, coeffs=coeffs)
        except AlphaHarmonicError as e:
            raise InputFormatError(f"solution document is inconsistent: {e}") from e

    @classmethod
    def from_solution(cls, sol: SeriesSolution) -> "SolutionDocument":
        entries = [CoefficientEntry(k=k, re=c.real, im=c.imag) for k, c in sorted(sol.coeffs.items())]
        return cls(alpha=sol.alpha, order=sol.order, coeffs=entries)


def load_solution(path: Union[str, Path]) -> SeriesSolution:
    """Read a solution JSON document"""
    text = Path(path).read_text(encoding="utf-8")
    try:
        document = SolutionDocument.model_validate_json(text)
    except ValidationError as e:
        raise InputFormatError(f"{path}: {e.error_count()} schema error(s): {e.errors()[0]['msg']}") from e
    return document.to_solution()


def dump_solution(sol: SeriesSolution, path: Union[str, Path]) -> None:
    payload = SolutionDocument.from_solution(sol).model_dump()
    Path(path).write_text(json.dumps(payload, indent=2) + "\n", encoding="utf-8")


def load_boundary(path: Union[str, Path]) -> BoundaryData:
    """Read a boundary CSV with header theta,re,im on a uniform grid starting at 0"""
    with open(path, newline="", encoding="utf-8") as handle:
        reader = csv.reader(handle)
        header = next(reader, None)
        if header is None or [h.strip() for h in header] != BOUNDARY_HEADER:
            raise InputFormatError(f"{path}: expected header {','.join(BOUNDARY_HEADER)}, got {header}")
        rows = []
        for line_no, row in enumerate(reader, start=2):
            if not row:
                continue
            if len(row) != 3:
                raise InputFormatError(f"{path}:{line_no}: expected 3 columns, got {len(row)}")
            try:
                rows.append([float(v) for v in row])
            except ValueError as e:
                raise InputFormatError(f"{path}:{line_no}: {e}") from e

    table = np.array(rows, dtype=float).reshape(-1, 3)
    thetas = table[:, 0]
    if thetas.size == 0:
        raise InputFormatError(f"{path}: no samples")
    if np.any(np.diff(thetas) <= 0):
        raise InputFormatError(f"{path}: theta must be strictly increasing")
    expected = 2.0 * np.pi * np.arange(thetas.size) / thetas.size
    if np.max(np.abs(thetas - expected)) > UNIFORMITY_TOLERANCE:
        raise InputFormatError(f"{path}: theta must be the uniform grid 2*pi*j/N starting at 0")
    try:
        return BoundaryData(table[:, 1] + 1j * table[:, 2])
    except AlphaHarmonicError as e:
        raise InputFormatError(f"{path}: {e}") from e


def format_float(value: Optional[float]) -> str:
    """Shortest round-trip decimal; blank for missing values"""
    if value is None:
        return ""
    value = float(value)
    if math.isinf(value):
        return "inf" if value > 0 else "-inf"
    return repr(value)


def write_csv(rows: Iterable[Dict[str, Any]], columns: Sequence[str], stream: TextIO) -> None:
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([_cell(row.get(col)) for col in columns])


def _cell(value: Any) -> str:
    if value is None or isinstance(value, (float, np.floating)):
        return format_float(value)
    if isinstance(value, bool):
        return "true" if value else "false"
    return str(value)


def write_boundary(data: BoundaryData, stream: TextIO) -> None:
    rows = (
        {"theta": float(t), "re": float(v.real), "im": float(v.imag)}
        for t, v in zip(data.thetas, data.samples)
    )
    write_csv(rows, BOUNDARY_HEADER, stream)


def to_json(model: BaseModel) -> str:
    """One compact JSON object with repr-formatted floats"""
    return json.dumps(model.model_dump(), separators=(", ", ": "))


def write_json_lines(models: Iterable[BaseModel], stream: TextIO) -> None:
    for model in models:
        stream.write(to_json(model) + "\n")


def write_reports_csv(reports: Iterable[BaseModel], stream: TextIO) -> None:
    """BoundReports as CSV rows with the JSON-lines field names as columns"""
    write_csv((report.model_dump() for report in reports), REPORT_COLUMNS, stream)


def render(write, *args) -> str:
    """Capture a writer's output as a string"""
    buffer = io.StringIO()
    write(*args, buffer)
    return buffer.getvalue()
