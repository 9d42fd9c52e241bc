"""CSV formats for clouds, distance matrices and diagrams.

Clouds: one point per line, comma-separated coordinates, optional lines
starting with ``#``. Matrices: n lines of n comma-separated reals. Diagrams:
header ``birth,death,multiplicity``, one dot per line sorted by (birth,
death), infinite death spelled ``inf``. Floats are written with ``repr`` so
that parse(write(x)) recovers the exact same values on any platform.
"""

from __future__ import annotations

import json
import math
from pathlib import Path

import numpy as np

from .diagrams import Diagram
from .geometry import DistanceMatrix, PointCloud

INF = math.inf

DIAGRAM_HEADER = "birth,death,multiplicity"


class ParseError(ValueError):
    """Malformed input file; carries the 1-based offending line when known."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


def fmt_full(x: float) -> str:
    """Shortest decimal that parses back to exactly the same float."""
    return repr(float(x))


def fmt_scalar(x: float, precision: int = 9) -> str:
    """Fixed significant-digit policy for printed scalars and report files."""
    return format(float(x), f".{precision}g")


def _data_lines(text: str) -> list[tuple[int, str]]:
    out = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if line and not line.startswith("#"):
            out.append((lineno, line))
    return out


def _parse_float_row(line: str, lineno: int) -> list[float]:
    vals = []
    for part in line.split(","):
        try:
            v = float(part)
        except ValueError:
            raise ParseError(f"non-numeric field {part.strip()!r}", lineno) from None
        if not math.isfinite(v):
            raise ParseError(f"non-finite value {part.strip()!r}", lineno)
        vals.append(v)
    return vals


def parse_cloud_csv(text: str) -> PointCloud:
    rows = []
    dim = None
    for lineno, line in _data_lines(text):
        vals = _parse_float_row(line, lineno)
        if dim is None:
            dim = len(vals)
        elif len(vals) != dim:
            raise ParseError(f"ragged row: expected {dim} fields, got {len(vals)}", lineno)
        rows.append(vals)
    if not rows:
        raise ParseError("empty input: no point rows")
    return PointCloud(np.array(rows))


def write_cloud_csv(cloud: PointCloud) -> str:
    lines = [",".join(fmt_full(c) for c in row) for row in cloud.points]
    return "\n".join(lines) + "\n"


def parse_matrix_csv(text: str) -> DistanceMatrix:
    entries = []
    linenos = []
    for lineno, line in _data_lines(text):
        entries.append(_parse_float_row(line, lineno))
        linenos.append(lineno)
    n = len(entries)
    if n == 0:
        raise ParseError("empty input: no matrix rows")
    for row, lineno in zip(entries, linenos):
        if len(row) != n:
            raise ParseError(f"matrix must be {n}x{n}, row has {len(row)} fields", lineno)
    m = np.array(entries)
    for i in range(n):
        if m[i, i] != 0:
            raise ParseError(f"diagonal entry d[{i}][{i}] = {m[i, i]} must be 0", linenos[i])
        for j in range(i):
            if m[i, j] < 0:
                raise ParseError(f"negative distance d[{i}][{j}] = {m[i, j]}", linenos[i])
            if m[i, j] != m[j, i]:
                raise ParseError(
                    f"asymmetric: d[{i}][{j}] = {m[i, j]} but d[{j}][{i}] = {m[j, i]}",
                    linenos[i],
                )
    return DistanceMatrix(m)


def write_matrix_csv(dm: DistanceMatrix) -> str:
    lines = [",".join(fmt_full(c) for c in row) for row in dm.d]
    return "\n".join(lines) + "\n"


def parse_diagram_csv(text: str) -> Diagram:
    lines = _data_lines(text)
    if not lines or lines[0][1].replace(" ", "").lower() != DIAGRAM_HEADER:
        lineno = lines[0][0] if lines else None
        raise ParseError(f"expected header {DIAGRAM_HEADER!r}", lineno)
    dots = []
    for lineno, line in lines[1:]:
        parts = [p.strip() for p in line.split(",")]
        if len(parts) != 3:
            raise ParseError(f"expected 3 fields, got {len(parts)}", lineno)
        try:
            birth = float(parts[0])
            death = INF if parts[1] == "inf" else float(parts[1])
        except ValueError:
            raise ParseError(f"non-numeric coordinate in {line!r}", lineno) from None
        try:
            mult = int(parts[2])
        except ValueError:
            raise ParseError(f"multiplicity {parts[2]!r} is not an integer", lineno) from None
        if mult < 1:
            raise ParseError(f"multiplicity must be >= 1, got {mult}", lineno)
        if not math.isfinite(birth) or birth < 0:
            raise ParseError(f"birth must be a finite nonnegative real, got {parts[0]}", lineno)
        if math.isnan(death) or death < birth:
            raise ParseError(f"death must be >= birth, got ({parts[0]}, {parts[1]})", lineno)
        dots.append((birth, death, mult))
    return Diagram(dots)


def write_diagram_csv(diag: Diagram) -> str:
    lines = [DIAGRAM_HEADER]
    for b, d, m in diag:
        death = "inf" if d == INF else fmt_full(d)
        lines.append(f"{fmt_full(b)},{death},{m}")
    return "\n".join(lines) + "\n"


def diagram_to_json(diag: Diagram) -> str:
    dots = [[b, "inf" if d == INF else d, m] for b, d, m in diag]
    return json.dumps({"dots": dots})


def load_cloud(path: str | Path) -> PointCloud:
    return parse_cloud_csv(Path(path).read_text())


def load_matrix(path: str | Path) -> DistanceMatrix:
    return parse_matrix_csv(Path(path).read_text())


def load_diagram(path: str | Path) -> Diagram:
    return parse_diagram_csv(Path(path).read_text())


def save_text(text: str, path: str | Path) -> None:
    Path(path).write_text(text)
