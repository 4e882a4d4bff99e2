"""Text formats for point sets and bracket lists.

Point-set file::

    # optional comments
    s N
    x_11 ... x_1s
    ...

Coordinates are written with 17 significant digits so a write/read round
trip is bit-exact.  Bracket files use the header ``s M`` (M = number of
rows) and rows ``lower_1 .. lower_s upper_1 .. upper_s``.
"""

from __future__ import annotations

from typing import Iterable, List, TextIO, Tuple

import numpy as np

from .core import PointSet
from .errors import InputError


def fmt(x: float) -> str:
    return format(float(x), ".17g")


def _data_lines(lines: Iterable[str]) -> List[Tuple[int, str]]:
    out = []
    for lineno, line in enumerate(lines, 1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        out.append((lineno, stripped))
    return out


def _parse_header(rows) -> Tuple[int, int]:
    if not rows:
        raise InputError("empty file: missing 's N' header")
    lineno, header = rows[0]
    parts = header.split(" ")
    if len(parts) != 2 or not all(p.isdigit() for p in parts):
        raise InputError(f"line {lineno}: header must be two integers 's N', got {header!r}")
    return int(parts[0]), int(parts[1])


def _parse_rows(rows, width: int) -> np.ndarray:
    values = []
    for lineno, text in rows:
        fields = text.split()
        if len(fields) != width:
            raise InputError(f"line {lineno}: expected {width} values, got {len(fields)}")
        try:
            values.append([float(f) for f in fields])
        except ValueError as exc:
            raise InputError(f"line {lineno}: {exc}") from exc
    return np.array(values, dtype=float).reshape(len(values), width)


def loads_pointset(text: str) -> PointSet:
    rows = _data_lines(text.splitlines())
    s, n = _parse_header(rows)
    if s < 1 or n < 1:
        raise InputError("header must have s >= 1 and N >= 1")
    if len(rows) - 1 != n:
        raise InputError(f"header declares {n} points, file has {len(rows) - 1}")
    return PointSet(_parse_rows(rows[1:], s))


def dumps_pointset(P: PointSet, comment: str = None) -> str:
    lines = []
    if comment:
        lines.extend(f"# {c}" for c in comment.splitlines())
    lines.append(f"{P.dim} {P.n}")
    lines.extend(" ".join(fmt(x) for x in row) for row in P.points)
    return "\n".join(lines) + "\n"


def read_pointset(path) -> PointSet:
    with open(path, encoding="utf-8") as fh:
        return loads_pointset(fh.read())


def write_pointset(P: PointSet, path, comment: str = None):
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(dumps_pointset(P, comment))


def write_brackets(lower: np.ndarray, upper: np.ndarray, out: TextIO):
    lower = np.atleast_2d(lower)
    upper = np.atleast_2d(upper)
    out.write(f"{lower.shape[1]} {lower.shape[0]}\n")
    for lo, hi in zip(lower, upper):
        out.write(" ".join(fmt(x) for x in (*lo, *hi)) + "\n")


def loads_brackets(text: str) -> Tuple[np.ndarray, np.ndarray]:
    rows = _data_lines(text.splitlines())
    s, m = _parse_header(rows)
    if len(rows) - 1 != m:
        raise InputError(f"header declares {m} brackets, file has {len(rows) - 1}")
    data = _parse_rows(rows[1:], 2 * s)
    return data[:, :s], data[:, s:]
