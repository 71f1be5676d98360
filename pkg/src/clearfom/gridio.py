"""Long-format CSV for surface grids and their crossing curves."""

from __future__ import annotations

import csv
import io
from typing import IO

from .breakeven import CrossingResult, SurfaceGrid
from .errors import MalformedHeader, MalformedRow, SinkWriteError

GRID_HEADER = ("year", "length_m", "clear_a", "clear_b")
CROSSING_HEADER = ("year", "crossing_length_m")


def _write(sink: IO, text: str) -> None:
    try:
        if isinstance(sink, io.TextIOBase):
            sink.write(text)
        else:
            sink.write(text.encode("utf-8"))
    except (OSError, ValueError) as exc:
        raise SinkWriteError(str(exc)) from exc


def emit_grid_csv(grid: SurfaceGrid, sink: IO) -> int:
    """Write one row per (year, length) cell; returns the number of data rows."""
    lines = [",".join(GRID_HEADER)]
    for i, year in enumerate(grid.years):
        for j, length in enumerate(grid.lengths):
            lines.append(f"{year!r},{length!r},{grid.values_a[i][j]!r},{grid.values_b[i][j]!r}")
    _write(sink, "\n".join(lines) + "\n")
    return len(lines) - 1


def emit_crossing_csv(curve: list[tuple[float, CrossingResult]], sink: IO) -> int:
    lines = [",".join(CROSSING_HEADER)]
    for year, res in curve:
        cell = "" if res.crossing_length_m is None else repr(res.crossing_length_m)
        lines.append(f"{float(year)!r},{cell}")
    _write(sink, "\n".join(lines) + "\n")
    return len(lines) - 1


def _rows(text: str, header: tuple[str, ...]):
    reader = csv.reader(io.StringIO(text))
    first = next(reader, None)
    if first is None or tuple(h.strip() for h in first) != header:
        raise MalformedHeader(f"expected header {','.join(header)}")
    for row_no, row in enumerate(reader, start=2):
        if not row:
            continue
        if len(row) != len(header):
            raise MalformedRow(row_no, "*", f"expected {len(header)} cells")
        yield row_no, row


def _float(row_no: int, column: str, text: str) -> float:
    try:
        return float(text)
    except ValueError:
        raise MalformedRow(row_no, column, f"not a number: {text!r}") from None


def read_grid_csv(text: str) -> SurfaceGrid:
    """Rebuild the axes and value matrices from :func:`emit_grid_csv` output."""
    cells = {}
    years, lengths = [], []
    for row_no, row in _rows(text, GRID_HEADER):
        y, x, a, b = (_float(row_no, c, v) for c, v in zip(GRID_HEADER, row))
        if y not in cells:
            years.append(y)
            cells[y] = {}
        if x not in lengths:
            lengths.append(x)
        cells[y][x] = (a, b)
    try:
        values_a = [[cells[y][x][0] for x in lengths] for y in years]
        values_b = [[cells[y][x][1] for x in lengths] for y in years]
    except KeyError:
        raise MalformedRow(0, "*", "grid is not rectangular") from None
    return SurfaceGrid(years, lengths, values_a, values_b)


def read_crossing_csv(text: str) -> list[tuple[float, float | None]]:
    out = []
    for row_no, (y, x) in _rows(text, CROSSING_HEADER):
        out.append((_float(row_no, "year", y), None if x.strip() == "" else _float(row_no, "crossing_length_m", x)))
    return out
