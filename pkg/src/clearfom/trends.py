"""
Historical technology records, per-record figures of merit and log-linear trends.

Fits are done on log2 of the value so the slope reads directly as doublings
per year (slope 1.0 is the 2x/year pace, a 12 month doubling time).
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field, replace
from enum import Enum
from importlib import resources
from typing import IO, Iterable, Sequence

import numpy as np

from .errors import (
    DegenerateYears,
    EmptyDataset,
    InsufficientPoints,
    InvalidParams,
    MalformedHeader,
    MalformedRow,
    NoUsableRecords,
)
from .fom import (
    UNIT_WEIGHTS,
    AmountDim,
    ClearFactors,
    HierarchyLevel,
    MakimotoFactors,
    SystemSpec,
    WeightVector,
    compute_clear,
    compute_makimoto,
    system_capability,
)

CSV_COLUMNS = (
    "year",
    "label",
    "tech_class",
    "component_count",
    "mips",
    "size_m3",
    "power_w",
    "cost_usd",
    "instruction_length_bits",
)
OPTIONAL_COLUMNS = ("latency_s",)
_NUMERIC = ("mips", "size_m3", "power_w", "cost_usd", "instruction_length_bits", "latency_s")


class TechClass(Enum):
    VACUUM_TUBE = "vacuum_tube"
    TRANSISTOR = "transistor"
    MOS = "mos"
    MULTICORE = "multicore"
    PHOTONIC = "photonic"


class FomKind(Enum):
    COMPONENT_COUNT = "component_count"
    MAKIMOTO = "makimoto"
    CLEAR = "clear"


@dataclass(frozen=True)
class HistoricalRecord:
    year: float
    label: str
    tech_class: TechClass
    component_count: int | None = None
    mips: float | None = None
    size_m3: float | None = None
    power_w: float | None = None
    cost_usd: float | None = None
    instruction_length_bits: float | None = None
    latency_s: float | None = None

    def __post_init__(self):
        if not 1900 <= self.year <= 2100:
            raise InvalidParams(f"year {self.year!r} outside [1900, 2100]")
        object.__setattr__(self, "tech_class", TechClass(self.tech_class))
        if self.component_count is not None and self.component_count <= 0:
            raise InvalidParams("component_count must be positive")
        for name in _NUMERIC:
            v = getattr(self, name)
            if v is not None and not (v > 0 and math.isfinite(v)):
                raise InvalidParams(f"{name} must be positive, got {v!r}")


@dataclass(frozen=True)
class Dataset:
    records: tuple[HistoricalRecord, ...]

    def __post_init__(self):
        object.__setattr__(self, "records", tuple(sorted(self.records, key=lambda r: r.year)))

    def __len__(self):
        return len(self.records)

    def __iter__(self):
        return iter(self.records)


@dataclass(frozen=True)
class TrendFit:
    slope_log2_per_year: float
    intercept_log2: float
    r_squared: float
    n_points: int
    year_range: tuple[float, float]

    @property
    def doubling_time_months(self) -> float:
        if self.slope_log2_per_year <= 0:
            return math.inf
        return 12.0 / self.slope_log2_per_year


@dataclass
class DeviationReport:
    reference_slope_log2_per_year: float = 1.0
    consecutive_threshold: int = 3
    factor_threshold: float = 2.0
    deviation_year: float | None = None

    def __post_init__(self):
        if not self.factor_threshold > 1:
            raise InvalidParams("factor_threshold must be > 1")
        if int(self.consecutive_threshold) != self.consecutive_threshold or self.consecutive_threshold < 1:
            raise InvalidParams("consecutive_threshold must be an integer >= 1")


class FomSeries(list):
    """List of ``(year, value)`` pairs that also remembers how many records were skipped."""

    def __init__(self, points: Iterable[tuple[float, float]] = (), skipped: int = 0):
        super().__init__(points)
        self.skipped = skipped


# --- CSV --------------------------------------------------------------------


def _parse_cell(row_no: int, column: str, text: str):
    text = text.strip()
    if text == "":
        return None
    try:
        if column == "component_count":
            value = int(text)
        else:
            value = float(text)
    except ValueError:
        raise MalformedRow(row_no, column, f"not a number: {text!r}") from None
    if not (value > 0 and math.isfinite(value)):
        raise MalformedRow(row_no, column, f"must be strictly positive, got {text!r}")
    return value


def ingest_csv(source: IO[bytes] | IO[str] | bytes | str) -> Dataset:
    """
    Parse a technology history CSV.

    The header must start with the nine standard columns in order; a trailing
    ``latency_s`` column is accepted. Empty cells mean "absent". Row numbers in
    errors count the header as row 1.
    """
    if isinstance(source, bytes):
        text = source.decode("utf-8")
    elif isinstance(source, str):
        text = source
    else:
        raw = source.read()
        text = raw.decode("utf-8") if isinstance(raw, bytes) else raw
    if text.startswith("﻿"):
        text = text[1:]

    reader = csv.reader(io.StringIO(text))
    try:
        header = next(reader)
    except StopIteration:
        raise MalformedHeader("empty input, expected a header line") from None
    header = [h.strip() for h in header]
    n_std = len(CSV_COLUMNS)
    if tuple(header[:n_std]) != CSV_COLUMNS or any(h not in OPTIONAL_COLUMNS for h in header[n_std:]):
        raise MalformedHeader(f"expected header {','.join(CSV_COLUMNS)}[,latency_s], got {','.join(header)}")

    records = []
    for row_no, row in enumerate(reader, start=2):
        if not row or all(not c.strip() for c in row):
            continue
        if len(row) != len(header):
            raise MalformedRow(row_no, "*", f"expected {len(header)} cells, got {len(row)}")
        cells = dict(zip(header, row))
        year_text = cells["year"].strip()
        try:
            year = float(year_text)
        except ValueError:
            raise MalformedRow(row_no, "year", f"not a number: {year_text!r}") from None
        if not 1900 <= year <= 2100:
            raise MalformedRow(row_no, "year", f"{year_text} outside [1900, 2100]")
        try:
            tech_class = TechClass(cells["tech_class"].strip())
        except ValueError:
            raise MalformedRow(row_no, "tech_class", f"unknown class {cells['tech_class']!r}") from None
        kwargs = {c: _parse_cell(row_no, c, cells[c]) for c in header[3:]}
        records.append(HistoricalRecord(year=year, label=cells["label"], tech_class=tech_class, **kwargs))

    if not records:
        raise EmptyDataset("no data rows")
    return Dataset(tuple(records))


def _fmt(value) -> str:
    if value is None:
        return ""
    return str(value) if isinstance(value, int) else repr(float(value))


def dataset_to_csv(data: Dataset) -> str:
    columns = list(CSV_COLUMNS)
    if any(r.latency_s is not None for r in data.records):
        columns.append("latency_s")
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for r in data.records:
        row = [_fmt(r.year), r.label, r.tech_class.value]
        row += [_fmt(getattr(r, c)) for c in columns[3:]]
        writer.writerow(row)
    return buf.getvalue()


def load_sample() -> Dataset:
    """Shipped synthetic demo dataset (illustrative, not measured history)."""
    return ingest_csv(resources.files("clearfom").joinpath("data/sample_history.csv").read_bytes())


# --- figures of merit per record ------------------------------------------


def record_clear_factors(rec: HistoricalRecord) -> ClearFactors | None:
    """System-level CLEAR factors for a machine, or None when fields are missing."""
    needed = (rec.mips, rec.instruction_length_bits, rec.power_w, rec.size_m3, rec.cost_usd)
    if any(v is None for v in needed):
        return None
    capability = system_capability(SystemSpec(rec.mips, rec.instruction_length_bits))
    # per-instruction time stands in for latency when none was recorded
    latency = rec.latency_s if rec.latency_s is not None else 1.0 / (rec.mips * 1e6)
    return ClearFactors(
        capability=capability,
        latency=latency,
        energy=rec.power_w / capability,
        amount=rec.size_m3,
        amount_dim=AmountDim.VOLUME,
        resistance=rec.cost_usd,
    )


def fom_series(data: Dataset | Iterable[HistoricalRecord], fom: FomKind | str, weights: WeightVector = UNIT_WEIGHTS) -> FomSeries:
    fom = FomKind(fom)
    points = []
    skipped = 0
    for rec in data:
        if fom is FomKind.COMPONENT_COUNT:
            value = rec.component_count
        elif fom is FomKind.MAKIMOTO:
            if None in (rec.mips, rec.size_m3, rec.cost_usd, rec.power_w):
                value = None
            else:
                value = compute_makimoto(MakimotoFactors(rec.mips, rec.size_m3, rec.cost_usd, rec.power_w)).value
        else:
            factors = record_clear_factors(rec)
            value = None if factors is None else compute_clear(factors, weights, HierarchyLevel.SYSTEM).value
        if value is None:
            skipped += 1
        else:
            points.append((rec.year, float(value)))
    if not points:
        raise NoUsableRecords(f"no record carries the fields needed for {fom.value}")
    return FomSeries(points, skipped)


# --- fitting ----------------------------------------------------------------


def fit_trend(series: Sequence[tuple[float, float]]) -> TrendFit:
    """Ordinary least squares of log2(value) against year."""
    if len(series) < 2:
        raise InsufficientPoints(f"need at least 2 points, got {len(series)}")
    years = np.array([p[0] for p in series], dtype=float)
    values = np.array([p[1] for p in series], dtype=float)
    if np.any(values <= 0) or not np.all(np.isfinite(values)):
        raise InvalidParams("trend values must be positive and finite")
    if np.all(years == years[0]):
        raise DegenerateYears("all points share one year")
    y = np.log2(values)
    t_mean, y_mean = years.mean(), y.mean()
    dt, dy = years - t_mean, y - y_mean
    slope = float(np.dot(dt, dy) / np.dot(dt, dt))
    intercept = float(y_mean - slope * t_mean)
    ss_tot = float(np.dot(dy, dy))
    resid = dy - slope * dt
    ss_res = float(np.dot(resid, resid))
    if ss_tot == 0.0:
        r2 = 1.0
    else:
        r2 = min(1.0, max(0.0, 1.0 - ss_res / ss_tot))
    return TrendFit(slope, intercept, r2, len(series), (float(years.min()), float(years.max())))


def extrapolate(fit: TrendFit, year: float) -> float:
    return 2.0 ** (fit.slope_log2_per_year * year + fit.intercept_log2)


def detect_deviation(series: Sequence[tuple[float, float]], report: DeviationReport | None = None) -> DeviationReport:
    """
    Find where a series falls off a reference growth line.

    The reference 2^(slope_ref * (t - t0)) is anchored on the first point. The
    deviation year is the first point of the earliest run of
    ``consecutive_threshold`` points lying more than ``factor_threshold`` below it.
    """
    report = report or DeviationReport()
    if len(series) < report.consecutive_threshold + 2:
        raise InsufficientPoints(
            f"need at least {report.consecutive_threshold + 2} points, got {len(series)}"
        )
    t0, v0 = series[0]
    limit = math.log2(report.factor_threshold)
    run_start = None
    run_len = 0
    for t, v in series:
        gap = report.reference_slope_log2_per_year * (t - t0) - (math.log2(v) - math.log2(v0))
        if gap > limit:
            if run_len == 0:
                run_start = t
            run_len += 1
            if run_len >= report.consecutive_threshold:
                return replace(report, deviation_year=run_start)
        else:
            run_len = 0
    return replace(report, deviation_year=None)
