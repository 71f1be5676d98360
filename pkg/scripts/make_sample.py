"""Regenerate src/clearfom/data/sample_history.csv.

The rows are synthetic: smooth textbook-style trends with seeded jitter,
labelled SYN-*. They illustrate the fitting workflow and are not measured
machine data.
"""

import csv
import math
import sys
from pathlib import Path

import numpy as np

from clearfom.trends import CSV_COLUMNS

OUT = Path(__file__).resolve().parents[1] / "src" / "clearfom" / "data" / "sample_history.csv"


def tech_class(year):
    if year < 1958:
        return "vacuum_tube"
    if year < 1971:
        return "transistor"
    if year < 2006:
        return "mos"
    return "multicore"


def component_count(year):
    if year < 1958:
        return 18000 * 2 ** ((year - 1946) / 6.0)
    if year <= 1965:
        return 2 ** (year - 1959)
    # slows to 2x every two years after 1965
    return 2 ** 6 * 2 ** ((year - 1965) / 2.0)


def row(year, rng):
    j = lambda: float(np.exp(rng.normal(0.0, 0.15)))
    t = year - 1946
    mips = 0.005 * 2 ** (t / 2.9) * j()
    bits = [10, 16, 32, 64][min(3, int(t // 18))]
    power = 1.5e5 * 2 ** (-t / 6.5) * j()
    size = 80.0 * 2 ** (-t / 5.0) * j()
    cost = 5e5 * 2 ** (-t / 7.5) * j()
    return {
        "year": round(year, 1),
        "label": f"SYN-{tech_class(year).upper()}-{year:.1f}",
        "tech_class": tech_class(year),
        "component_count": max(1, int(round(component_count(year) * j()))),
        "mips": float(f"{mips:.4g}"),
        "size_m3": float(f"{size:.4g}"),
        "power_w": float(f"{power:.4g}"),
        "cost_usd": float(f"{cost:.4g}"),
        "instruction_length_bits": bits,
    }


def main():
    rng = np.random.default_rng(1946)
    years = np.linspace(1946.0, 2015.0, 40)
    rows = [row(float(y), rng) for y in years]
    with open(OUT, "w", newline="", encoding="utf-8") as fh:
        w = csv.DictWriter(fh, fieldnames=CSV_COLUMNS, lineterminator="\n")
        w.writeheader()
        w.writerows(rows)
    print(f"wrote {len(rows)} rows to {OUT}", file=sys.stderr)


if __name__ == "__main__":
    main()
