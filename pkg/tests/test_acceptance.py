"""Exit criteria. Each test carries a criterion marker; the summary prints one line per criterion."""

import io
import math
import time
import xml.etree.ElementTree as ET
from importlib import resources

import numpy as np
import pytest

from clearfom.breakeven import LengthRange, break_even_length, crossing_curve, surface
from clearfom.cli import main
from clearfom.fom import AmountDim, ClearFactors, WeightVector, compute_clear
from clearfom.gridio import emit_grid_csv, read_grid_csv
from clearfom.reconfig import OperatingContext, WeightPolicy, select_technology
from clearfom.techmodels import cost_resistance, energy_per_bit, landauer_limit, load_params, shannon_capacity
from clearfom.trends import dataset_to_csv, detect_deviation, fit_trend, ingest_csv, load_sample

criterion = pytest.mark.criterion
SAMPLE = str(resources.files("clearfom").joinpath("data/sample_history.csv"))


def link(c, l, e, a, r):
    return ClearFactors(c, l, e, a, AmountDim.AREA, r)


@criterion("AC1", "CLEAR identity, homogeneity and monotonicity over 1000+ random factor sets, < 1 s")
def test_ac1_clear_properties():
    t0 = time.perf_counter()
    assert compute_clear(link(1, 1, 1, 1, 1)).value == 1.0

    rng = np.random.default_rng(2016)
    n = 1200
    violations = 0
    for _ in range(n):
        f = 10.0 ** rng.uniform(-6, 6, 5)
        w = WeightVector(*rng.uniform(0.1, 3.0, 5))
        base = compute_clear(link(*f)).value
        wbase = compute_clear(link(*f), w).value
        for i in range(5):
            # power-of-two scaling is exact in binary floating point
            k2 = 2.0 ** int(rng.integers(-20, 21))
            g = f.copy()
            g[i] *= k2
            got = compute_clear(link(*g)).value
            if got != (base * k2 if i == 0 else base / k2):
                violations += 1
            k = 10.0 ** rng.uniform(-3, 3)
            g = f.copy()
            g[i] *= k
            got = compute_clear(link(*g)).value
            if not math.isclose(got, base * k if i == 0 else base / k, rel_tol=1e-12):
                violations += 1
            g = f.copy()
            g[i] *= 1.0 + rng.uniform(0.01, 1.0)
            bumped = compute_clear(link(*g), w).value
            if not (bumped > wbase if i == 0 else bumped < wbase):
                violations += 1
    elapsed = time.perf_counter() - t0
    assert violations == 0
    assert elapsed < 1.0, f"took {elapsed:.3f} s"


@criterion("AC2", "doubling time 12.0 +/- 1e-6 months noiseless (r2 = 1), 12.0 +/- 0.1 over 100 noisy seeds, < 5 s")
def test_ac2_doubling_time():
    t0 = time.perf_counter()
    years = np.arange(1946, 2016, dtype=float)
    assert years.size == 70
    clean = [(y, 2.0 ** (y - 1946)) for y in years]
    fit = fit_trend(clean)
    assert abs(fit.doubling_time_months - 12.0) <= 1e-6
    assert fit.r_squared == 1.0
    for seed in range(100):
        rng = np.random.default_rng(seed)
        noisy = [(y, v * (1 + rng.uniform(-0.01, 0.01))) for y, v in clean]
        assert abs(fit_trend(noisy).doubling_time_months - 12.0) <= 0.1, seed
    assert time.perf_counter() - t0 < 5.0


@criterion("AC3", "Landauer clamp 1940-2200 at 300 K, reached by 2200; 2.75 zJ/bit at 287.4 K within 0.2%")
def test_ac3_landauer():
    floor = landauer_limit(300.0)
    assert abs(floor - 2.8707e-21) / 2.8707e-21 <= 1e-4
    for tech in load_params():
        assert tech.energy.temperature == 300.0
        for year in np.arange(1940.0, 2200.5, 0.5):
            assert energy_per_bit(year, tech.energy) >= floor
        assert energy_per_bit(2200.0, tech.energy) == floor
    assert abs(landauer_limit(287.4) - 2.75e-21) / 2.75e-21 <= 2e-3


@criterion("AC4", "Shannon capacity(1e9, 15) = 4e9 exactly; capacity(B, 0) = 0 for 100 random B")
def test_ac4_shannon():
    assert shannon_capacity(1e9, 15) == 4e9
    rng = np.random.default_rng(5)
    for b in 10.0 ** rng.uniform(0, 12, 100):
        assert shannon_capacity(b, 0.0) == 0.0


@criterion("AC5", "2016 anchors: cost ratio in [1e-9, 1e-6], break-even > 1 cm, shrinking over 2016-2030, < 2 s")
def test_ac5_calibration_anchors():
    t0 = time.perf_counter()
    elec, hyb = load_params()
    ratio = cost_resistance(elec, 2016) / cost_resistance(hyb, 2016)
    assert 1e-9 <= ratio <= 1e-6
    rng = LengthRange(1e-6, 1.0, 200)
    curve = crossing_curve(elec, hyb, list(np.linspace(2016.0, 2030.0, 11)), rng, rel_tol=1e-3)
    lengths = [r.crossing_length_m for _, r in curve]
    assert None not in lengths
    assert lengths[0] > 0.01
    assert all(b <= a for a, b in zip(lengths, lengths[1:]))
    assert time.perf_counter() - t0 < 2.0


@criterion("AC6", "break-even oracle at 0.01 m within rel_tol 1e-3; symmetric on 50 random monotone pairs")
def test_ac6_break_even_oracle():
    c = 3.7
    res = break_even_length(lambda L: c, lambda L: c * 0.01 / L, LengthRange(), 1e-3)
    assert abs(res.crossing_length_m - 0.01) / 0.01 < 1e-3

    rng = np.random.default_rng(6)
    for _ in range(50):
        root = 10.0 ** rng.uniform(-5.5, -0.5)
        pa, pb = rng.uniform(-3, 3, 2)
        while abs(pa - pb) < 0.05:
            pb = rng.uniform(-3, 3)
        ka = 10.0 ** rng.uniform(-20, 20)
        a = lambda L, p=pa, k=ka, r=root: k * (L / r) ** p
        b = lambda L, p=pb, k=ka, r=root: k * (L / r) ** p
        ab = break_even_length(a, b, rel_tol=1e-3, label_a="a", label_b="b")
        ba = break_even_length(b, a, rel_tol=1e-3, label_a="b", label_b="a")
        assert ab.crossed and ba.crossed
        assert abs(ab.crossing_length_m - ba.crossing_length_m) / ab.crossing_length_m < 1e-3
        assert abs(ab.crossing_length_m - root) / root < 1e-3


def broken(break_year, start=1946, end=2015):
    out = []
    for y in range(start, end + 1):
        lg = y - start if y <= break_year else (break_year - start) + 0.5 * (y - break_year)
        out.append((float(y), 2.0**lg))
    return out


@criterion("AC7", "deviation from 2x/year to 2x/2yr detected within [y*, y*+4] for y* in {1965, 1978}")
def test_ac7_deviation():
    for y_star in (1965, 1978):
        dev = detect_deviation(broken(y_star)).deviation_year
        assert dev is not None and y_star <= dev <= y_star + 4, (y_star, dev)


@criterion("AC8", "reconfiguration flip: X at full battery, Y at empty battery with energy_gain 2")
def test_ac8_reconfiguration():
    opts = [("X", link(20, 1, 2, 1, 1)), ("Y", link(6, 1, 1, 1, 1))]
    pol = WeightPolicy(energy_gain=2)
    full = select_technology(opts, OperatingContext(battery_fraction=1.0), pol)
    empty = select_technology(opts, OperatingContext(battery_fraction=0.0), pol)
    assert (full.label, full.value.value) == ("X", 10.0)
    assert (empty.label, empty.value.value, empty.weights.wE) == ("Y", 6.0, 3.0)


@criterion("AC9", "byte-identical CLI runs, lossless grid and dataset CSV round trips, well-formed SVG")
def test_ac9_determinism_roundtrips(tmp_path, capsys):
    def invoke(tag):
        d = tmp_path / tag
        d.mkdir()
        codes = [
            main(["surface", "--years", "2016:2030:15", "--out", str(d / "grid.csv"), "--crossing-out", str(d / "cross.csv"), "--svg", str(d / "surface.svg")]),
            main(["fit", "--input", SAMPLE, "--fom", "clear", "--svg", str(d / "fit.svg"), "--out", str(d / "fit.txt")]),
            main(["breakeven", "--out", str(d / "be.txt")]),
        ]
        assert codes == [0, 0, 0]
        return {p.name: p.read_bytes() for p in sorted(d.iterdir())}

    first, second = invoke("one"), invoke("two")
    assert first == second

    for name in ("surface.svg", "fit.svg"):
        ET.fromstring(first[name])

    elec, hyb = load_params()
    grid = surface(elec, hyb, [2016.0, 2023.5, 2030.0], LengthRange(1e-6, 1.0, 17))
    buf = io.StringIO()
    emit_grid_csv(grid, buf)
    back = read_grid_csv(buf.getvalue())
    assert (back.years, back.lengths, back.values_a, back.values_b) == (grid.years, grid.lengths, grid.values_a, grid.values_b)
    assert read_grid_csv(first["grid.csv"].decode()).values_a == surface(elec, hyb, list(np.linspace(2016, 2030, 15))).values_a

    data = load_sample()
    assert ingest_csv(dataset_to_csv(data)) == data
