"""The shipped defaults must keep satisfying the three 2016 anchors."""

from clearfom.breakeven import LengthRange, crossing_curve
from clearfom.techmodels import cost_resistance, energy_per_bit, landauer_limit, load_params


def test_cost_ratio_2016():
    elec, hyb = load_params()
    ratio = cost_resistance(elec, 2016) / cost_resistance(hyb, 2016)
    assert 1e-9 <= ratio <= 1e-6


def test_break_even_beyond_chip_scale_2016():
    elec, hyb = load_params()
    (_, res), = crossing_curve(elec, hyb, [2016], LengthRange(1e-6, 1.0, 200))
    assert res.crossed and res.crossing_length_m > 0.01


def test_break_even_shrinks_through_2030():
    elec, hyb = load_params()
    curve = crossing_curve(elec, hyb, list(range(2016, 2031)))
    lengths = [r.crossing_length_m for _, r in curve]
    assert None not in lengths
    assert all(b <= a for a, b in zip(lengths, lengths[1:]))


def test_defaults_reach_landauer_by_2200():
    for tech in load_params():
        assert energy_per_bit(2200, tech.energy) == landauer_limit(tech.energy.temperature)
