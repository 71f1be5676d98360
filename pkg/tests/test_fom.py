import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from clearfom.errors import DimensionMismatch, EmptyOptionSet, IncomparableFom, InvalidParams, NonPositiveFactor
from clearfom.fom import (
    AmountDim,
    ClearFactors,
    FomValue,
    HierarchyLevel,
    MakimotoFactors,
    SystemSpec,
    WeightVector,
    compute_clear,
    compute_makimoto,
    device_clear,
    rank_options,
    system_capability,
)

LINK = HierarchyLevel.LINK
AREA = AmountDim.AREA


def link_factors(c=1.0, l=1.0, e=1.0, a=1.0, r=1.0):
    return ClearFactors(c, l, e, a, AREA, r)


def test_identity():
    assert compute_clear(link_factors()).value == 1.0


def test_direct_evaluation():
    # exact rational evaluation: 1e9 / (1e-9 * 1e-12 * 1e-10 * 1) = 1e40
    fv = compute_clear(link_factors(1e9, 1e-9, 1e-12, 1e-10, 1.0))
    assert fv.value == pytest.approx(1e40, rel=1e-14)


def test_energy_weight():
    f = link_factors(c=20, e=2)
    assert compute_clear(f).value == 10.0
    assert compute_clear(f, WeightVector(wE=3)).value == 2.5


@pytest.mark.parametrize(
    "mips,size,cost,power,expected",
    [(2, 2, 1, 1, 1.0), (100, 1, 1, 1, 100.0), (50, 0.5, 2000, 100, 5e-4)],
)
def test_makimoto(mips, size, cost, power, expected):
    fv = compute_makimoto(MakimotoFactors(mips, size, cost, power))
    assert fv.value == pytest.approx(expected, rel=1e-15)
    assert fv.level is HierarchyLevel.SYSTEM


def test_system_capability():
    assert system_capability(SystemSpec(1, 1)) == 1e6
    assert system_capability(SystemSpec(100, 32)) == 3.2e9
    with pytest.raises(NonPositiveFactor):
        SystemSpec(0, 32)


def test_device_clear():
    assert device_clear(1, 1, 1, 1, 1).value == 1.0
    fv = device_clear(1e10, 1e-11, 1e-15, 1e-6, 0.01)
    assert fv.value == pytest.approx(1e44, rel=1e-14)
    assert fv.level is HierarchyLevel.DEVICE
    assert "*m^" in fv.unit_signature
    with pytest.raises(NonPositiveFactor):
        device_clear(1, 1, 1, 0, 1)


@pytest.mark.parametrize("bad", [0.0, -1.0, math.inf, math.nan])
def test_rejects_non_positive(bad):
    with pytest.raises(NonPositiveFactor):
        link_factors(l=bad)


def test_dimension_must_match_level():
    with pytest.raises(DimensionMismatch):
        compute_clear(link_factors(), level=HierarchyLevel.SYSTEM)
    vol = ClearFactors(1, 1, 1, 1, AmountDim.VOLUME, 1)
    assert compute_clear(vol, level=HierarchyLevel.SYSTEM).value == 1.0
    assert compute_clear(link_factors(), level=HierarchyLevel.NETWORK).value == 1.0
    with pytest.raises(DimensionMismatch):
        ClearFactors(1, 1, 1, 1, "hypervolume", 1)


def test_weights_validated():
    with pytest.raises(InvalidParams):
        WeightVector(wE=-1)
    with pytest.raises(InvalidParams):
        WeightVector(wC=math.inf)
    assert WeightVector.parse("1,1,2,1,1") == WeightVector(wE=2)
    with pytest.raises(InvalidParams):
        WeightVector.parse("1,2")


def test_cross_level_comparison_rejected():
    link = compute_clear(link_factors())
    dev = device_clear(1, 1, 1, 1, 1)
    weighted = compute_clear(link_factors(), WeightVector(wE=2))
    for other in (dev, weighted, compute_makimoto(MakimotoFactors(1, 1, 1, 1)), 1.0):
        with pytest.raises(IncomparableFom):
            link < other
        with pytest.raises(IncomparableFom):
            link >= other
    assert compute_clear(link_factors(c=2)) > link


def test_signature_tracks_weights():
    a = compute_clear(link_factors(), WeightVector(wE=2)).unit_signature
    b = compute_clear(link_factors(), WeightVector(wA=2)).unit_signature
    assert a != b != compute_clear(link_factors()).unit_signature


def test_rank_options():
    x = link_factors(c=20, e=2)
    y = link_factors(c=6)
    ranked = rank_options([("Y", y), ("X", x)])
    assert [(lab, fv.value) for lab, fv in ranked] == [("X", 10.0), ("Y", 6.0)]
    ranked = rank_options([("X", x), ("Y", y)], WeightVector(wE=3))
    assert [(lab, fv.value) for lab, fv in ranked] == [("Y", 6.0), ("X", 2.5)]
    assert rank_options([("only", y)])[0][0] == "only"
    with pytest.raises(EmptyOptionSet):
        rank_options([])


def test_rank_ties_break_by_label():
    f = link_factors(c=3)
    assert [lab for lab, _ in rank_options([("b", f), ("c", f), ("a", f)])] == ["a", "b", "c"]


def test_serialization_roundtrip():
    f = ClearFactors(1e9, 1e-9, 1e-12, 1e-10, AREA, 3.5)
    d = f.to_dict()
    assert set(d) == {"capability_bps", "latency_s", "energy_j_per_bit", "amount_value", "amount_dim", "resistance_usd"}
    assert ClearFactors.from_dict(d) == f
    w = WeightVector(1, 2, 3, 4, 5)
    assert WeightVector.from_dict(w.to_dict()) == w
    m = MakimotoFactors(50, 0.5, 2000, 100)
    assert MakimotoFactors.from_dict(m.to_dict()) == m
    with pytest.raises(InvalidParams):
        ClearFactors.from_dict({**d, "extra": 1})
    with pytest.raises(InvalidParams):
        WeightVector.from_dict({"wQ": 1})


pos = st.floats(min_value=1e-6, max_value=1e6, allow_nan=False, allow_infinity=False)
weight = st.floats(min_value=0.1, max_value=3.0)
scale = st.floats(min_value=1e-3, max_value=1e3)


@settings(max_examples=200)
@given(pos, pos, pos, pos, pos, scale, st.integers(0, 4))
def test_homogeneity(c, l, e, a, r, k, which):
    base = compute_clear(link_factors(c, l, e, a, r)).value
    args = [c, l, e, a, r]
    args[which] *= k
    scaled = compute_clear(link_factors(*args)).value
    expected = base * k if which == 0 else base / k
    assert scaled == pytest.approx(expected, rel=1e-12)


@settings(max_examples=200)
@given(pos, pos, pos, pos, pos, weight, weight, weight, weight, weight, st.integers(0, 4))
def test_monotonicity(c, l, e, a, r, wc, wl, we, wa, wr, which):
    w = WeightVector(wc, wl, we, wa, wr)
    args = [c, l, e, a, r]
    base = compute_clear(link_factors(*args), w).value
    args[which] *= 1.5
    bumped = compute_clear(link_factors(*args), w).value
    assert bumped > base if which == 0 else bumped < base


@given(pos, pos, pos, pos, pos)
def test_unit_weights_bit_identical(c, l, e, a, r):
    f = link_factors(c, l, e, a, r)
    assert compute_clear(f).value == compute_clear(f, WeightVector(1.0, 1.0, 1.0, 1.0, 1.0)).value


@settings(max_examples=100)
@given(st.lists(st.tuples(pos, pos, pos, pos, pos), min_size=2, max_size=6), scale, st.integers(0, 4))
def test_rank_invariant_under_common_scaling(rows, k, which):
    opts = [(f"o{i}", link_factors(*row)) for i, row in enumerate(rows)]
    before = [lab for lab, _ in rank_options(opts)]
    scaled = []
    for lab, f in opts:
        vals = [f.capability, f.latency, f.energy, f.amount, f.resistance]
        vals[which] *= k
        scaled.append((lab, link_factors(*vals)))
    after = [lab for lab, _ in rank_options(scaled)]
    # near-ties can legitimately swap under rounding; only compare well-separated values
    vals = sorted(compute_clear(f).value for _, f in opts)
    if all(b / a > 1 + 1e-9 for a, b in zip(vals, vals[1:])):
        assert before == after


def test_fomvalue_float():
    assert float(FomValue(2.5, LINK, "sig")) == 2.5
