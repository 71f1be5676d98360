"""CLEAR figure-of-merit modeling: link models, trend fits and break-even analysis."""

__version__ = "0.1.0"

from .breakeven import CrossingResult, LengthRange, SurfaceGrid, break_even_length, crossing_curve, surface
from .fom import (
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
from .reconfig import OperatingContext, WeightPolicy, select_technology, weights_from_context
from .techmodels import (
    TechnologyParams,
    cost_resistance,
    energy_per_bit,
    landauer_limit,
    link_capability,
    link_clear,
    load_params,
    parallelism_factor,
    shannon_capacity,
)
from .trends import Dataset, HistoricalRecord, TrendFit, detect_deviation, extrapolate, fit_trend, fom_series, ingest_csv
