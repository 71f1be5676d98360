"""Break-even length between two link technologies and the year x length surface."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

from .errors import InvalidRange, NonPositiveEvaluation
from .fom import UNIT_WEIGHTS, FomValue, WeightVector
from .techmodels import TechnologyParams, link_clear

Evaluator = Callable[[float], "float | FomValue"]

EQUALITY_EPS = 1e-12
PRESCAN_POINTS = 8


@dataclass(frozen=True)
class LengthRange:
    min_m: float = 1e-6
    max_m: float = 1.0
    n_points: int = 200

    def __post_init__(self):
        if not (0 < self.min_m < self.max_m) or not math.isfinite(self.max_m):
            raise InvalidRange(f"need 0 < min_m < max_m, got [{self.min_m!r}, {self.max_m!r}]")
        if int(self.n_points) != self.n_points or self.n_points < 2:
            raise InvalidRange(f"n_points must be an integer >= 2, got {self.n_points!r}")
        object.__setattr__(self, "n_points", int(self.n_points))

    def points(self, n: int | None = None) -> list[float]:
        """Log-spaced lengths, endpoints exact."""
        n = self.n_points if n is None else n
        lo, hi = math.log10(self.min_m), math.log10(self.max_m)
        pts = [10.0 ** (lo + (hi - lo) * i / (n - 1)) for i in range(n)]
        pts[0], pts[-1] = self.min_m, self.max_m
        return pts


@dataclass(frozen=True)
class CrossingResult:
    crossing_length_m: float | None = None
    dominant_label: str | None = None

    @property
    def crossed(self) -> bool:
        return self.crossing_length_m is not None


@dataclass
class SurfaceGrid:
    years: list[float]
    lengths: list[float]
    values_a: list[list[float]]
    values_b: list[list[float]]
    crossing_curve: list[tuple[float, CrossingResult]] = field(default_factory=list)
    label_a: str = "a"
    label_b: str = "b"


def _log_ratio(eval_a: Evaluator, eval_b: Evaluator, length: float) -> float:
    a, b = float(eval_a(length)), float(eval_b(length))
    for v in (a, b):
        if not (v > 0 and math.isfinite(v)):
            raise NonPositiveEvaluation(f"evaluator returned {v!r} at length {length!r} m")
    return math.log(a) - math.log(b)


def break_even_length(
    eval_a: Evaluator,
    eval_b: Evaluator,
    length_range: LengthRange = LengthRange(),
    rel_tol: float = 1e-3,
    label_a: str = "a",
    label_b: str = "b",
    prescan_points: int = PRESCAN_POINTS,
) -> CrossingResult:
    """
    Length where ``eval_a`` and ``eval_b`` are equal.

    A coarse log-spaced pre-scan finds the shortest bracketing sign change of
    log(a/b); bisection in log-length then narrows it until the bracket width
    relative to its midpoint drops below ``rel_tol``. Without a sign change the
    result names whichever technology dominates the whole range.
    """
    if not (0 < rel_tol <= 0.1):
        raise InvalidRange(f"rel_tol must lie in (0, 0.1], got {rel_tol!r}")
    if prescan_points < 2:
        raise InvalidRange("prescan needs at least 2 points")

    grid = length_range.points(prescan_points)
    ratios = []
    for x in grid:
        r = _log_ratio(eval_a, eval_b, x)
        if abs(r) < EQUALITY_EPS:
            return CrossingResult(crossing_length_m=x)
        ratios.append(r)

    bracket = None
    for i in range(len(grid) - 1):
        if (ratios[i] > 0) != (ratios[i + 1] > 0):
            bracket = (grid[i], grid[i + 1], ratios[i])
            break
    if bracket is None:
        return CrossingResult(dominant_label=label_a if ratios[0] > 0 else label_b)

    lo, hi, r_lo = bracket
    while (hi - lo) / (0.5 * (hi + lo)) >= rel_tol:
        mid = math.sqrt(lo * hi)
        r_mid = _log_ratio(eval_a, eval_b, mid)
        if r_mid == 0.0:
            return CrossingResult(crossing_length_m=mid)
        if (r_mid > 0) == (r_lo > 0):
            lo, r_lo = mid, r_mid
        else:
            hi = mid
    return CrossingResult(crossing_length_m=math.sqrt(lo * hi))


def _evaluator(tech: TechnologyParams, year: float, weights: WeightVector) -> Evaluator:
    return lambda length: link_clear(tech, length, year, weights).value


def crossing_curve(
    params_a: TechnologyParams,
    params_b: TechnologyParams,
    years: Sequence[float],
    length_range: LengthRange = LengthRange(),
    weights: WeightVector = UNIT_WEIGHTS,
    rel_tol: float = 1e-3,
) -> list[tuple[float, CrossingResult]]:
    years = list(years)
    if not years:
        raise InvalidRange("years must be non-empty")
    if any(b < a for a, b in zip(years, years[1:])):
        raise InvalidRange("years must be ascending")
    return [
        (
            year,
            break_even_length(
                _evaluator(params_a, year, weights),
                _evaluator(params_b, year, weights),
                length_range,
                rel_tol,
                params_a.label,
                params_b.label,
            ),
        )
        for year in years
    ]


def surface(
    params_a: TechnologyParams,
    params_b: TechnologyParams,
    years: Sequence[float],
    length_range: LengthRange = LengthRange(),
    weights: WeightVector = UNIT_WEIGHTS,
    rel_tol: float = 1e-3,
    lengths: Sequence[float] | None = None,
) -> SurfaceGrid:
    """Evaluate both technologies on every (year, length) cell and attach the crossing curve.

    ``lengths`` overrides the log-spaced axis of ``length_range`` (which still
    bounds the crossing search).
    """
    years = list(years)
    lengths = length_range.points() if lengths is None else [float(x) for x in lengths]
    if not years or not lengths:
        raise InvalidRange("surface needs at least one year and one length")
    values_a = [[link_clear(params_a, x, y, weights).value for x in lengths] for y in years]
    values_b = [[link_clear(params_b, x, y, weights).value for x in lengths] for y in years]
    curve = crossing_curve(params_a, params_b, years, length_range, weights, rel_tol)
    return SurfaceGrid(years, lengths, values_a, values_b, curve, params_a.label, params_b.label)
