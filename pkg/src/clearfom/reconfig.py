"""Context-driven weighting: turn an operating state into CLEAR exponents and pick a technology."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .errors import EmptyOptionSet, InvalidParams
from .fom import UNIT_WEIGHTS, ClearFactors, FomValue, HierarchyLevel, WeightVector, _check_keys, rank_options


def _unit_interval(name: str, value) -> float:
    try:
        value = float(value)
    except (TypeError, ValueError):
        raise InvalidParams(f"{name} must be a number in [0, 1], got {value!r}") from None
    if not 0.0 <= value <= 1.0:
        raise InvalidParams(f"{name} must lie in [0, 1], got {value!r}")
    return value


@dataclass(frozen=True)
class OperatingContext:
    battery_fraction: float = 1.0
    load_fraction: float = 0.0  # accepted, not used by the affine policy
    footprint_pressure: float = 0.0
    latency_sensitivity: float = 0.0

    def __post_init__(self):
        for name in ("battery_fraction", "load_fraction", "footprint_pressure", "latency_sensitivity"):
            object.__setattr__(self, name, _unit_interval(name, getattr(self, name)))

    @classmethod
    def from_dict(cls, data: Mapping) -> "OperatingContext":
        _check_keys(
            data,
            set(),
            "OperatingContext",
            optional={"battery_fraction", "load_fraction", "footprint_pressure", "latency_sensitivity"},
        )
        return cls(**dict(data))


@dataclass(frozen=True)
class WeightPolicy:
    base: WeightVector = UNIT_WEIGHTS
    energy_gain: float = 1.0
    amount_gain: float = 1.0
    latency_gain: float = 1.0

    def __post_init__(self):
        if isinstance(self.base, Mapping):
            object.__setattr__(self, "base", WeightVector.from_dict(self.base))
        for name in ("energy_gain", "amount_gain", "latency_gain"):
            g = getattr(self, name)
            try:
                g = float(g)
            except (TypeError, ValueError):
                raise InvalidParams(f"{name} must be a number, got {g!r}") from None
            if not (math.isfinite(g) and g >= 0):
                raise InvalidParams(f"{name} must be finite and >= 0, got {g!r}")
            object.__setattr__(self, name, g)

    @classmethod
    def from_dict(cls, data: Mapping) -> "WeightPolicy":
        _check_keys(data, set(), "WeightPolicy", optional={"base", "energy_gain", "amount_gain", "latency_gain"})
        return cls(**dict(data))


@dataclass(frozen=True)
class Decision:
    label: str
    value: FomValue
    weights: WeightVector
    trace: list[tuple[str, FomValue]] = field(default_factory=list)

    def report(self) -> str:
        w = self.weights
        lines = [
            f"weights: wC={w.wC!r} wL={w.wL!r} wE={w.wE!r} wA={w.wA!r} wR={w.wR!r}",
            f"signature: {self.value.unit_signature}",
        ]
        for rank, (label, fv) in enumerate(self.trace, start=1):
            lines.append(f"rank {rank}: {label} = {fv.value!r}")
        lines.append(f"selected: {self.label}")
        return "\n".join(lines) + "\n"


def weights_from_context(ctx: OperatingContext, policy: WeightPolicy = WeightPolicy()) -> WeightVector:
    """
    Raise exponents with the pressures in ``ctx``.

    An empty battery adds ``energy_gain`` to the energy exponent (CLEAR -> CLE^2AR
    at gain 1), footprint pressure raises the amount exponent, latency
    sensitivity the latency exponent. Capability and resistance stay at base.
    """
    b = policy.base
    return WeightVector(
        wC=b.wC,
        wL=b.wL + policy.latency_gain * ctx.latency_sensitivity,
        wE=b.wE + policy.energy_gain * (1.0 - ctx.battery_fraction),
        wA=b.wA + policy.amount_gain * ctx.footprint_pressure,
        wR=b.wR,
    )


def select_technology(
    options: Sequence[tuple[str, ClearFactors]],
    ctx: OperatingContext,
    policy: WeightPolicy = WeightPolicy(),
    level: HierarchyLevel = HierarchyLevel.LINK,
) -> Decision:
    if not options:
        raise EmptyOptionSet("no technology options to select from")
    weights = weights_from_context(ctx, policy)
    ranked = rank_options(options, weights, level)
    label, value = ranked[0]
    return Decision(label, value, weights, ranked)
