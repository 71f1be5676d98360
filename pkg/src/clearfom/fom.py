"""
CLEAR and Makimoto figures of merit.

CLEAR = C^wC / (L^wL * E^wE * A^wA * R^wR), with

    C  capability   bits/second
    L  latency      seconds
    E  energy       joules/bit
    A  amount       m, m^2 or m^3 depending on hierarchy level
    R  resistance   USD

Values are wrapped in ``FomValue`` which refuses to be ordered against a
value from another hierarchy level or with a different weighting, so a
CLE^2AR number never silently gets compared with a plain CLEAR number.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, fields
from enum import Enum
from typing import Iterable, Mapping, Sequence

from .errors import DimensionMismatch, EmptyOptionSet, IncomparableFom, InvalidParams, NonPositiveFactor


class HierarchyLevel(Enum):
    DEVICE = "device"
    LINK = "link"
    NETWORK = "network"
    SYSTEM = "system"


class AmountDim(Enum):
    LENGTH = "length_m"
    AREA = "area_m2"
    VOLUME = "volume_m3"


# Devices collapse to a scaling length, links and networks are planar, systems are volumes.
LEVEL_AMOUNT_DIM = {
    HierarchyLevel.DEVICE: AmountDim.LENGTH,
    HierarchyLevel.LINK: AmountDim.AREA,
    HierarchyLevel.NETWORK: AmountDim.AREA,
    HierarchyLevel.SYSTEM: AmountDim.VOLUME,
}

_AMOUNT_UNIT = {AmountDim.LENGTH: "m", AmountDim.AREA: "m2", AmountDim.VOLUME: "m3"}


def _check_positive(name: str, value: float) -> float:
    try:
        value = float(value)
    except (TypeError, ValueError):
        raise NonPositiveFactor(f"{name} must be a positive number, got {value!r}") from None
    if not (value > 0.0 and math.isfinite(value)):
        raise NonPositiveFactor(f"{name} must be strictly positive and finite, got {value!r}")
    return value


def _fmt_exp(w: float) -> str:
    return repr(float(w))


@dataclass(frozen=True)
class ClearFactors:
    capability: float  # bits/second
    latency: float  # seconds
    energy: float  # joules/bit
    amount: float
    amount_dim: AmountDim
    resistance: float  # USD

    def __post_init__(self):
        for name in ("capability", "latency", "energy", "amount", "resistance"):
            object.__setattr__(self, name, _check_positive(name, getattr(self, name)))
        if not isinstance(self.amount_dim, AmountDim):
            try:
                object.__setattr__(self, "amount_dim", AmountDim(self.amount_dim))
            except ValueError:
                raise DimensionMismatch(f"unknown amount dimension {self.amount_dim!r}") from None

    def to_dict(self) -> dict:
        return {
            "capability_bps": self.capability,
            "latency_s": self.latency,
            "energy_j_per_bit": self.energy,
            "amount_value": self.amount,
            "amount_dim": self.amount_dim.value,
            "resistance_usd": self.resistance,
        }

    @classmethod
    def from_dict(cls, data: Mapping) -> "ClearFactors":
        expected = {"capability_bps", "latency_s", "energy_j_per_bit", "amount_value", "amount_dim", "resistance_usd"}
        _check_keys(data, expected, "ClearFactors")
        return cls(
            capability=data["capability_bps"],
            latency=data["latency_s"],
            energy=data["energy_j_per_bit"],
            amount=data["amount_value"],
            amount_dim=data["amount_dim"],
            resistance=data["resistance_usd"],
        )


@dataclass(frozen=True)
class WeightVector:
    """Per-factor exponents. All ones gives the plain CLEAR value."""

    wC: float = 1.0
    wL: float = 1.0
    wE: float = 1.0
    wA: float = 1.0
    wR: float = 1.0

    def __post_init__(self):
        for f in fields(self):
            w = getattr(self, f.name)
            try:
                w = float(w)
            except (TypeError, ValueError):
                raise InvalidParams(f"weight {f.name} must be a number, got {w!r}") from None
            if not math.isfinite(w) or w < 0:
                raise InvalidParams(f"weight {f.name} must be finite and >= 0, got {w!r}")
            object.__setattr__(self, f.name, w)

    def as_tuple(self) -> tuple[float, float, float, float, float]:
        return (self.wC, self.wL, self.wE, self.wA, self.wR)

    def to_dict(self) -> dict:
        return {f.name: getattr(self, f.name) for f in fields(self)}

    @classmethod
    def from_dict(cls, data: Mapping) -> "WeightVector":
        _check_keys(data, set(), "WeightVector", optional={"wC", "wL", "wE", "wA", "wR"})
        return cls(**dict(data))

    @classmethod
    def parse(cls, text: str) -> "WeightVector":
        """Parse ``"wC,wL,wE,wA,wR"``."""
        parts = [p.strip() for p in text.split(",")]
        if len(parts) != 5:
            raise InvalidParams(f"expected 5 comma-separated weights, got {text!r}")
        try:
            return cls(*(float(p) for p in parts))
        except ValueError:
            raise InvalidParams(f"non-numeric weight in {text!r}") from None


UNIT_WEIGHTS = WeightVector()


@dataclass(frozen=True)
class FomValue:
    value: float
    level: HierarchyLevel
    unit_signature: str

    def _check(self, other) -> None:
        if not isinstance(other, FomValue):
            raise IncomparableFom(f"cannot order FomValue against {type(other).__name__}")
        if other.level is not self.level or other.unit_signature != self.unit_signature:
            raise IncomparableFom(
                f"cannot compare {self.level.value}:{self.unit_signature} "
                f"with {other.level.value}:{other.unit_signature}"
            )

    def __lt__(self, other):
        self._check(other)
        return self.value < other.value

    def __le__(self, other):
        self._check(other)
        return self.value <= other.value

    def __gt__(self, other):
        self._check(other)
        return self.value > other.value

    def __ge__(self, other):
        self._check(other)
        return self.value >= other.value

    def __float__(self):
        return self.value


@dataclass(frozen=True)
class MakimotoFactors:
    mips: float
    size: float  # m^3
    cost: float  # USD
    power: float  # W

    def __post_init__(self):
        for name in ("mips", "size", "cost", "power"):
            object.__setattr__(self, name, _check_positive(name, getattr(self, name)))

    def to_dict(self) -> dict:
        return {"mips": self.mips, "size_m3": self.size, "cost_usd": self.cost, "power_w": self.power}

    @classmethod
    def from_dict(cls, data: Mapping) -> "MakimotoFactors":
        _check_keys(data, {"mips", "size_m3", "cost_usd", "power_w"}, "MakimotoFactors")
        return cls(mips=data["mips"], size=data["size_m3"], cost=data["cost_usd"], power=data["power_w"])


@dataclass(frozen=True)
class SystemSpec:
    mips: float
    instruction_length_bits: float

    def __post_init__(self):
        object.__setattr__(self, "mips", _check_positive("mips", self.mips))
        object.__setattr__(
            self, "instruction_length_bits", _check_positive("instruction_length_bits", self.instruction_length_bits)
        )


def _check_keys(data: Mapping, required: set, what: str, optional: set = frozenset()) -> None:
    if not isinstance(data, Mapping):
        raise InvalidParams(f"{what}: expected a key-value object, got {type(data).__name__}")
    keys = set(data)
    missing = required - keys
    if missing:
        raise InvalidParams(f"{what}: missing keys {sorted(missing)}")
    unknown = keys - required - set(optional)
    if unknown:
        raise InvalidParams(f"{what}: unknown keys {sorted(unknown)}")


def clear_signature(amount_dim: AmountDim, weights: WeightVector) -> str:
    wC, wL, wE, wA, wR = weights.as_tuple()
    return (
        f"CLEAR[b/s^{_fmt_exp(wC)}/(s^{_fmt_exp(wL)}*J/b^{_fmt_exp(wE)}"
        f"*{_AMOUNT_UNIT[amount_dim]}^{_fmt_exp(wA)}*USD^{_fmt_exp(wR)})]"
    )


MAKIMOTO_SIGNATURE = "MAKIMOTO[MIPS/(m3*USD*W)]"


def _clear_value(c: float, l: float, e: float, a: float, r: float, weights: WeightVector) -> float:
    wC, wL, wE, wA, wR = weights.as_tuple()
    value = c**wC / (l**wL * e**wE * a**wA * r**wR)
    if not (value > 0.0 and math.isfinite(value)):
        raise NonPositiveFactor(f"CLEAR value under/overflowed to {value!r}")
    return value


def compute_clear(
    factors: ClearFactors, weights: WeightVector = UNIT_WEIGHTS, level: HierarchyLevel = HierarchyLevel.LINK
) -> FomValue:
    level = HierarchyLevel(level)
    expected = LEVEL_AMOUNT_DIM[level]
    if factors.amount_dim is not expected:
        raise DimensionMismatch(
            f"{level.value} level expects amount in {expected.value}, got {factors.amount_dim.value}"
        )
    value = _clear_value(
        factors.capability, factors.latency, factors.energy, factors.amount, factors.resistance, weights
    )
    return FomValue(value, level, clear_signature(expected, weights))


def compute_makimoto(factors: MakimotoFactors) -> FomValue:
    value = factors.mips / (factors.size * factors.cost * factors.power)
    return FomValue(value, HierarchyLevel.SYSTEM, MAKIMOTO_SIGNATURE)


def system_capability(spec: SystemSpec) -> float:
    """Bits/second handled by a machine: MIPS times instruction width."""
    return spec.mips * 1e6 * spec.instruction_length_bits


def device_clear(
    speed: float,
    response_time: float,
    energy: float,
    scaling_length: float,
    resistance: float,
    weights: WeightVector = UNIT_WEIGHTS,
) -> FomValue:
    # the signal distance equals the device length and cancels, leaving a 1-D amount
    factors = ClearFactors(speed, response_time, energy, scaling_length, AmountDim.LENGTH, resistance)
    return compute_clear(factors, weights, HierarchyLevel.DEVICE)


def rank_options(
    options: Sequence[tuple[str, ClearFactors]] | Iterable[tuple[str, ClearFactors]],
    weights: WeightVector = UNIT_WEIGHTS,
    level: HierarchyLevel = HierarchyLevel.LINK,
) -> list[tuple[str, FomValue]]:
    """Evaluate every option and sort best first; equal values fall back to label order."""
    scored = [(label, compute_clear(factors, weights, level)) for label, factors in options]
    if not scored:
        raise EmptyOptionSet("no technology options to rank")
    scored.sort(key=lambda item: (-item[1].value, item[0]))
    return scored
