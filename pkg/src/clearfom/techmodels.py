"""
Parametric link models for electrical and hybrid photonic-plasmonic interconnects.

Each technology is described by four model families evaluated at a calendar
year and a link length:

* capacity/area   - Shannon capacity of a bandwidth-limited channel; the
                    electrical wire rolls its bandwidth off with length, the
                    photonic link loses SNR to propagation attenuation
* energy          - Koomey-style halving, clamped at the Landauer bound
* cost            - experience curve, optionally with a late-node overhead
* parallelism     - multicore speedup with a dark-silicon ceiling (electrical)

The functional forms are approximations; numeric defaults are loaded from
``data/defaults.json``.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, fields
from enum import Enum
from importlib import resources
from pathlib import Path
from typing import Mapping

from .errors import InvalidParams, NegativeInput, NonPositiveLength, NonPositiveTemperature
from .fom import AmountDim, ClearFactors, FomValue, HierarchyLevel, UNIT_WEIGHTS, WeightVector, compute_clear

BOLTZMANN_K = 1.380649e-23  # J/K, exact since the 2019 SI redefinition
DEFAULT_TEMPERATURE = 300.0  # K
PARAMS_VERSION = 1


@dataclass(frozen=True)
class PhysicalConstants:
    boltzmann_kB: float = BOLTZMANN_K
    default_temperature: float = DEFAULT_TEMPERATURE


def landauer_limit(temperature: float = DEFAULT_TEMPERATURE) -> float:
    """Minimum energy to erase one bit, kB*T*ln2, in joules."""
    if not (temperature > 0 and math.isfinite(temperature)):
        raise NonPositiveTemperature(f"temperature must be > 0 K, got {temperature!r}")
    return BOLTZMANN_K * temperature * math.log(2.0)


class TechKind(Enum):
    ELECTRICAL = "electrical"
    HYBRID = "hybrid_photonic_plasmonic"


def _finite(name: str, value) -> float:
    if isinstance(value, bool):
        raise InvalidParams(f"{name} must be a number, got {value!r}")
    try:
        value = float(value)
    except (TypeError, ValueError):
        raise InvalidParams(f"{name} must be a number, got {value!r}") from None
    if not math.isfinite(value):
        raise InvalidParams(f"{name} must be finite, got {value!r}")
    return value


def _positive(name: str, value) -> float:
    value = _finite(name, value)
    if value <= 0:
        raise InvalidParams(f"{name} must be > 0, got {value!r}")
    return value


@dataclass(frozen=True)
class KoomeyParams:
    e_ref: float  # J/bit at year_ref
    year_ref: float
    halving_period: float  # years
    temperature: float = DEFAULT_TEMPERATURE

    def __post_init__(self):
        object.__setattr__(self, "year_ref", _finite("year_ref", self.year_ref))
        object.__setattr__(self, "halving_period", _positive("halving_period", self.halving_period))
        object.__setattr__(self, "temperature", _positive("temperature", self.temperature))
        object.__setattr__(self, "e_ref", _positive("e_ref", self.e_ref))
        if self.e_ref <= landauer_limit(self.temperature):
            raise InvalidParams(f"e_ref={self.e_ref!r} J/bit is not above the Landauer limit at {self.temperature} K")


@dataclass(frozen=True)
class ExperienceCurveParams:
    c_ref: float  # USD/unit at year_ref
    year_ref: float
    volume_growth_per_year: float
    learning_exponent: float
    overhead_onset_year: float | None = None
    overhead_coeff: float = 0.0  # USD / year^overhead_power
    overhead_power: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "c_ref", _positive("c_ref", self.c_ref))
        object.__setattr__(self, "year_ref", _finite("year_ref", self.year_ref))
        g = _finite("volume_growth_per_year", self.volume_growth_per_year)
        if g <= 1:
            raise InvalidParams(f"volume_growth_per_year must be > 1, got {g!r}")
        object.__setattr__(self, "volume_growth_per_year", g)
        b = _finite("learning_exponent", self.learning_exponent)
        if b < 0:
            raise InvalidParams(f"learning_exponent must be >= 0, got {b!r}")
        object.__setattr__(self, "learning_exponent", b)
        if self.overhead_onset_year is not None:
            object.__setattr__(self, "overhead_onset_year", _finite("overhead_onset_year", self.overhead_onset_year))
        coeff = _finite("overhead_coeff", self.overhead_coeff)
        if coeff < 0:
            raise InvalidParams(f"overhead_coeff must be >= 0, got {coeff!r}")
        object.__setattr__(self, "overhead_coeff", coeff)
        object.__setattr__(self, "overhead_power", _positive("overhead_power", self.overhead_power))

    @property
    def has_overhead(self) -> bool:
        return self.overhead_onset_year is not None and self.overhead_coeff > 0


@dataclass(frozen=True)
class ChannelSpec:
    b0: float  # Hz at year_ref
    year_ref: float
    bandwidth_growth_per_year: float
    snr0: float  # linear SNR at zero length
    rolloff_length: float  # m, electrical bandwidth knee
    attenuation_db_per_m: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "b0", _positive("b0", self.b0))
        object.__setattr__(self, "year_ref", _finite("year_ref", self.year_ref))
        object.__setattr__(
            self, "bandwidth_growth_per_year", _positive("bandwidth_growth_per_year", self.bandwidth_growth_per_year)
        )
        object.__setattr__(self, "snr0", _positive("snr0", self.snr0))
        object.__setattr__(self, "rolloff_length", _positive("rolloff_length", self.rolloff_length))
        att = _finite("attenuation_db_per_m", self.attenuation_db_per_m)
        if att < 0:
            raise InvalidParams(f"attenuation_db_per_m must be >= 0, got {att!r}")
        object.__setattr__(self, "attenuation_db_per_m", att)


@dataclass(frozen=True)
class ParallelismParams:
    onset_year: float = 2006.0
    core_doubling_period: float = 2.0  # years
    utilization_cap: float = 0.9

    def __post_init__(self):
        object.__setattr__(self, "onset_year", _finite("onset_year", self.onset_year))
        object.__setattr__(self, "core_doubling_period", _positive("core_doubling_period", self.core_doubling_period))
        u = _finite("utilization_cap", self.utilization_cap)
        if not 0 < u <= 1:
            raise InvalidParams(f"utilization_cap must lie in (0, 1], got {u!r}")
        object.__setattr__(self, "utilization_cap", u)


@dataclass(frozen=True)
class TechnologyParams:
    label: str
    kind: TechKind
    channel: ChannelSpec
    energy: KoomeyParams
    cost: ExperienceCurveParams
    device_pitch: float  # m
    latency_per_length: float  # s/m
    latency_fixed: float  # s
    parallelism: ParallelismParams | None = None

    def __post_init__(self):
        if not isinstance(self.kind, TechKind):
            try:
                object.__setattr__(self, "kind", TechKind(self.kind))
            except ValueError:
                raise InvalidParams(f"unknown technology kind {self.kind!r}") from None
        object.__setattr__(self, "device_pitch", _positive("device_pitch", self.device_pitch))
        object.__setattr__(self, "latency_per_length", _positive("latency_per_length", self.latency_per_length))
        object.__setattr__(self, "latency_fixed", _positive("latency_fixed", self.latency_fixed))
        if self.kind is TechKind.HYBRID and self.parallelism is not None:
            raise InvalidParams("parallelism parameters apply to electrical links only")


# --- model evaluation -------------------------------------------------------


def energy_per_bit(year: float, params: KoomeyParams) -> float:
    """Koomey halving from ``e_ref``, never below kB*T*ln2."""
    if not math.isfinite(year):
        raise InvalidParams(f"year must be finite, got {year!r}")
    trend = params.e_ref * 2.0 ** (-(year - params.year_ref) / params.halving_period)
    return max(trend, landauer_limit(params.temperature))


def shannon_capacity(bandwidth: float, snr: float) -> float:
    if bandwidth < 0 or snr < 0 or math.isnan(bandwidth) or math.isnan(snr):
        raise NegativeInput(f"bandwidth and SNR must be >= 0, got B={bandwidth!r}, SNR={snr!r}")
    return bandwidth * math.log2(1.0 + snr)


def parallelism_factor(year: float, params: ParallelismParams) -> float:
    """
    Effective multicore speedup.

    Cores double every ``core_doubling_period`` after ``onset_year``, but only
    a ``utilization_cap`` share of the work scales with them (Amdahl form), so
    the speedup saturates at ``1 / (1 - utilization_cap)``. Equivalently
    cores * utilization, with utilization falling as cores are added.
    """
    if year <= params.onset_year:
        return 1.0
    cores = 2.0 ** ((year - params.onset_year) / params.core_doubling_period)
    cap = params.utilization_cap
    amdahl = 1.0 / (1.0 - cap * (1.0 - 1.0 / cores))
    return min(cores, amdahl)


def link_capability(tech: TechnologyParams, length: float, year: float) -> float:
    if not (length > 0 and math.isfinite(length)):
        raise NonPositiveLength(f"link length must be > 0 m, got {length!r}")
    ch = tech.channel
    bandwidth = ch.b0 * ch.bandwidth_growth_per_year ** (year - ch.year_ref)
    if tech.kind is TechKind.ELECTRICAL:
        bandwidth /= 1.0 + (length / ch.rolloff_length) ** 2
        snr = ch.snr0
    else:
        snr = ch.snr0 * 10.0 ** (-ch.attenuation_db_per_m * length / 10.0)
    capability = shannon_capacity(bandwidth, snr)
    if tech.parallelism is not None:
        capability *= parallelism_factor(year, tech.parallelism)
    return capability


def cost_resistance(tech: TechnologyParams | ExperienceCurveParams, year: float) -> float:
    cp = tech.cost if isinstance(tech, TechnologyParams) else tech
    if not math.isfinite(year) or year < cp.year_ref - 100:
        raise InvalidParams(f"year {year!r} is outside the cost model's domain")
    volume = cp.volume_growth_per_year ** (year - cp.year_ref)
    cost = cp.c_ref * volume ** (-cp.learning_exponent)
    if cp.has_overhead:
        cost += cp.overhead_coeff * max(0.0, year - cp.overhead_onset_year) ** cp.overhead_power
    if not (cost > 0 and math.isfinite(cost)):
        raise InvalidParams(f"cost model produced {cost!r} at year {year!r}")
    return cost


def link_factors(tech: TechnologyParams, length: float, year: float) -> ClearFactors:
    capability = link_capability(tech, length, year)
    return ClearFactors(
        capability=capability,
        latency=tech.latency_fixed + tech.latency_per_length * length,
        energy=energy_per_bit(year, tech.energy),
        amount=tech.device_pitch * length,
        amount_dim=AmountDim.AREA,
        resistance=cost_resistance(tech, year),
    )


def link_clear(
    tech: TechnologyParams, length: float, year: float, weights: WeightVector = UNIT_WEIGHTS
) -> FomValue:
    return compute_clear(link_factors(tech, length, year), weights, HierarchyLevel.LINK)


# --- parameter file ---------------------------------------------------------

_SUBSECTIONS = {
    "channel": ChannelSpec,
    "energy": KoomeyParams,
    "cost": ExperienceCurveParams,
    "parallelism": ParallelismParams,
}


def _strip_notes(data: Mapping) -> dict:
    # keys starting with "#" carry provenance notes and are not parameters
    return {k: v for k, v in data.items() if not k.startswith("#")}


def _build(cls, data, where: str):
    if not isinstance(data, Mapping):
        raise InvalidParams(f"{where}: expected an object")
    data = _strip_notes(data)
    names = {f.name for f in fields(cls)}
    unknown = set(data) - names
    if unknown:
        raise InvalidParams(f"{where}: unknown keys {sorted(unknown)}")
    try:
        return cls(**data)
    except TypeError as exc:
        raise InvalidParams(f"{where}: {exc}") from None
    except InvalidParams as exc:
        raise InvalidParams(f"{where}: {exc}") from None


def technology_from_dict(data: Mapping, where: str = "technology") -> TechnologyParams:
    if not isinstance(data, Mapping):
        raise InvalidParams(f"{where}: expected an object")
    data = _strip_notes(data)
    kwargs = {}
    for key, value in data.items():
        if key in _SUBSECTIONS:
            kwargs[key] = None if value is None else _build(_SUBSECTIONS[key], value, f"{where}.{key}")
        else:
            kwargs[key] = value
    return _build(TechnologyParams, kwargs, where)


def technology_to_dict(tech: TechnologyParams) -> dict:
    out = {}
    for f in fields(tech):
        value = getattr(tech, f.name)
        if isinstance(value, Enum):
            value = value.value
        elif value is not None and f.name in _SUBSECTIONS:
            value = {sf.name: getattr(value, sf.name) for sf in fields(value)}
        out[f.name] = value
    return out


def load_params(source: str | Path | Mapping | None = None) -> tuple[TechnologyParams, TechnologyParams]:
    """
    Read ``(electrical, hybrid)`` technology parameters.

    ``source`` may be a path, an already-parsed mapping, or None for the
    shipped defaults.
    """
    if source is None:
        data = json.loads(resources.files("clearfom").joinpath("data/defaults.json").read_text("utf-8"))
    elif isinstance(source, Mapping):
        data = source
    else:
        data = json.loads(Path(source).read_text("utf-8"))
    if not isinstance(data, Mapping):
        raise InvalidParams("parameter file must contain a JSON object")
    data = _strip_notes(data)
    unknown = set(data) - {"version", "electrical", "hybrid"}
    if unknown:
        raise InvalidParams(f"parameter file: unknown keys {sorted(unknown)}")
    if data.get("version", PARAMS_VERSION) != PARAMS_VERSION:
        raise InvalidParams(f"unsupported parameter file version {data.get('version')!r}")
    for key in ("electrical", "hybrid"):
        if key not in data:
            raise InvalidParams(f"parameter file: missing {key!r} entry")
    electrical = technology_from_dict(data["electrical"], "electrical")
    hybrid = technology_from_dict(data["hybrid"], "hybrid")
    return electrical, hybrid


def dump_params(electrical: TechnologyParams, hybrid: TechnologyParams) -> str:
    doc = {
        "version": PARAMS_VERSION,
        "electrical": technology_to_dict(electrical),
        "hybrid": technology_to_dict(hybrid),
    }
    return json.dumps(doc, indent=2, sort_keys=False) + "\n"
