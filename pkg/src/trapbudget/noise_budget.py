"""Electric-field noise at the ion and the motional heating it drives.

Independent sources add incoherently: the field PSD along a mode axis is
the sum of each source's contribution.  Voltage noise on electrode ``n``
reaches the ion weighted by ``epsilon_n**2``, where ``epsilon_n`` (1/m) is
the field at the ion per volt on that electrode.
"""

import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .constants import BOLTZMANN, HBAR
from .errors import ConfigError
from .filters import FilterSpec, filter_gain_sq
from .species import IonSpecies
from .trap_model import read_yaml, species_from_node


@dataclass(frozen=True)
class TechnicalNoise:
    """White voltage noise from the electronics, coloured by a low-pass filter.

    ``coupling`` is the summed squared field factor of every electrode the
    source drives (1/m^2).
    """

    white_voltage_psd: float  # V^2/Hz
    coupling: float  # m^-2
    filter: FilterSpec | None = None
    name: str = "technical"
    kind = "technical"

    def __post_init__(self):
        if self.white_voltage_psd < 0 or self.coupling < 0:
            raise ValueError(f"{self.name}: PSD and coupling must be >= 0")

    def psd(self, frequency):
        f = np.asarray(frequency, dtype=float)
        gain = 1.0 if self.filter is None else filter_gain_sq(self.filter, f)
        return self.white_voltage_psd * self.coupling * gain * np.ones_like(f)


@dataclass(frozen=True)
class JohnsonNoise:
    """Thermal noise of the lead resistance of each electrode.

    ``electrodes`` holds ``(resistance_ohm, epsilon_per_m)`` pairs.
    """

    electrodes: tuple = ()
    temperature: float = 300.0
    name: str = "johnson"
    kind = "johnson"

    def __post_init__(self):
        if self.temperature < 0:
            raise ValueError(f"{self.name}: temperature must be >= 0")
        for r, _ in self.electrodes:
            if r < 0:
                raise ValueError(f"{self.name}: resistances must be >= 0")

    def psd(self, frequency):
        f = np.asarray(frequency, dtype=float)
        total = sum(eps**2 * 4 * BOLTZMANN * self.temperature * r for r, eps in self.electrodes)
        return float(total) * np.ones_like(f)


@dataclass(frozen=True)
class AnomalousNoise:
    """Surface-fluctuator noise ``amplitude * (f / reference_frequency)**-exponent``."""

    amplitude: float  # V^2/m^2/Hz at reference_frequency
    reference_frequency: float
    exponent: float
    name: str = "anomalous"
    kind = "anomalous"

    def __post_init__(self):
        if self.amplitude < 0:
            raise ValueError(f"{self.name}: amplitude must be >= 0")
        if not self.reference_frequency > 0:
            raise ValueError(f"{self.name}: reference_frequency must be > 0")
        if not 0 <= self.exponent <= 6:
            raise ValueError(f"{self.name}: exponent must lie in [0, 6]")

    def psd(self, frequency):
        f = np.asarray(frequency, dtype=float)
        return self.amplitude * (f / self.reference_frequency) ** (-self.exponent)


def _scalar(x):
    x = np.asarray(x)
    return float(x) if x.ndim == 0 else x


def field_noise_psd(sources, frequency):
    """Total field PSD (V^2/m^2/Hz) at ``frequency`` (Hz)."""
    f = np.asarray(frequency, dtype=float)
    total = np.zeros_like(f)
    for source in sources:
        total = total + source.psd(f)
    return _scalar(total)


def heating_rate(species: IonSpecies, secular, psd):
    """Heating rate in quanta/s of a mode at ``secular`` Hz driven by field PSD ``psd``."""
    omega = 2 * math.pi * np.asarray(secular, dtype=float)
    return _scalar(species.charge**2 / (4 * species.mass * HBAR * omega) * np.asarray(psd))


@dataclass
class BudgetTable:
    """Per-source and total heating rates over a frequency sweep."""

    frequencies: np.ndarray
    rates: dict = field(default_factory=dict)  # source name -> array, quanta/s

    @property
    def total(self):
        out = np.zeros_like(self.frequencies)
        for column in self.rates.values():
            out = out + column
        return out

    def header(self):
        return ["frequency_hz", *self.rates, "total"]

    def rows(self):
        columns = [self.frequencies, *self.rates.values(), self.total]
        return [[float(c[i]) for c in columns] for i in range(len(self.frequencies))]


def budget_report(species: IonSpecies, frequencies, sources) -> BudgetTable:
    """Heating rate from each source, and their sum, at each secular frequency."""
    f = np.atleast_1d(np.asarray(frequencies, dtype=float))
    rates = {}
    for i, source in enumerate(sources):
        name = source.name
        if name in rates:
            name = f"{name}_{i}"
        rates[name] = np.asarray(heating_rate(species, f, source.psd(f)), dtype=float)
    return BudgetTable(frequencies=f, rates=rates)


# --- config files -----------------------------------------------------------


@dataclass(frozen=True)
class NoiseConfig:
    species: IonSpecies
    sources: tuple
    sweep: dict | None = None


def _filter_from(node, where):
    if node is None:
        return None
    try:
        return FilterSpec(
            kind=node["kind"],
            order=int(node["order"]),
            f_3db=float(node["f_3db"]),
            ripple_db=float(node.get("ripple_db", 0.5)),
        )
    except KeyError as exc:
        raise ConfigError("missing", f"{where}.filter.{exc.args[0]}") from None
    except (TypeError, ValueError) as exc:
        raise ConfigError(str(exc), f"{where}.filter") from None


def source_from_dict(node: dict, where="source"):
    kind = node.get("kind")
    name = node.get("name", kind)
    try:
        if kind == "technical":
            return TechnicalNoise(
                white_voltage_psd=float(node["white_voltage_psd"]),
                coupling=float(node["coupling"]),
                filter=_filter_from(node.get("filter"), where),
                name=name,
            )
        if kind == "johnson":
            electrodes = tuple(
                (float(e["resistance"]), float(e["epsilon"])) for e in node["electrodes"]
            )
            return JohnsonNoise(electrodes, float(node.get("temperature", 300.0)), name)
        if kind == "anomalous":
            return AnomalousNoise(
                amplitude=float(node["amplitude"]),
                reference_frequency=float(node["reference_frequency"]),
                exponent=float(node["exponent"]),
                name=name,
            )
    except KeyError as exc:
        raise ConfigError("missing", f"{where}.{exc.args[0]}") from None
    except ConfigError:
        raise
    except (TypeError, ValueError) as exc:
        raise ConfigError(str(exc), where) from None
    raise ConfigError(f"unknown source kind {kind!r}", f"{where}.kind")


def noise_config_from_dict(tree: dict) -> NoiseConfig:
    raw = tree.get("sources")
    if not isinstance(raw, list):
        raise ConfigError("expected a list", "sources")
    sources = tuple(source_from_dict(s, f"sources[{i}]") for i, s in enumerate(raw))
    species = species_from_node(tree.get("species", "Ca-40"))
    return NoiseConfig(species, sources, tree.get("sweep"))


def load_noise_config(path) -> NoiseConfig:
    return noise_config_from_dict(read_yaml(Path(path)))
