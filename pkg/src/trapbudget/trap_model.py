"""Geometric and electrical description of a surface trap, and its config files.

Config files are YAML with top-level sections ``species``, ``layers``,
``rf_model``, ``geometry`` and ``pseudo``.  Lengths are stored in
micrometers, capacitances in picofarads and resistances in ohms; everything
is converted to SI on load.
"""

import dataclasses
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

import yaml

from .constants import ATOMIC_MASS_UNIT, EPSILON_0, MICRON, PICOFARAD, SIO2_LOSS_TANGENT
from .errors import ConfigError
from .pseudopotential import PseudoParams
from .species import IonSpecies, preset

METAL, OXIDE, VACUUM = "metal", "oxide", "vacuum"
_MATERIALS = (METAL, OXIDE, VACUUM)
_ROLES = ("rf", "ground", "control", None)

BUNDLED_TRAPS = ("enchilada_solid", "enchilada_perforated")


@dataclass(frozen=True)
class Layer:
    name: str
    thickness: float  # m
    material: str
    relative_permittivity: float = 1.0
    role: str | None = None


@dataclass(frozen=True)
class LayerStack:
    """Layers listed bottom to top."""

    layers: tuple

    def __post_init__(self):
        if not self.layers:
            raise ConfigError("stack is empty", "layers")
        for i, layer in enumerate(self.layers):
            where = f"layers[{i}] ({layer.name})"
            if layer.material not in _MATERIALS:
                raise ConfigError(f"unknown material {layer.material!r}", where)
            if not layer.thickness > 0:
                raise ConfigError("thickness must be > 0", where)
            if layer.role not in _ROLES:
                raise ConfigError(f"unknown role {layer.role!r}", where)
            if layer.material != METAL and layer.role is not None:
                raise ConfigError("only metal layers carry a role", where)
            if layer.material == OXIDE and not layer.relative_permittivity >= 1:
                raise ConfigError("relative permittivity must be >= 1", where)
        for i in range(1, len(self.layers)):
            prev_metal = self.layers[i - 1].material == METAL
            if prev_metal == (self.layers[i].material == METAL):
                raise ConfigError("metal and insulator layers must alternate", f"layers[{i}]")
        roles = {layer.role for layer in self.layers}
        if "rf" not in roles:
            raise ConfigError("no metal layer has role 'rf'", "layers")
        if "ground" not in roles:
            raise ConfigError("no metal layer has role 'ground'", "layers")

    def by_role(self, role):
        return [layer for layer in self.layers if layer.role == role]

    def insulator_between(self, lower: str, upper: str):
        """Insulating layers strictly between two named metal layers."""
        names = [layer.name for layer in self.layers]
        lo, hi = names.index(lower), names.index(upper)
        return [layer for layer in self.layers[lo + 1 : hi] if layer.material != METAL]


@dataclass(frozen=True)
class RFElectrodeModel:
    """Electrical model of the RF electrode.

    ``r_trap`` is the end-to-end resistance of the trap-region RF network and
    is treated as distributed along ``c_trap``; ``r_lead`` is lumped.
    ``perforation_fraction`` is the fraction of the RF footprint still resting
    on oxide (1.0 for a solid dielectric).
    """

    c_trap: float
    c_lead: float
    c_ox_trap: float
    c_ox_lead: float
    r_trap: float
    r_lead: float
    tan_delta: float = SIO2_LOSS_TANGENT
    perforation_fraction: float = 1.0

    def __post_init__(self):
        for f in ("c_trap", "c_lead", "c_ox_trap", "c_ox_lead", "r_trap", "r_lead"):
            if getattr(self, f) < 0:
                raise ConfigError("must be >= 0", f"rf_model.{f}")
        if self.c_ox_trap > self.c_trap:
            raise ConfigError("c_ox_trap exceeds c_trap", "rf_model.c_ox_trap")
        if self.c_ox_lead > self.c_lead:
            raise ConfigError("c_ox_lead exceeds c_lead", "rf_model.c_ox_lead")
        if not 0 <= self.tan_delta <= 0.1:
            raise ConfigError("must lie in [0, 0.1]", "rf_model.tan_delta")
        if not 0 <= self.perforation_fraction <= 1:
            raise ConfigError("must lie in [0, 1]", "rf_model.perforation_fraction")

    @property
    def c_total(self):
        return self.c_trap + self.c_lead


@dataclass(frozen=True)
class TrapGeometry:
    rf_rail_width: float
    rf_separation: float
    ion_height_above_rf: float
    ion_height_above_control: float
    isthmus_half_width: float

    def __post_init__(self):
        for f in dataclasses.fields(self):
            if not getattr(self, f.name) > 0:
                raise ConfigError("must be > 0", f"geometry.{f.name}")

    @property
    def raised_rf(self):
        return self.ion_height_above_control > self.ion_height_above_rf


@dataclass(frozen=True)
class TrapDescription:
    name: str
    species: IonSpecies
    layer_stack: LayerStack
    rf_model: RFElectrodeModel
    geometry: TrapGeometry
    pseudo: PseudoParams


def plate_capacitance_estimate(area: float, gap: float, stack_fill) -> float:
    """Fringe-free parallel-plate capacitance through a layered gap.

    ``stack_fill`` is a sequence of ``(thickness, relative_permittivity)``
    pairs (or mappings with those keys) whose thicknesses sum to ``gap``.
    Layers add in series.  Real electrodes fringe, so expect tens of percent
    deviation from a field solver.
    """
    if not area > 0 or not gap > 0:
        raise ValueError("area and gap must be > 0")
    layers = [
        (item["thickness"], item["rel_permittivity"]) if isinstance(item, dict) else tuple(item)
        for item in stack_fill
    ]
    total = sum(t for t, _ in layers)
    if abs(total - gap) > 1e-9 * gap:
        raise ValueError(f"layer thicknesses sum to {total:g} m, gap is {gap:g} m")
    elastance = sum(t / (EPSILON_0 * eps_r * area) for t, eps_r in layers)
    return 1.0 / elastance


# --- config files -----------------------------------------------------------


def _num(section, key, where):
    try:
        value = section[key]
    except (KeyError, TypeError):
        raise ConfigError("missing", f"{where}.{key}") from None
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(f"expected a number, got {value!r}", f"{where}.{key}")
    return float(value)


def _section(tree, key):
    value = tree.get(key)
    if value is None:
        raise ConfigError("missing section", key)
    return value


def species_from_node(node):
    if isinstance(node, str):
        try:
            return preset(node)
        except ValueError as exc:
            raise ConfigError(str(exc), "species") from None
    if isinstance(node, dict):
        try:
            return IonSpecies.from_mass_u(
                node["name"], float(node["mass_u"]), int(node.get("charge_state", 1))
            )
        except KeyError as exc:
            raise ConfigError("missing", f"species.{exc.args[0]}") from None
        except ValueError as exc:
            raise ConfigError(str(exc), "species") from None
    raise ConfigError("expected a preset name or a mapping", "species")


def trap_from_dict(tree: dict, name: str = "") -> TrapDescription:
    """Build and validate a :class:`TrapDescription` from a parsed config tree."""
    if not isinstance(tree, dict):
        raise ConfigError("top level must be a mapping")

    layers = []
    raw_layers = _section(tree, "layers")
    if not isinstance(raw_layers, list):
        raise ConfigError("expected a list", "layers")
    for i, item in enumerate(raw_layers):
        where = f"layers[{i}]"
        if not isinstance(item, dict):
            raise ConfigError("expected a mapping", where)
        material = item.get("material")
        layers.append(
            Layer(
                name=str(item.get("name", f"L{i}")),
                thickness=_num(item, "thickness", where) * MICRON,
                material=material,
                relative_permittivity=float(item.get("relative_permittivity", 1.0)),
                role=item.get("role"),
            )
        )

    rf = _section(tree, "rf_model")
    rf_model = RFElectrodeModel(
        c_trap=_num(rf, "c_trap", "rf_model") * PICOFARAD,
        c_lead=_num(rf, "c_lead", "rf_model") * PICOFARAD,
        c_ox_trap=_num(rf, "c_ox_trap", "rf_model") * PICOFARAD,
        c_ox_lead=_num(rf, "c_ox_lead", "rf_model") * PICOFARAD,
        r_trap=_num(rf, "r_trap", "rf_model"),
        r_lead=_num(rf, "r_lead", "rf_model"),
        tan_delta=float(rf.get("tan_delta", SIO2_LOSS_TANGENT)),
        perforation_fraction=float(rf.get("perforation_fraction", 1.0)),
    )

    geo = _section(tree, "geometry")
    geometry = TrapGeometry(
        **{f.name: _num(geo, f.name, "geometry") * MICRON for f in dataclasses.fields(TrapGeometry)}
    )

    ps = _section(tree, "pseudo")
    lambda_ = _num(ps, "lambda", "pseudo") * MICRON
    alpha_depth = _num(ps, "alpha_depth", "pseudo")
    try:
        pseudo = PseudoParams(lambda_=lambda_, alpha_depth=alpha_depth)
    except ValueError as exc:
        raise ConfigError(str(exc), "pseudo") from None

    return TrapDescription(
        name=str(tree.get("name", name)),
        species=species_from_node(_section(tree, "species")),
        layer_stack=LayerStack(tuple(layers)),
        rf_model=rf_model,
        geometry=geometry,
        pseudo=pseudo,
    )


def _round(x):
    # 12 significant digits undoes the SI scaling without float noise
    return float(f"{x:.12g}")


def trap_to_dict(trap: TrapDescription) -> dict:
    """Inverse of :func:`trap_from_dict`, in file units."""
    sp = trap.species
    try:
        species = sp.name if preset(sp.name) == sp else None
    except ValueError:
        species = None
    if species is None:
        species = {
            "name": sp.name,
            "mass_u": _round(sp.mass / ATOMIC_MASS_UNIT),
            "charge_state": sp.charge_state,
        }

    layers = []
    for layer in trap.layer_stack.layers:
        item = {
            "name": layer.name,
            "material": layer.material,
            "thickness": _round(layer.thickness / MICRON),
        }
        if layer.material == OXIDE:
            item["relative_permittivity"] = layer.relative_permittivity
        if layer.role is not None:
            item["role"] = layer.role
        layers.append(item)

    rf = trap.rf_model
    return {
        "name": trap.name,
        "species": species,
        "layers": layers,
        "rf_model": {
            "c_trap": _round(rf.c_trap / PICOFARAD),
            "c_lead": _round(rf.c_lead / PICOFARAD),
            "c_ox_trap": _round(rf.c_ox_trap / PICOFARAD),
            "c_ox_lead": _round(rf.c_ox_lead / PICOFARAD),
            "r_trap": rf.r_trap,
            "r_lead": rf.r_lead,
            "tan_delta": rf.tan_delta,
            "perforation_fraction": rf.perforation_fraction,
        },
        "geometry": {
            f.name: _round(getattr(trap.geometry, f.name) / MICRON)
            for f in dataclasses.fields(TrapGeometry)
        },
        "pseudo": {
            "lambda": _round(trap.pseudo.lambda_ / MICRON),
            "alpha_depth": trap.pseudo.alpha_depth,
        },
    }


_HEADER = "# units: lengths in micrometers, capacitance in pF, resistance in ohms\n"


def dump_trap_description(trap: TrapDescription, path=None) -> str:
    text = _HEADER + yaml.safe_dump(trap_to_dict(trap), sort_keys=False)
    if path is not None:
        Path(path).write_text(text)
    return text


def bundled_config_path(name: str) -> Path:
    """Path of a config shipped with the package (``name`` without ``.yaml``)."""
    path = resources.files("trapbudget") / "configs" / f"{name}.yaml"
    return Path(str(path))


def read_yaml(path) -> dict:
    path = Path(path)
    text = path.read_text()
    try:
        tree = yaml.safe_load(text)
    except yaml.YAMLError as exc:
        raise ConfigError(f"cannot parse {path.name}: {exc}") from None
    if not isinstance(tree, dict):
        raise ConfigError(f"{path.name}: top level must be a mapping")
    return tree


def load_trap_description(path) -> TrapDescription:
    """Load and validate a trap config file.

    Raises :class:`~trapbudget.errors.ConfigError` naming the offending field.
    """
    path = Path(path)
    return trap_from_dict(read_yaml(path), name=path.stem)
