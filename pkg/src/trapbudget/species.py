"""Ion species presets."""

from dataclasses import dataclass

from .constants import ATOMIC_MASS_UNIT, ELEMENTARY_CHARGE

# isotopic masses in u (AME2020)
_ISOTOPE_MASS_U = {
    "Ca-40": 39.962590851,
    "Yb-171": 170.936332,
    "Ba-138": 137.905247,
}


@dataclass(frozen=True)
class IonSpecies:
    name: str
    mass: float  # kg
    charge: float  # C

    def __post_init__(self):
        if not self.mass > 0:
            raise ValueError(f"{self.name}: mass must be positive")
        ratio = self.charge / ELEMENTARY_CHARGE
        if round(ratio) < 1 or abs(ratio - round(ratio)) > 1e-6:
            raise ValueError(
                f"{self.name}: charge must be a positive multiple of e, got {ratio:g} e"
            )

    @property
    def charge_state(self) -> int:
        return round(self.charge / ELEMENTARY_CHARGE)

    @classmethod
    def from_mass_u(cls, name, mass_u, charge_state=1):
        return cls(name, mass_u * ATOMIC_MASS_UNIT, charge_state * ELEMENTARY_CHARGE)


def preset(name: str) -> IonSpecies:
    """Singly charged ion of a bundled isotope (``Ca-40``, ``Yb-171``, ``Ba-138``)."""
    try:
        return IonSpecies.from_mass_u(name, _ISOTOPE_MASS_U[name])
    except KeyError:
        known = ", ".join(sorted(_ISOTOPE_MASS_U))
        raise ValueError(f"unknown species {name!r}; presets are {known}") from None


PRESETS = tuple(_ISOTOPE_MASS_U)
CA40 = preset("Ca-40")
YB171 = preset("Yb-171")
BA138 = preset("Ba-138")
