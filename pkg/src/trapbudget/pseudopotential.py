"""Radial secular frequency, depth and Mathieu q of a surface trap.

The trap is described by a characteristic distance ``lambda_`` (the RF
potential curvature at the pseudopotential minimum is ``1/lambda_**2`` per
volt) and a depth efficiency ``alpha_depth`` relative to an ideal
hyperbolic trap of the same curvature.
"""

import math
from dataclasses import dataclass

from .constants import ELEMENTARY_CHARGE
from .rf_power import RFDrive
from .species import IonSpecies

STABILITY_Q_LIMIT = 0.4


@dataclass(frozen=True)
class PseudoParams:
    lambda_: float  # m
    alpha_depth: float

    def __post_init__(self):
        if not self.lambda_ > 0:
            raise ValueError("lambda must be > 0")
        if not 0 < self.alpha_depth <= 1:
            raise ValueError("alpha_depth must be in (0, 1]")


@dataclass(frozen=True)
class PseudoResult:
    radial_hz: float
    depth_j: float
    mathieu_q: float

    @property
    def depth_ev(self):
        return self.depth_j / ELEMENTARY_CHARGE

    @property
    def stable(self):
        return self.mathieu_q <= STABILITY_Q_LIMIT

    def as_dict(self):
        return {
            "radial_hz": self.radial_hz,
            "depth_ev": self.depth_ev,
            "mathieu_q": self.mathieu_q,
            "stable": self.stable,
        }


def radial_frequency(species: IonSpecies, drive: RFDrive, pseudo: PseudoParams) -> float:
    """Radial secular frequency in Hz, ``q V / (sqrt(2) Omega m Lambda**2) / 2pi``."""
    omega = species.charge * drive.amplitude / (
        math.sqrt(2) * drive.frequency * species.mass * pseudo.lambda_**2
    )
    return omega / (2 * math.pi)


def trap_depth(species: IonSpecies, secular: float, pseudo: PseudoParams) -> float:
    """Radial trap depth in joules for secular frequency ``secular`` (Hz)."""
    omega = 2 * math.pi * secular
    return 0.5 * pseudo.alpha_depth * species.mass * omega**2 * pseudo.lambda_**2


def trap_depth_ev(species, secular, pseudo):
    return trap_depth(species, secular, pseudo) / ELEMENTARY_CHARGE


def mathieu_q(species: IonSpecies, drive: RFDrive, pseudo: PseudoParams) -> float:
    """Mathieu q from the lowest-order relation ``omega = q Omega / (2 sqrt 2)``."""
    omega = 2 * math.pi * radial_frequency(species, drive, pseudo)
    return 2 * math.sqrt(2) * omega / drive.frequency


def analyze(species, drive, pseudo) -> PseudoResult:
    radial = radial_frequency(species, drive, pseudo)
    return PseudoResult(
        radial_hz=radial,
        depth_j=trap_depth(species, radial, pseudo),
        mathieu_q=mathieu_q(species, drive, pseudo),
    )
