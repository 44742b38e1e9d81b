"""Side optical access: geometric NA limit and Gaussian-beam edge clipping."""

import math
from dataclasses import dataclass

from scipy.special import erfc


@dataclass(frozen=True)
class BeamSpec:
    """Ideal TEM00 beam; ``waist`` is the 1/e^2 intensity radius at focus."""

    wavelength: float
    waist: float
    focus_at_ion: bool = True

    def __post_init__(self):
        if not self.wavelength > 0 or not self.waist > 0:
            raise ValueError("wavelength and waist must be > 0")

    @property
    def rayleigh_range(self):
        return math.pi * self.waist**2 / self.wavelength

    def radius(self, z):
        """1/e^2 radius a distance ``z`` from the waist."""
        return self.waist * math.sqrt(1.0 + (z / self.rayleigh_range) ** 2)


@dataclass(frozen=True)
class ClipResult:
    fraction: float

    @property
    def db(self):
        return 10 * math.log10(self.fraction) if self.fraction > 0 else -math.inf


def max_side_na(ion_height: float, half_width: float) -> float:
    """Largest NA of a beam focused on the ion that clears the chip edge."""
    return math.sin(math.atan2(ion_height, half_width))


def gaussian_na(beam: BeamSpec) -> float:
    """Far-field divergence half-angle ``lambda / (pi w0)``."""
    return beam.wavelength / (math.pi * beam.waist)


def edge_clip_fraction(beam: BeamSpec, edge_distance: float, edge_height: float) -> ClipResult:
    """Fraction of beam power falling below a half-plane at the chip edge.

    The beam axis passes ``edge_height`` above the plane at a propagation
    distance ``edge_distance`` from the waist.
    """
    if edge_distance < 0:
        raise ValueError("edge_distance must be >= 0")
    if edge_height < 0:
        raise ValueError("edge_height must be >= 0")
    w = beam.radius(edge_distance)
    return ClipResult(0.5 * float(erfc(math.sqrt(2) * edge_height / w)))


def side_access(beam: BeamSpec, geometry) -> dict:
    """Optical-access summary for a beam focused on the ion, crossing the isthmus.

    The clipping plane is the control-electrode surface, so the beam axis
    sits ``ion_height_above_control`` above it at the isthmus edge.
    """
    clip = edge_clip_fraction(
        beam, geometry.isthmus_half_width, geometry.ion_height_above_control
    )
    return {
        "na_beam": gaussian_na(beam),
        "na_max": max_side_na(geometry.ion_height_above_control, geometry.isthmus_half_width),
        "clip_fraction": clip.fraction,
        "clip_db": clip.db,
    }
