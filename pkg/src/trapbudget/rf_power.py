"""RF power dissipation in the trap electrode and its lead.

All amplitudes are zero-to-peak, so time-averaged powers carry a factor 1/2.
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import NumericalError


@dataclass(frozen=True)
class RFDrive:
    """RF drive with peak ``amplitude`` (V) and angular ``frequency`` (rad/s)."""

    amplitude: float
    frequency: float

    def __post_init__(self):
        if self.amplitude < 0:
            raise ValueError("RF amplitude must be >= 0")
        if not self.frequency > 0:
            raise ValueError("RF frequency must be > 0")

    @classmethod
    def from_hz(cls, amplitude, frequency_hz):
        return cls(amplitude, 2 * math.pi * frequency_hz)

    @property
    def frequency_hz(self):
        return self.frequency / (2 * math.pi)


@dataclass(frozen=True)
class PowerBreakdown:
    ohmic_trap: float
    ohmic_lead: float
    dielectric_trap: float
    dielectric_lead: float

    @property
    def total(self):
        return self.ohmic_trap + self.ohmic_lead + self.dielectric_trap + self.dielectric_lead

    def as_dict(self):
        return {
            "ohmic_trap_w": self.ohmic_trap,
            "ohmic_lead_w": self.ohmic_lead,
            "dielectric_trap_w": self.dielectric_trap,
            "dielectric_lead_w": self.dielectric_lead,
            "total_w": self.total,
        }


@dataclass(frozen=True)
class ScalingCoefficients:
    """Coefficients of ``P(n) = alpha_o n**3 + alpha_d n`` for one RF launch.

    ``sites_per_launch`` is the launch granularity used when
    :func:`scaling_projection` is not told the number of launches.
    """

    alpha_o: float
    alpha_d: float
    sites_per_launch: int = 1

    def __post_init__(self):
        if self.alpha_o < 0 or self.alpha_d < 0:
            raise ValueError("scaling coefficients must be >= 0")
        if self.sites_per_launch < 1:
            raise ValueError("sites_per_launch must be a positive integer")


def ohmic_power_distributed(drive: RFDrive, c: float, r: float) -> float:
    """Ohmic loss of a uniformly distributed RC line driven at one end.

    The charging current falls linearly along the line, which reduces the
    lumped ``V**2 Omega**2 C**2 R / 2`` by a factor of three.
    """
    return 0.5 * drive.amplitude**2 * drive.frequency**2 * c**2 * r / 3.0


def ohmic_power_lead(drive: RFDrive, c_total_downstream: float, r_lead: float) -> float:
    """Ohmic loss in a lumped lead carrying the charging current of everything downstream."""
    return 0.5 * drive.amplitude**2 * drive.frequency**2 * c_total_downstream**2 * r_lead


def dielectric_power(drive: RFDrive, c_ox: float, tan_delta: float) -> float:
    """Dielectric loss in oxide of capacitance ``c_ox`` and loss tangent ``tan_delta``."""
    return 0.5 * drive.amplitude**2 * drive.frequency * c_ox * tan_delta


def power_breakdown(trap, drive: RFDrive) -> PowerBreakdown:
    """Ohmic and dielectric power for the trap region and the lead of ``trap``.

    ``trap`` is a :class:`~trapbudget.trap_model.TrapDescription`.  The lead
    sees the charging current of both the trap region and its own capacitance.
    """
    rf = trap.rf_model
    return PowerBreakdown(
        ohmic_trap=ohmic_power_distributed(drive, rf.c_trap, rf.r_trap),
        ohmic_lead=ohmic_power_lead(drive, rf.c_trap + rf.c_lead, rf.r_lead),
        dielectric_trap=dielectric_power(drive, rf.c_ox_trap, rf.tan_delta),
        dielectric_lead=dielectric_power(drive, rf.c_ox_lead, rf.tan_delta),
    )


def ladder_power_oracle(drive: RFDrive, c: float, r: float, n_segments: int) -> float:
    """Resistive power of an open-ended RC ladder, solved as a phasor network.

    The ladder has ``n_segments`` sections, each a series resistor ``r/n``
    followed by a shunt capacitor ``c/n`` to ground.  The input impedance is
    built by folding sections in from the open end; the drive current is then
    split back out section by section.
    """
    n = int(n_segments)
    if n < 1:
        raise ValueError("n_segments must be >= 1")
    if r == 0 or c == 0 or drive.amplitude == 0:
        return 0.0

    try:
        power = _ladder_solve(drive, c, r, n)
    except (ZeroDivisionError, OverflowError, FloatingPointError) as exc:
        raise NumericalError(f"ladder solve failed at n_segments={n}: {exc}") from None
    if not math.isfinite(power):
        raise NumericalError(f"ladder power is not finite at n_segments={n}")
    return power


def _ladder_solve(drive, c, r, n):
    w = drive.frequency
    r_seg = r / n
    z_cap = 1.0 / (1j * w * (c / n))

    # z_node[k]: impedance to ground seen at the node after resistor k
    z_node = np.empty(n, dtype=complex)
    z_node[n - 1] = z_cap
    with np.errstate(all="raise"):
        for k in range(n - 2, -1, -1):
            z_down = r_seg + z_node[k + 1]
            z_node[k] = z_cap * z_down / (z_cap + z_down)
    z_in = r_seg + z_node[0]
    if not np.isfinite(z_in) or not np.all(np.isfinite(z_node)):
        raise NumericalError(f"ladder impedance overflowed at n_segments={n}")

    current = complex(drive.amplitude / z_in)
    power = 0.0
    for k in range(n):
        power += 0.5 * abs(current) ** 2 * r_seg
        if k == n - 1:
            break
        v_node = current * z_node[k]
        current = complex(v_node / (r_seg + z_node[k + 1]))
    return power


def scaling_coefficients(breakdown: PowerBreakdown, n_sites: int, sites_per_launch=None):
    """Per-site coefficients from the trap-region losses of an ``n_sites`` device.

    Ohmic trap loss grows as ``n**3`` (both C and R grow with the electrode
    length) and dielectric loss as ``n``.  Lead losses are not included.
    """
    if n_sites < 1:
        raise ValueError("n_sites must be >= 1")
    return ScalingCoefficients(
        alpha_o=breakdown.ohmic_trap / n_sites**3,
        alpha_d=breakdown.dielectric_trap / n_sites,
        sites_per_launch=sites_per_launch or n_sites,
    )


def scaling_projection(coeffs: ScalingCoefficients, n_sites: int, n_launches=None) -> float:
    """Total power for ``n_sites`` split evenly over ``n_launches`` RF launches."""
    if n_sites < 0:
        raise ValueError("n_sites must be >= 0")
    if n_launches is None:
        if n_sites % coeffs.sites_per_launch:
            raise ValueError(
                f"{n_sites} sites do not divide into launches of {coeffs.sites_per_launch}"
            )
        n_launches = max(1, n_sites // coeffs.sites_per_launch)
    if n_launches < 1:
        raise ValueError("n_launches must be >= 1")
    if n_sites % n_launches:
        raise ValueError(f"{n_sites} sites cannot be split evenly over {n_launches} launches")
    per_launch = n_sites // n_launches
    return n_launches * (coeffs.alpha_o * per_launch**3 + coeffs.alpha_d * per_launch)
