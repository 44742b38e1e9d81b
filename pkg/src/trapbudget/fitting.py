"""Power-law fits of heating rate versus secular frequency."""

import csv
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import ConfigError

MIN_POINTS = 3


@dataclass(frozen=True)
class HeatingPoint:
    frequency: float  # Hz
    rate: float  # quanta/s
    sigma: float | None = None


@dataclass(frozen=True)
class HeatingDataset:
    points: tuple

    def __post_init__(self):
        freqs = [p.frequency for p in self.points]
        if any(not f > 0 for f in freqs):
            raise ValueError("frequencies must be > 0")
        if len(set(freqs)) != len(freqs):
            raise ValueError("frequencies must be unique")
        if any(not p.rate > 0 for p in self.points):
            raise ValueError("heating rates must be > 0")
        if any(p.sigma is not None and p.sigma < 0 for p in self.points):
            raise ValueError("sigma must be >= 0")

    @classmethod
    def from_arrays(cls, frequency, rate, sigma=None):
        if sigma is None:
            sigma = [None] * len(frequency)
        return cls(
            tuple(
                HeatingPoint(float(f), float(r), None if s is None else float(s))
                for f, r, s in zip(frequency, rate, sigma)
            )
        )

    @property
    def frequency(self):
        return np.array([p.frequency for p in self.points])

    @property
    def rate(self):
        return np.array([p.rate for p in self.points])

    @property
    def sigma(self):
        """Per-point uncertainties, or None unless every point has one > 0."""
        sig = [p.sigma for p in self.points]
        if not sig or any(s is None or s <= 0 for s in sig):
            return None
        return np.array(sig)


@dataclass(frozen=True)
class PowerLawFit:
    """``rate = exp(log_amplitude) * (f / reference_hz) ** exponent``."""

    exponent: float
    exponent_stderr: float
    log_amplitude: float
    covariance: np.ndarray  # over (log_amplitude, exponent)
    reference_hz: float = 1.0
    chi2_reduced: float | None = None

    def __call__(self, frequency):
        f = np.asarray(frequency, dtype=float)
        return np.exp(self.log_amplitude) * (f / self.reference_hz) ** self.exponent

    def as_dict(self):
        return {
            "exponent": self.exponent,
            "exponent_stderr": self.exponent_stderr,
            "log_amplitude": self.log_amplitude,
            "reference_hz": self.reference_hz,
            "covariance": [[float(v) for v in row] for row in self.covariance],
            "chi2_reduced": self.chi2_reduced,
        }


def fit_power_law(data: HeatingDataset, reference_hz=1e6) -> PowerLawFit:
    """Weighted least-squares line through ``ln(rate)`` against ``ln(f)``.

    With per-point sigmas the weights are ``(rate / sigma)**2`` (first-order
    error propagation into log space) and the covariance is scaled by the
    reduced chi-square.  Without them the residual variance is used.
    Frequencies are taken relative to ``reference_hz`` so the intercept is
    the log rate at that frequency.
    """
    n = len(data.points)
    if n < MIN_POINTS:
        raise ValueError(f"power-law fit needs at least {MIN_POINTS} points, got {n}")
    x = np.log(data.frequency / reference_hz)
    y = np.log(data.rate)
    if np.ptp(x) == 0:
        raise ValueError("degenerate design: all frequencies are equal")

    sigma = data.sigma
    w = np.ones(n) if sigma is None else (data.rate / sigma) ** 2
    design = np.column_stack([np.ones(n), x])
    normal = design.T @ (design * w[:, None])
    coef = np.linalg.solve(normal, design.T @ (w * y))
    resid = y - design @ coef
    dof = n - 2
    chi2 = float(np.sum(w * resid**2)) / dof
    # sigma-free fits: w == 1, so chi2 is the residual variance
    cov = np.linalg.inv(normal) * chi2
    cov = 0.5 * (cov + cov.T)
    return PowerLawFit(
        exponent=float(coef[1]),
        exponent_stderr=math.sqrt(max(cov[1, 1], 0.0)),
        log_amplitude=float(coef[0]),
        covariance=cov,
        reference_hz=reference_hz,
        chi2_reduced=chi2 if sigma is not None else None,
    )


def read_heating_csv(path) -> HeatingDataset:
    """Read columns ``frequency_hz``, ``rate_quanta_per_s`` and optional ``sigma``."""
    path = Path(path)
    with path.open(newline="") as fh:
        reader = csv.DictReader(fh)
        fields = reader.fieldnames or []
        rows = list(reader)
    if rows and not {"frequency_hz", "rate_quanta_per_s"} <= set(fields):
        raise ConfigError("needs columns frequency_hz and rate_quanta_per_s", path.name)
    freq, rate, sigma = [], [], []
    for i, row in enumerate(rows, start=2):
        try:
            freq.append(float(row["frequency_hz"]))
            rate.append(float(row["rate_quanta_per_s"]))
            s = (row.get("sigma") or "").strip()
            sigma.append(float(s) if s else None)
        except (TypeError, ValueError):
            raise ConfigError(f"non-numeric value on line {i}", path.name) from None
    try:
        return HeatingDataset.from_arrays(freq, rate, sigma)
    except ValueError as exc:
        raise ConfigError(str(exc), path.name) from None


def write_heating_csv(data: HeatingDataset, path):
    with Path(path).open("w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["frequency_hz", "rate_quanta_per_s", "sigma"])
        for p in data.points:
            writer.writerow([repr(p.frequency), repr(p.rate), "" if p.sigma is None else repr(p.sigma)])
