"""Low-pass filter power responses used to colour technical voltage noise."""

import math
from dataclasses import dataclass

import numpy as np

CHEBYSHEV1 = "chebyshev1"
CASCADED_RC = "cascaded_rc"


@dataclass(frozen=True)
class FilterSpec:
    """Low-pass filter normalised so that ``|H(f_3db)|**2 == 1/2``.

    ``cascaded_rc`` is ``order`` identical buffered first-order stages.
    ``chebyshev1`` is a type-I Chebyshev response with ``ripple_db`` of
    passband ripple.
    """

    kind: str
    order: int
    f_3db: float
    ripple_db: float = 0.5

    def __post_init__(self):
        if self.kind not in (CHEBYSHEV1, CASCADED_RC):
            raise ValueError(f"unknown filter kind {self.kind!r}")
        if int(self.order) != self.order or self.order < 1:
            raise ValueError("filter order must be a positive integer")
        if not self.f_3db > 0:
            raise ValueError("f_3db must be > 0")
        if self.kind == CHEBYSHEV1 and not self.ripple_db > 0:
            raise ValueError("chebyshev ripple_db must be > 0")

    @property
    def ripple_epsilon(self):
        return math.sqrt(10 ** (self.ripple_db / 10) - 1)

    @property
    def corner(self):
        """Stage corner (RC) or ripple-band edge (Chebyshev) in Hz."""
        if self.kind == CASCADED_RC:
            return self.f_3db / math.sqrt(2 ** (1 / self.order) - 1)
        # T_n(f_3db / f_c) = 1/eps puts the half-power point at f_3db
        x3 = math.cosh(math.acosh(1 / self.ripple_epsilon) / self.order)
        return self.f_3db / x3


def chebyshev_t(n: int, x):
    """Chebyshev polynomial of the first kind by three-term recurrence."""
    x = np.asarray(x, dtype=float)
    t_prev, t = np.ones_like(x), x.copy()
    if n == 0:
        return t_prev
    for _ in range(n - 1):
        t_prev, t = t, 2 * x * t - t_prev
    return t


def filter_gain_sq(filt: FilterSpec, frequency):
    """Power transmission ``|H(f)|**2`` at ``frequency`` (Hz, scalar or array)."""
    f = np.asarray(frequency, dtype=float)
    x = f / filt.corner
    if filt.kind == CASCADED_RC:
        g = (1 + x**2) ** (-filt.order)
    else:
        eps = filt.ripple_epsilon
        g = 1 / (1 + eps**2 * chebyshev_t(filt.order, x) ** 2)
    return g if g.ndim else float(g)
