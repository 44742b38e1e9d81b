"""Physical constants (CODATA 2018), SI units.

Pinned here rather than pulled from :mod:`scipy.constants` so results do not
drift when scipy moves to a newer CODATA release.
"""

ELEMENTARY_CHARGE = 1.602176634e-19  # C (exact)
BOLTZMANN = 1.380649e-23  # J/K (exact)
HBAR = 1.054571817e-34  # J s
EPSILON_0 = 8.8541878128e-12  # F/m
ATOMIC_MASS_UNIT = 1.66053906660e-27  # kg

SIO2_RELATIVE_PERMITTIVITY = 3.9
SIO2_LOSS_TANGENT = 1e-3

# unit helpers for config files
MICRON = 1e-6
PICOFARAD = 1e-12
