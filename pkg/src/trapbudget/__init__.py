"""Design budgets for surface-electrode ion traps.

RF power dissipation, pseudopotential metrics, side optical access,
electric-field noise heating budgets and co-wiring checks.
"""

__version__ = "0.1.0"
