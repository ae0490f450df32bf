"""Physical constants, CODATA 2018, frozen for bit-for-bit reproducibility."""

HBAR = 1.054571817e-34
"""Reduced Planck constant, J s."""

K_B = 1.380649e-23
"""Boltzmann constant, J/K (exact since the 2019 SI redefinition)."""

C_LIGHT = 2.99792458e8
"""Speed of light in vacuum, m/s (exact)."""

__all__ = ["HBAR", "K_B", "C_LIGHT"]
