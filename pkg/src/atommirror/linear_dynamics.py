"""Drift and diffusion matrices of the linearized fluctuation dynamics.

The quadrature fluctuation vector is fixed as

    u = (dq, dp, dX1, dY1, dX2, dY2, dx, dy)

with (dq, dp) the mirror, (dX1, dY1) cavity 1, (dX2, dY2) cavity 2 and
(dx, dy) the collective atomic mode. In this basis the equations of
motion are du/dt = A u + noise, and the noise enters through the
diagonal diffusion matrix D (vacuum variance 1/2 convention; only the
mirror momentum picks up a thermal contribution).
"""

from __future__ import annotations

import os
from dataclasses import dataclass

import numpy as np

from .params import PhysicalParams, DerivedConstants
from .steady_state import SteadyState

__all__ = [
    "LinearModel",
    "MARGINAL_BAND_FACTOR",
    "assemble_drift",
    "build_linear_model",
    "check_stability",
    "spectral_abscissa",
    "dump_matrices",
]

# |max Re eig| below this fraction of omega_m counts as marginal; a
# marginal system has no stationary covariance, so it is classified
# unstable and flagged
MARGINAL_BAND_FACTOR = 1e-9


@dataclass(frozen=True)
class LinearModel:
    """8x8 drift matrix A, diagonal diffusion D, and the stability verdict.

    stable is True only when every eigenvalue of A has real part below
    -marginal_band; spectral abscissa within the band sets ``marginal``.
    """

    drift_A: np.ndarray
    diffusion_D: np.ndarray
    stable: bool
    spectral_abscissa: float
    marginal: bool
    marginal_band: float


def assemble_drift(omega_m, gamma_m, kappa, gamma_a, Delta1, Delta2_eff,
                   Delta_a, J, G, G_a) -> np.ndarray:
    """Drift matrix from raw coefficients (all rad/s, G already linearized)."""
    return np.array([
        [0.0,      omega_m,  0.0,     0.0,     0.0,         0.0,         0.0,      0.0],
        [-omega_m, -gamma_m, 0.0,     0.0,     G,           0.0,         0.0,      0.0],
        [0.0,      0.0,      -kappa,  Delta1,  0.0,         J,           0.0,      G_a],
        [0.0,      0.0,      -Delta1, -kappa,  -J,          0.0,         -G_a,     0.0],
        [0.0,      0.0,      0.0,     J,       -kappa,      Delta2_eff,  0.0,      0.0],
        [G,        0.0,      -J,      0.0,     -Delta2_eff, -kappa,      0.0,      0.0],
        [0.0,      0.0,      0.0,     G_a,     0.0,         0.0,         -gamma_a, Delta_a],
        [0.0,      0.0,      -G_a,    0.0,     0.0,         0.0,         -Delta_a, -gamma_a],
    ])


def spectral_abscissa(A: np.ndarray) -> float:
    """Largest real part over the eigenvalues of A (dense QR iteration)."""
    return float(np.linalg.eigvals(np.asarray(A, dtype=float)).real.max())


def _verdict(A: np.ndarray, band: float):
    abscissa = spectral_abscissa(A)
    marginal = abs(abscissa) <= band
    stable = abscissa < 0 and not marginal
    return stable, abscissa, marginal


def build_linear_model(p: PhysicalParams, d: DerivedConstants,
                       s: SteadyState) -> LinearModel:
    """Assemble A and D from a solved steady state and decide stability.

    A depends on the steady state only through Delta2_eff and the
    linearized coupling G = sqrt(2)*G0*|a2_s| (the phase of a2_s is
    removable by local rotations and never enters).
    """
    A = assemble_drift(
        omega_m=p.mech_freq_omega_m,
        gamma_m=p.mech_damping_gamma_m,
        kappa=p.cavity_decay_kappa,
        gamma_a=p.atom_decay_gamma_a,
        Delta1=s.Delta1,
        Delta2_eff=s.Delta2_eff,
        Delta_a=p.atom_detuning_Delta_a,
        J=p.cavity_coupling_J,
        G=s.G_eff,
        G_a=p.atom_coupling_G_a,
    )
    nbar = d.thermal_occupation_nbar
    D = np.diag([
        0.0,
        p.mech_damping_gamma_m * (2.0 * nbar + 1.0),
        p.cavity_decay_kappa, p.cavity_decay_kappa,
        p.cavity_decay_kappa, p.cavity_decay_kappa,
        p.atom_decay_gamma_a, p.atom_decay_gamma_a,
    ])
    band = MARGINAL_BAND_FACTOR * p.mech_freq_omega_m
    stable, abscissa, marginal = _verdict(A, band)
    return LinearModel(drift_A=A, diffusion_D=D, stable=stable,
                       spectral_abscissa=abscissa, marginal=marginal,
                       marginal_band=band)


def check_stability(model: LinearModel) -> tuple[bool, float]:
    """Recompute the verdict from the stored drift matrix."""
    stable, abscissa, _ = _verdict(model.drift_A, model.marginal_band)
    return stable, abscissa


def dump_matrices(model: LinearModel, directory) -> tuple[str, str]:
    """Write A and D as plain-text row-major matrices for external checks."""
    os.makedirs(directory, exist_ok=True)
    a_path = os.path.join(directory, "drift_A.txt")
    d_path = os.path.join(directory, "diffusion_D.txt")
    np.savetxt(a_path, model.drift_A, fmt="%.17e")
    np.savetxt(d_path, model.diffusion_D, fmt="%.17e")
    return a_path, d_path
