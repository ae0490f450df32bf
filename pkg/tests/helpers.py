"""Shared oracle utilities for the test suite.

Everything here is deliberately independent of the package internals:
the characteristic polynomial comes from the Faddeev-LeVerrier trace
recursion (no eigenvalue call), stability from a Routh table, and the
random covariance matrices from an explicit symplectic construction.
"""

from __future__ import annotations

import numpy as np
from scipy.linalg import block_diag, expm

_J2 = np.array([[0.0, 1.0], [-1.0, 0.0]])


def symplectic_form(n_modes: int) -> np.ndarray:
    return block_diag(*([_J2] * n_modes))


def char_poly(A: np.ndarray) -> np.ndarray:
    """Coefficients [1, c1, ..., cn] of det(sI - A), trace recursion only."""
    A = np.asarray(A, dtype=float)
    n = A.shape[0]
    M = np.eye(n)
    coeffs = [1.0]
    for k in range(1, n + 1):
        if k > 1:
            M = A @ M + coeffs[-1] * np.eye(n)
        coeffs.append(-np.trace(A @ M) / k)
    return np.array(coeffs)


def routh_stable(coeffs) -> bool | None:
    """Routh-table verdict for p(s) with positive leading coefficient.

    True/False for a clean table; None when a first-column entry is too
    close to zero to call (marginal or degenerate case).
    """
    a = np.asarray(coeffs, dtype=float)
    n = len(a) - 1
    cols = n // 2 + 1
    table = np.zeros((n + 1, cols + 1))
    table[0, : len(a[0::2])] = a[0::2]
    table[1, : len(a[1::2])] = a[1::2]
    for i in range(2, n + 1):
        pivot = table[i - 1, 0]
        if abs(pivot) <= 1e-14 * max(np.abs(table[i - 1]).max(),
                                     np.abs(table[i - 2]).max()):
            return None
        for j in range(cols):
            table[i, j] = (pivot * table[i - 2, j + 1]
                           - table[i - 2, 0] * table[i - 1, j + 1]) / pivot
    first = table[:, 0]
    if np.any(np.abs(first) <= 1e-14 * np.abs(a).max()):
        return None
    return bool(np.all(first > 0))


def random_stable_matrix(rng: np.random.Generator, n: int = 8,
                         margin_lo: float = 0.3,
                         margin_hi: float = 1.5) -> np.ndarray:
    """Dense matrix with spectral abscissa in [-margin_hi, -margin_lo]."""
    A = rng.normal(size=(n, n))
    abscissa = np.linalg.eigvals(A).real.max()
    margin = rng.uniform(margin_lo, margin_hi)
    return A - (abscissa + margin) * np.eye(n)


def random_spd(rng: np.random.Generator, n: int = 8) -> np.ndarray:
    """Random symmetric positive definite matrix, moderate conditioning."""
    B = rng.normal(size=(n, n))
    return B @ B.T + n * np.eye(n)


def two_mode_squeezed(r: float) -> np.ndarray:
    """Two-mode squeezed vacuum covariance, vacuum variance 1/2."""
    c, s = np.cosh(2.0 * r), np.sinh(2.0 * r)
    Z = np.diag([1.0, -1.0])
    I2 = np.eye(2)
    return 0.5 * np.block([[c * I2, s * Z], [s * Z, c * I2]])


def random_physical_V(rng: np.random.Generator,
                      squeeze_scale: float = 0.4) -> np.ndarray:
    """Random valid two-mode covariance via its Williamson form.

    V = S diag(nu1, nu1, nu2, nu2) S^T with nu_i >= 1/2 and S symplectic
    (exponential of a Hamiltonian matrix), so physicality is exact by
    construction.
    """
    Omega = symplectic_form(2)
    H = rng.normal(size=(4, 4))
    H = 0.5 * (H + H.T) * squeeze_scale
    S = expm(Omega @ H)
    nu = 0.5 + rng.uniform(0.0, 1.0, size=2)
    return S @ np.diag([nu[0], nu[0], nu[1], nu[1]]) @ S.T


def local_rotation(theta1: float, theta2: float) -> np.ndarray:
    """Independent phase rotations of the two modes (symplectic, orthogonal)."""
    def rot(t):
        return np.array([[np.cos(t), np.sin(t)], [-np.sin(t), np.cos(t)]])
    return block_diag(rot(theta1), rot(theta2))
