"""Stationary covariance from the continuous Lyapunov equation.

For a stable drift matrix A and diffusion matrix D, the stationary
covariance V of the quadrature fluctuations solves

    A V + V A^T = -D.

The primary solver vectorizes this into a 64x64 linear system and uses
LU with partial pivoting; at n = 8 this is exact to rounding and has no
tuning knobs. A Schur-decomposition path is kept as an alternative and
must agree with the primary to 1e-9. An integral quadrature of
exp(At) D exp(At)^T serves as an independent cross-check oracle.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.integrate import quad_vec
from scipy.linalg import expm, solve_continuous_lyapunov

__all__ = [
    "CovarianceMatrix",
    "LyapunovError",
    "StabilityError",
    "solve_lyapunov",
    "integral_crosscheck",
]

_RESIDUAL_TOL = 1e-10
_PSD_TOL = 1e-10


class LyapunovError(RuntimeError):
    """Numerical failure of the Lyapunov solve; carries a condition hint."""

    def __init__(self, message, condition=None):
        super().__init__(message)
        self.condition = condition


class StabilityError(ValueError):
    """The drift matrix is not strictly stable; no stationary state exists."""


@dataclass(frozen=True)
class CovarianceMatrix:
    """Symmetric stationary covariance with its achieved relative residual.

    residual_norm = ||A V + V A^T + D||_F / max(||D||_F, tiny).
    """

    V: np.ndarray
    residual_norm: float


def _relative_residual(A, V, D) -> float:
    num = np.linalg.norm(A @ V + V @ A.T + D, "fro")
    den = max(np.linalg.norm(D, "fro"), np.finfo(float).tiny)
    return float(num / den)


def solve_lyapunov(A, D, method: str = "vectorized") -> CovarianceMatrix:
    """Solve A V + V A^T = -D for symmetric V; refuses unstable A.

    method "vectorized" (default) solves the Kronecker-lifted 64x64
    system; "schur" uses the Schur-decomposition solver. Both paths
    symmetrize the result and verify the residual and positive
    semidefiniteness.
    """
    A = np.asarray(A, dtype=float)
    D = np.asarray(D, dtype=float)
    n = A.shape[0]
    if A.shape != (n, n) or D.shape != (n, n):
        raise ValueError("A and D must be square and same shape")
    if np.linalg.eigvals(A).real.max() >= 0:
        raise StabilityError(
            "drift matrix is not strictly stable; the stationary "
            "covariance does not exist")

    if method == "vectorized":
        eye = np.eye(n)
        M = np.kron(eye, A) + np.kron(A, eye)
        try:
            vec = np.linalg.solve(M, -D.flatten(order="F"))
        except np.linalg.LinAlgError as exc:
            raise LyapunovError(
                f"vectorized Lyapunov system is singular: {exc}",
                condition=np.linalg.cond(M)) from exc
        V = vec.reshape((n, n), order="F")
    elif method == "schur":
        V = solve_continuous_lyapunov(A, -D)
    else:
        raise ValueError(f"unknown method {method!r}")

    V = (V + V.T) / 2.0
    residual = _relative_residual(A, V, D)
    if residual > _RESIDUAL_TOL:
        cond = None
        if method == "vectorized":
            eye = np.eye(n)
            cond = np.linalg.cond(np.kron(eye, A) + np.kron(A, eye))
        raise LyapunovError(
            f"Lyapunov residual {residual:.3e} exceeds {_RESIDUAL_TOL:.0e}",
            condition=cond)
    eigs = np.linalg.eigvalsh(V)
    if eigs.min() < -_PSD_TOL * max(abs(eigs).max(), np.finfo(float).tiny):
        raise LyapunovError(
            f"covariance has negative eigenvalue {eigs.min():.3e}")
    return CovarianceMatrix(V=V, residual_norm=residual)


def _auto_horizon(A) -> float:
    """Time where ||exp(At)||_F has decayed below 1e-12."""
    abscissa = np.linalg.eigvals(A).real.max()
    if abscissa >= 0:
        raise StabilityError("integral cross-check needs a stable A")
    t = np.log(1e14) / (-abscissa)
    for _ in range(60):
        if np.linalg.norm(expm(A * t), "fro") < 1e-12:
            return t
        t *= 2.0
    raise LyapunovError("could not find a decay horizon; A is too close "
                        "to marginal for the integral route")


def integral_crosscheck(A, D, horizon: float | None = None) -> np.ndarray:
    """Quadrature of the covariance integral, as an independent oracle.

    Integrates exp(At) D exp(At)^T from 0 to the horizon (found
    automatically when not given) with adaptive quadrature on all 64
    components. Raises when the integrand has not decayed below 1e-12
    at the horizon, reporting the achieved decay.
    """
    A = np.asarray(A, dtype=float)
    D = np.asarray(D, dtype=float)
    if horizon is None:
        horizon = _auto_horizon(A)
    else:
        decay = np.linalg.norm(expm(A * horizon), "fro")
        if decay >= 1e-12:
            raise LyapunovError(
                f"horizon too short: ||exp(A*horizon)|| = {decay:.3e}, "
                "needs < 1e-12")

    def integrand(t):
        f = expm(A * t)
        return (f @ D @ f.T).ravel()

    scale = max(np.linalg.norm(D, "fro"), np.finfo(float).tiny)
    result, _ = quad_vec(integrand, 0.0, horizon,
                         epsabs=1e-13 * scale * horizon, epsrel=1e-10)
    V = result.reshape(A.shape)
    return (V + V.T) / 2.0
