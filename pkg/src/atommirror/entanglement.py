"""Bipartite Gaussian entanglement from covariance submatrices.

A two-mode reduction of the stationary covariance is a 4x4 matrix

    Vs = [[V_m,    V_mb],
          [V_mb^T, V_b ]]

in 2x2 blocks. With the partial-transpose invariant

    Sigma = det V_m + det V_b - 2 det V_mb

the partially transposed symplectic eigenvalues are

    nu_-+ = sqrt((Sigma -+ sqrt(Sigma^2 - 4 det Vs)) / 2)

and the state is entangled exactly when nu_- < 1/2 (vacuum variance 1/2
convention). The logarithmic negativity is E_N = max(0, -ln(2 nu_-)),
in nats. The same formula with +2 det V_mb gives the state's own
symplectic eigenvalues, used for a physicality check.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

__all__ = [
    "BipartitePair",
    "EntanglementReport",
    "UnphysicalCovarianceError",
    "WEAK_PAIRS",
    "extract_submatrix",
    "logarithmic_negativity",
    "all_pairs_report",
]

_CLAMP_TOL = 1e-12          # discriminant clamp, absolute
_SEPARABLE_TOL = 1e-12      # nu_- within this of 1/2 reports separable
_PHYSICAL_TOL = 1e-7        # sqrt turns ~1e-16 discriminant noise into ~1e-8


class UnphysicalCovarianceError(ValueError):
    """Submatrix cannot come from any state (negative discriminant)."""


class BipartitePair(Enum):
    """The three mirror pairings, as 1-indexed covariance index sets."""

    MIRROR_CAVITY1 = (1, 2, 3, 4)
    MIRROR_CAVITY2 = (1, 2, 5, 6)
    MIRROR_ATOMS = (1, 2, 7, 8)

    @property
    def indices(self) -> tuple[int, int, int, int]:
        return self.value


# the remaining two-mode reductions; these carry next to no
# entanglement in this system and are exposed for completeness only
WEAK_PAIRS = {
    "cavity1_cavity2": (3, 4, 5, 6),
    "cavity1_atoms": (3, 4, 7, 8),
    "cavity2_atoms": (5, 6, 7, 8),
}


@dataclass(frozen=True)
class EntanglementReport:
    """Symplectic data of one two-mode reduction.

    nu_minus decides separability (threshold 1/2); E_N is in nats.
    physical reflects the +2 det V_mb variant: the reduction is a valid
    state iff its smallest state symplectic eigenvalue is >= 1/2 (up to
    1e-9).
    """

    pair: object
    Vs: np.ndarray
    Sigma: float
    nu_minus: float
    nu_plus: float
    E_N: float
    entangled: bool
    physical: bool


def extract_submatrix(V, pair) -> np.ndarray:
    """4x4 two-mode reduction of an 8x8 covariance.

    ``pair`` is a BipartitePair or any 4-tuple of 1-based indices
    (expert path for the weak pairs). Accepts a bare matrix or any
    object with a ``V`` attribute.
    """
    V = np.asarray(getattr(V, "V", V), dtype=float)
    idx = [i - 1 for i in (pair.indices if isinstance(pair, BipartitePair)
                           else tuple(pair))]
    if len(idx) != 4:
        raise ValueError(f"need exactly 4 indices, got {pair!r}")
    return V[np.ix_(idx, idx)]


def _nu_pair(det_m, det_b, det_mb_term, det_vs):
    """Symplectic pair from a Sigma variant; clamps tiny negatives."""
    sigma = det_m + det_b + det_mb_term
    disc = sigma * sigma - 4.0 * det_vs
    if disc < -_CLAMP_TOL:
        return sigma, None, None
    disc = math.sqrt(max(disc, 0.0))
    lo = (sigma - disc) / 2.0
    hi = (sigma + disc) / 2.0
    if lo < -_CLAMP_TOL:
        return sigma, None, None
    return sigma, math.sqrt(max(lo, 0.0)), math.sqrt(max(hi, 0.0))


def logarithmic_negativity(Vs, pair=None) -> EntanglementReport:
    """Entanglement report for one 4x4 two-mode covariance."""
    Vs = np.asarray(Vs, dtype=float)
    if Vs.shape != (4, 4):
        raise ValueError(f"expected a 4x4 matrix, got {Vs.shape}")
    V_m = Vs[:2, :2]
    V_b = Vs[2:, 2:]
    V_mb = Vs[:2, 2:]
    det_m = float(np.linalg.det(V_m))
    det_b = float(np.linalg.det(V_b))
    det_mb = float(np.linalg.det(V_mb))
    det_vs = float(np.linalg.det(Vs))

    sigma, nu_minus, nu_plus = _nu_pair(det_m, det_b, -2.0 * det_mb, det_vs)
    if nu_minus is None:
        raise UnphysicalCovarianceError(
            f"partial-transpose discriminant is negative beyond tolerance "
            f"(Sigma = {sigma:.6e}, det Vs = {det_vs:.6e})")

    separable = nu_minus >= 0.5 - _SEPARABLE_TOL
    if separable or nu_minus == 0.0:
        E_N = math.inf if nu_minus == 0.0 else 0.0
    else:
        E_N = -math.log(2.0 * nu_minus)
    entangled = not separable

    _, nu_state, _ = _nu_pair(det_m, det_b, 2.0 * det_mb, det_vs)
    physical = (nu_state is not None
                and nu_state >= 0.5 - _PHYSICAL_TOL * max(1.0, sigma))

    return EntanglementReport(
        pair=pair, Vs=Vs, Sigma=sigma,
        nu_minus=nu_minus, nu_plus=nu_plus,
        E_N=E_N, entangled=entangled, physical=physical,
    )


def all_pairs_report(V, include_weak_pairs: bool = False) -> dict:
    """Reports for the three mirror pairings of an 8x8 covariance.

    Returns a dict keyed by BipartitePair in declaration order. With
    include_weak_pairs, the three cavity/atom combinations are appended
    under their WEAK_PAIRS string keys.
    """
    reports = {}
    for pair in BipartitePair:
        reports[pair] = logarithmic_negativity(extract_submatrix(V, pair),
                                               pair=pair)
    if include_weak_pairs:
        for name, idx in WEAK_PAIRS.items():
            reports[name] = logarithmic_negativity(
                extract_submatrix(V, idx), pair=name)
    return reports
